#pragma once

#include <random>

#include "fdisac/qcqp.hpp"
#include "fdisac/types.hpp"

// Random well-scaled instances shared by the unit and acceptance suites.
namespace fdisac::testing {

struct Rng {
  std::mt19937_64 engine;
  std::normal_distribution<double> normal{0.0, 1.0};
  std::uniform_real_distribution<double> unit{0.0, 1.0};

  explicit Rng(std::uint64_t seed) : engine(seed) {}

  double gauss() { return normal(engine); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(engine); }
  cxd cgauss() { return cxd(gauss(), gauss()) / std::sqrt(2.0); }

  Vec cvector(Eigen::Index n) {
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = cgauss();
    return v;
  }
  Mat cmatrix(Eigen::Index r, Eigen::Index c) {
    Mat m(r, c);
    for (Eigen::Index j = 0; j < c; ++j)
      for (Eigen::Index i = 0; i < r; ++i) m(i, j) = cgauss();
    return m;
  }
  Vec unit_phases(Eigen::Index n) {
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i)
      v[i] = std::polar(1.0, uniform(0.0, 6.283185307179586));
    return v;
  }
  Mat psd(Eigen::Index n, double ridge = 0.0) {
    const Mat a = cmatrix(n, n);
    return a * a.adjoint() + ridge * Mat::Identity(n, n);
  }
};

struct Dims {
  int m = 4;       // RIS elements
  int n_tx = 2;
  int n_rx = 2;
  int k_users = 2;
};

/// Synthetic unit-scale channels; algebraically well-formed (target links are
/// scaled steering-like vectors, everything else Gaussian).
inline ChannelSet random_channels(const Dims& d, Rng& rng) {
  ChannelSet ch;
  ch.g_bs_tx_ris = rng.cmatrix(d.m, d.n_tx);
  ch.g_bs_rx_ris = rng.cmatrix(d.m, d.n_rx);
  ch.h_bs_user.resize(static_cast<std::size_t>(d.k_users));
  ch.h_ris_user.resize(static_cast<std::size_t>(d.k_users));
  for (auto& h : ch.h_bs_user) h = rng.cvector(d.n_rx);
  for (auto& h : ch.h_ris_user) h = rng.cvector(d.m);
  ch.g_ris_target = rng.cvector(d.m);
  ch.g_bs_tx_target = rng.cvector(d.n_tx);
  ch.g_bs_rx_target = rng.cvector(d.n_rx);
  ch.h_self_interference = rng.cmatrix(d.n_tx, d.n_rx);
  return ch;
}

inline SystemParams unit_params(const Dims& d, double gamma_r = 1.5,
                                double p_bs = 4.0) {
  SystemParams sys;
  sys.bs_power = p_bs;
  sys.user_power.assign(static_cast<std::size_t>(d.k_users), 2.0);
  sys.noise_power = 1.0;
  sys.radar_threshold = gamma_r;
  sys.rcs_variance = 0.8;
  return sys;
}

inline DesignVariables random_design(const Dims& d, const SystemParams& sys,
                                     Rng& rng) {
  DesignVariables dv;
  dv.beamformer = rng.cmatrix(d.n_tx, d.n_tx);
  dv.beamformer *= std::sqrt(sys.bs_power) / dv.beamformer.norm();
  dv.phase = rng.unit_phases(d.m);
  dv.user_power = RealVec(d.k_users);
  for (int k = 0; k < d.k_users; ++k) {
    dv.user_power[k] =
        rng.uniform(0.1, 1.0) * sys.user_power[static_cast<std::size_t>(k)];
  }
  dv.user_filters.resize(static_cast<std::size_t>(d.k_users));
  for (auto& u : dv.user_filters) u = rng.cvector(d.n_rx).normalized();
  dv.radar_filter = rng.cvector(d.n_rx).normalized();
  return dv;
}

inline AuxState random_aux(const Dims& d, Rng& rng) {
  AuxState aux;
  aux.beta.resize(static_cast<std::size_t>(d.k_users));
  aux.omega.resize(static_cast<std::size_t>(d.k_users));
  for (int k = 0; k < d.k_users; ++k) {
    aux.beta[static_cast<std::size_t>(k)] = 0.5 * rng.cgauss();
    aux.omega[static_cast<std::size_t>(k)] = rng.uniform(0.2, 4.0);
  }
  aux.psi1 = rng.unit_phases(d.m);
  aux.psi2 = rng.unit_phases(d.m);
  aux.lambda1 = Vec::Zero(d.m);
  aux.lambda2 = Vec::Zero(d.m);
  aux.tau = Vec::Zero(static_cast<Eigen::Index>(d.n_tx) * d.n_tx);
  return aux;
}

/// Random feasible single-constraint QCQP with a built-in Slater point.
inline QcqpProblem random_qcqp(Eigen::Index n, Rng& rng,
                               bool quad_constraint = true) {
  QcqpProblem p;
  p.q_matrix = rng.psd(n, 0.5);
  p.q_vector = rng.cvector(n);
  p.q_scalar = rng.gauss();
  if (quad_constraint) {
    p.cons_matrix = rng.psd(n, rng.uniform(0.0, 0.5));
  } else {
    p.cons_matrix = Mat();
  }
  p.cons_vector = rng.cvector(n);
  const Vec slater = 0.3 * rng.cvector(n);
  double at_slater = -2.0 * std::real(p.cons_vector.dot(slater));
  if (quad_constraint) {
    at_slater += std::real((slater.adjoint() * p.cons_matrix * slater).value());
  }
  p.cons_scalar = -at_slater + rng.uniform(-1.5, -0.1);
  return p;
}

}  // namespace fdisac::testing
