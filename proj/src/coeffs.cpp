#include "fdisac/coeffs.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "fdisac/linalg.hpp"
#include "fdisac/scenario.hpp"

namespace fdisac {

namespace {

double quad_form(const Mat& a, const Vec& x) {
  return std::real((x.adjoint() * a * x).value());
}

double quad_value(const Mat& a, const Vec& b, double c, const Vec& x) {
  return quad_form(a, x) - 2.0 * std::real(b.dot(x)) + c;
}

}  // namespace

double P2CoeffSet::rx_gain_user(const Vec& psi1, int k) const {
  const auto ku = static_cast<std::size_t>(k);
  return std::norm(echo_rx_const[ku] + echo_rx_lin[ku].dot(psi1));
}

double P2CoeffSet::rx_gain_radar(const Vec& psi1) const {
  return std::norm(cons_rx_const + cons_rx_lin.dot(psi1));
}

double P2CoeffSet::tx_gain(const Vec& phi) const {
  const cxd cross = (tx_cross.transpose() * phi).value();
  return tx_const + 2.0 * std::real(cross) +
         std::real((phi.adjoint() * tx_gram.transpose() * phi).value());
}

P2CoeffSet build_p2_coeffs(const SystemParams& sys, const ChannelSet& ch,
                           const DesignVariables& dv, const AuxState& aux) {
  const int m = ch.n_ris();
  const int k_users = ch.n_users();
  const Mat& w = dv.beamformer;
  const Vec& u0 = dv.radar_filter;

  P2CoeffSet c;
  c.obj_quad = Mat::Zero(m, m);
  c.obj_lin = Vec::Zero(m);
  c.obj_const = 0.0;

  const Vec b3 = w.adjoint() * ch.g_bs_tx_target;  // W^H g_t
  const Mat b_mat =
      ch.g_ris_target.asDiagonal() * (ch.g_bs_tx_ris * w);  // diag(g_rt) G_t W
  c.tx_const = b3.squaredNorm();
  c.tx_cross = b_mat * b3;
  c.tx_gram = hermitian_part(b_mat * b_mat.adjoint());

  c.echo_weight.resize(static_cast<std::size_t>(k_users));
  c.echo_rx_const.resize(static_cast<std::size_t>(k_users));
  c.echo_rx_lin.resize(static_cast<std::size_t>(k_users));

  // Per-filter reductions. y_{j,i} = diag(h_ris_user_i)^H G_r u_j maps phi to
  // the RIS part of u_j^H h_{U,i}; z_j maps phi to the RIS part of u_j^H G W.
  auto ris_user_component = [&](const Vec& r_full, int i) -> Vec {
    return ch.h_ris_user[static_cast<std::size_t>(i)].conjugate().cwiseProduct(
        r_full);
  };

  for (int k = 0; k < k_users; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const Vec& uk = dv.user_filters[ku];
    const double weight = aux.omega[ku] * std::norm(aux.beta[ku]);
    const cxd beta = aux.beta[ku];
    const double omega = aux.omega[ku];

    const Vec r_k = ch.g_bs_rx_ris * uk;         // G_r u_k
    const Mat z_k = r_k.conjugate().asDiagonal() * (ch.g_bs_tx_ris * w);
    const Eigen::RowVectorXcd v_k =
        uk.adjoint() * ch.h_self_interference.adjoint() * w;

    Mat quad = Mat::Zero(m, m);
    Vec lin = Vec::Zero(m);
    double direct_power = 0.0;
    for (int i = 0; i < k_users; ++i) {
      const Vec y_ki = ris_user_component(r_k, i);
      const cxd direct = uk.dot(ch.h_bs_user[static_cast<std::size_t>(i)]);
      quad += dv.user_power[i] * (y_ki * y_ki.adjoint());
      lin -= weight * dv.user_power[i] * direct * y_ki;
      direct_power += dv.user_power[i] * std::norm(direct);
      if (i == k) {
        c.obj_lin += omega * beta * std::sqrt(dv.user_power[k]) * y_ki;
        c.obj_const -=
            2.0 * std::real(omega * std::conj(beta) *
                            std::sqrt(dv.user_power[k]) * direct);
      }
    }
    c.obj_quad += weight * (quad + (z_k * z_k.adjoint()).conjugate());
    c.obj_lin += lin - weight * (z_k.conjugate() * v_k.transpose());
    c.obj_const -= std::log(omega) - omega + 1.0 -
                   weight * (direct_power + v_k.squaredNorm() +
                             sys.noise_power * uk.squaredNorm());

    c.echo_weight[ku] = weight * sys.rcs_variance;
    c.echo_rx_const[ku] = uk.dot(ch.g_bs_rx_target);
    c.echo_rx_lin[ku] =
        ch.g_ris_target.conjugate().cwiseProduct(ch.g_bs_rx_ris * uk);
  }
  c.obj_quad = hermitian_part(c.obj_quad);

  // Radar-filter side of the constraint.
  {
    const Vec r_0 = ch.g_bs_rx_ris * u0;
    const Mat z_0 = r_0.conjugate().asDiagonal() * (ch.g_bs_tx_ris * w);
    const Eigen::RowVectorXcd v_0 =
        u0.adjoint() * ch.h_self_interference.adjoint() * w;

    Mat quad = Mat::Zero(m, m);
    Vec lin = Vec::Zero(m);
    double direct_power = 0.0;
    for (int i = 0; i < k_users; ++i) {
      const Vec y_0i = ris_user_component(r_0, i);
      const cxd direct = u0.dot(ch.h_bs_user[static_cast<std::size_t>(i)]);
      quad += dv.user_power[i] * (y_0i * y_0i.adjoint());
      lin -= dv.user_power[i] * direct * y_0i;
      direct_power += dv.user_power[i] * std::norm(direct);
    }
    c.cons_quad =
        psd_clip(hermitian_part(quad + (z_0 * z_0.adjoint()).conjugate()));
    c.cons_lin = lin - z_0.conjugate() * v_0.transpose();
    c.cons_const = direct_power + v_0.squaredNorm() +
                   sys.noise_power * u0.squaredNorm();

    c.cons_echo_weight = sys.rcs_variance / sys.radar_threshold;
    c.cons_rx_const = u0.dot(ch.g_bs_rx_target);
    c.cons_rx_lin = ch.g_ris_target.conjugate().cwiseProduct(r_0);
  }

  // Echo aggregates.
  c.rx_weight_sum = 0.0;
  c.rx_cross_sum = Vec::Zero(m);
  c.rx_gram_sum = Mat::Zero(m, m);
  for (int k = 0; k < k_users; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    c.rx_weight_sum += c.echo_weight[ku] * std::norm(c.echo_rx_const[ku]);
    c.rx_cross_sum += c.echo_weight[ku] * c.echo_rx_const[ku] * c.echo_rx_lin[ku];
    c.rx_gram_sum +=
        c.echo_weight[ku] * (c.echo_rx_lin[ku] * c.echo_rx_lin[ku].adjoint());
  }
  c.rx_gram_sum = hermitian_part(c.rx_gram_sum);
  c.cons_rx_weight = c.cons_echo_weight * std::norm(c.cons_rx_const);
  c.cons_rx_cross = c.cons_echo_weight * c.cons_rx_const * c.cons_rx_lin;
  c.cons_rx_gram = hermitian_part(
      c.cons_echo_weight * (c.cons_rx_lin * c.cons_rx_lin.adjoint()));
  return c;
}

double eval_p3_objective(const P2CoeffSet& c, const Vec& phi, const Vec& psi1) {
  double value = quad_value(c.obj_quad, c.obj_lin, c.obj_const, phi);
  const double tx = c.tx_gain(phi);
  for (std::size_t k = 0; k < c.echo_weight.size(); ++k) {
    value += c.echo_weight[k] * c.rx_gain_user(psi1, static_cast<int>(k)) * tx;
  }
  return value;
}

double eval_p3_constraint(const P2CoeffSet& c, const Vec& phi, const Vec& psi1) {
  return quad_value(c.cons_quad, c.cons_lin, c.cons_const, phi) -
         c.cons_echo_weight * c.rx_gain_radar(psi1) * c.tx_gain(phi);
}

double eval_p2_objective(const P2CoeffSet& c, const Vec& phi) {
  return eval_p3_objective(c, phi, phi);
}

double eval_p2_constraint(const P2CoeffSet& c, const Vec& phi) {
  return eval_p3_constraint(c, phi, phi);
}

P2DenseBlocks materialize_p2_blocks(const P2CoeffSet& c) {
  P2DenseBlocks d;
  const Mat gram_t = c.tx_gram.transpose();
  const Vec cross_conj = c.tx_cross.conjugate();

  // objective family
  d.t1_quad = c.obj_quad + c.rx_weight_sum * gram_t +
              c.rx_cross_sum * c.tx_cross.transpose() +
              (c.rx_cross_sum * c.tx_cross.transpose()).adjoint() +
              c.tx_const * c.rx_gram_sum;
  d.t1_bilinear = c.rx_cross_sum * c.tx_cross.transpose();
  d.t1_conj = c.rx_cross_sum * c.tx_cross.adjoint();
  d.t1_cubic = Eigen::kroneckerProduct(gram_t, c.rx_cross_sum).eval() +
               Eigen::kroneckerProduct(cross_conj, c.rx_gram_sum).eval();
  d.t1_quartic = Eigen::kroneckerProduct(gram_t, c.rx_gram_sum).eval();
  d.t1_lin = c.obj_lin - c.rx_weight_sum * cross_conj - c.tx_const * c.rx_cross_sum;
  d.t1_const = c.obj_const + c.rx_weight_sum * c.tx_const;

  // constraint family
  d.t0_quad = c.cons_quad;
  d.t0_neg_quad = c.cons_rx_weight * gram_t +
                  c.cons_rx_cross * c.tx_cross.transpose() +
                  (c.cons_rx_cross * c.tx_cross.transpose()).adjoint() +
                  c.tx_const * c.cons_rx_gram;
  d.t0_bilinear = c.cons_rx_cross * c.tx_cross.transpose();
  d.t0_conj = c.cons_rx_cross * c.tx_cross.adjoint();
  d.t0_cubic = Eigen::kroneckerProduct(gram_t, c.cons_rx_cross).eval() +
               Eigen::kroneckerProduct(cross_conj, c.cons_rx_gram).eval();
  d.t0_quartic = Eigen::kroneckerProduct(gram_t, c.cons_rx_gram).eval();
  d.t0_lin = c.cons_lin + c.cons_rx_weight * cross_conj +
             c.tx_const * c.cons_rx_cross;
  d.t0_const = c.cons_const - c.cons_rx_weight * c.tx_const;
  return d;
}

double P5CoeffSet::objective(const Vec& phi) const {
  return quad_value(quad, lin, cst, phi);
}

double P5CoeffSet::constraint_lin(const Vec& phi) const {
  return quad_value(cons_quad, cons_lin, cons_cst, phi);
}

double P5CoeffSet::constraint_exact(const Vec& phi) const {
  return quad_value(cons_quad, cons_lin_exact, cons_cst_exact, phi) -
         quad_form(cons_curv, phi);
}

P5CoeffSet build_p5_coeffs(const P2CoeffSet& c, const Vec& psi1,
                           const Vec& phi_anchor) {
  P5CoeffSet p;
  double rx_sum = 0.0;
  for (std::size_t k = 0; k < c.echo_weight.size(); ++k) {
    rx_sum += c.echo_weight[k] * c.rx_gain_user(psi1, static_cast<int>(k));
  }
  const Mat gram_t = c.tx_gram.transpose();
  p.quad = c.obj_quad + rx_sum * gram_t;
  p.lin = c.obj_lin - rx_sum * c.tx_cross.conjugate();
  p.cst = c.obj_const + rx_sum * c.tx_const;

  const double rx0 = c.cons_echo_weight * c.rx_gain_radar(psi1);
  p.cons_quad = c.cons_quad;
  p.cons_curv = rx0 * gram_t;
  p.cons_lin_exact = c.cons_lin + rx0 * c.tx_cross.conjugate();
  p.cons_cst_exact = c.cons_const - rx0 * c.tx_const;
  p.cons_lin = p.cons_lin_exact + p.cons_curv * phi_anchor;
  p.cons_cst = p.cons_cst_exact + quad_form(p.cons_curv, phi_anchor);
  return p;
}

double P7CoeffSet::objective(const Vec& psi) const {
  return quad_value(quad, lin, cst, psi);
}

double P7CoeffSet::constraint_lin(const Vec& psi) const {
  return -2.0 * std::real(cons_lin.dot(psi)) + cons_cst;
}

double P7CoeffSet::constraint_exact(const Vec& psi) const {
  return -2.0 * std::real(cons_lin_exact.dot(psi)) + cons_cst_exact -
         quad_form(cons_curv, psi);
}

P7CoeffSet build_p7_coeffs(const P2CoeffSet& c, const Vec& phi,
                           const Vec& psi1_anchor) {
  P7CoeffSet p;
  const double tx = c.tx_gain(phi);
  p.quad = tx * c.rx_gram_sum;
  p.lin = -tx * c.rx_cross_sum;
  p.cst = quad_form(c.obj_quad, phi) - 2.0 * std::real(c.obj_lin.dot(phi)) +
          c.obj_const + tx * c.rx_weight_sum;

  p.cons_curv = tx * c.cons_rx_gram;
  p.cons_lin_exact = tx * c.cons_rx_cross;
  p.cons_cst_exact = quad_form(c.cons_quad, phi) -
                     2.0 * std::real(c.cons_lin.dot(phi)) + c.cons_const -
                     tx * c.cons_rx_weight;
  p.cons_lin = p.cons_lin_exact + p.cons_curv * psi1_anchor;
  p.cons_cst = p.cons_cst_exact + quad_form(p.cons_curv, psi1_anchor);
  return p;
}

double WProblemData::objective(const Vec& w) const {
  return quad_form(rate_quad, w) - rate_const;
}

double WProblemData::constraint_exact(const Vec& w) const {
  return quad_form(cons_quad, w) - quad_form(cons_curv, w) + cons_const;
}

double WProblemData::constraint_lin(const Vec& w) const {
  return quad_form(cons_quad, w) - 2.0 * std::real(cons_lin.dot(w)) +
         cons_lin_const;
}

void WProblemData::reanchor(const Vec& w_anchor) {
  cons_lin = cons_curv * w_anchor;
  cons_lin_const = cons_const + quad_form(cons_curv, w_anchor);
}

WProblemData build_w_problem(const SystemParams& sys, const ChannelSet& ch,
                             const DesignVariables& dv, const AuxState& aux,
                             const Vec& w_anchor) {
  const int nt = ch.n_tx();
  const Mat g = effective_si_channel(ch, dv.phase);
  const Mat h = effective_radar_channel(ch, dv.phase, dv.phase);
  const Mat identity = Mat::Identity(nt, nt);

  WProblemData wp;
  Mat rate_block = Mat::Zero(nt, nt);
  wp.rate_const = 0.0;
  for (int k = 0; k < ch.n_users(); ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const Vec& uk = dv.user_filters[ku];
    const double weight = aux.omega[ku] * std::norm(aux.beta[ku]);
    rate_block += weight * (sys.rcs_variance * (h.adjoint() * uk) *
                                (uk.adjoint() * h) +
                            (g.adjoint() * uk) * (uk.adjoint() * g));
    double inter = 0.0;
    for (int i = 0; i < ch.n_users(); ++i) {
      inter += dv.user_power[i] *
               std::norm(uk.dot(effective_user_channel(ch, dv.phase, i)));
    }
    const cxd gain = uk.dot(effective_user_channel(ch, dv.phase, k));
    wp.rate_const +=
        std::log(aux.omega[ku]) - aux.omega[ku] + 1.0 +
        2.0 * std::real(aux.omega[ku] * std::conj(aux.beta[ku]) *
                        std::sqrt(dv.user_power[k]) * gain) -
        weight * (inter + sys.noise_power * uk.squaredNorm());
  }
  wp.rate_quad = Eigen::kroneckerProduct(
                     identity, hermitian_part(rate_block).eval())
                     .eval();

  const Vec& u0 = dv.radar_filter;
  const Mat cons_block = hermitian_part((g.adjoint() * u0) * (u0.adjoint() * g));
  const Mat curv_block = hermitian_part(
      (sys.rcs_variance / sys.radar_threshold) * (h.adjoint() * u0) *
      (u0.adjoint() * h));
  wp.cons_quad = Eigen::kroneckerProduct(identity, cons_block).eval();
  wp.cons_curv = Eigen::kroneckerProduct(identity, curv_block).eval();

  wp.cons_const = sys.noise_power * u0.squaredNorm();
  for (int k = 0; k < ch.n_users(); ++k) {
    wp.cons_const += dv.user_power[k] *
                     std::norm(u0.dot(effective_user_channel(ch, dv.phase, k)));
  }
  wp.reanchor(w_anchor);
  return wp;
}

double PowerProblemData::objective_p(const RealVec& p) const {
  return (quad_coeff.array() * p.array().square()).sum() +
         (lin_coeff.array() * p.array()).sum() - obj_const;
}

double PowerProblemData::objective_q(const RealVec& q) const {
  return objective_p(q.cwiseSqrt());
}

double PowerProblemData::budget_used(const RealVec& p) const {
  return (budget_coeff.array() * p.array().square()).sum();
}

PowerProblemData build_power_problem(const SystemParams& sys,
                                     const ChannelSet& ch,
                                     const DesignVariables& dv,
                                     const AuxState& aux) {
  const int k_users = ch.n_users();
  const Mat g = effective_si_channel(ch, dv.phase);
  const Mat h = effective_radar_channel(ch, dv.phase, dv.phase);
  const Vec& u0 = dv.radar_filter;

  PowerProblemData pd;
  pd.quad_coeff = RealVec::Zero(k_users);
  pd.lin_coeff = RealVec::Zero(k_users);
  pd.budget_coeff = RealVec::Zero(k_users);
  pd.p_max = RealVec::Zero(k_users);
  pd.obj_const = 0.0;

  std::vector<Vec> h_eff(static_cast<std::size_t>(k_users));
  for (int k = 0; k < k_users; ++k) {
    h_eff[static_cast<std::size_t>(k)] = effective_user_channel(ch, dv.phase, k);
  }
  for (int k = 0; k < k_users; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    for (int j = 0; j < k_users; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      pd.quad_coeff[k] += aux.omega[ju] * std::norm(aux.beta[ju]) *
                          std::norm(dv.user_filters[ju].dot(h_eff[ku]));
    }
    pd.lin_coeff[k] =
        -2.0 * std::real(aux.omega[ku] * std::conj(aux.beta[ku]) *
                         dv.user_filters[ku].dot(h_eff[ku]));
    pd.budget_coeff[k] = std::norm(u0.dot(h_eff[ku]));
    pd.p_max[k] = std::sqrt(sys.user_power[ku]);

    const Vec& uk = dv.user_filters[ku];
    const double weight = aux.omega[ku] * std::norm(aux.beta[ku]);
    pd.obj_const +=
        std::log(aux.omega[ku]) - aux.omega[ku] + 1.0 -
        weight * (sys.rcs_variance * (uk.adjoint() * h * dv.beamformer).squaredNorm() +
                  (uk.adjoint() * g * dv.beamformer).squaredNorm() +
                  sys.noise_power * uk.squaredNorm());
  }
  pd.budget = sys.rcs_variance *
                  (u0.adjoint() * h * dv.beamformer).squaredNorm() /
                  sys.radar_threshold -
              (u0.adjoint() * g * dv.beamformer).squaredNorm() -
              sys.noise_power * u0.squaredNorm();
  return pd;
}

Mat FilterProblemData::mse_quad(int k) const {
  return mse_weight.at(static_cast<std::size_t>(k)) * rx_covariance;
}

FilterProblemData build_filter_problems(const SystemParams& sys,
                                        const ChannelSet& ch,
                                        const DesignVariables& dv,
                                        const AuxState& aux) {
  const int nr = ch.n_rx();
  const Mat g = effective_si_channel(ch, dv.phase);
  const Mat h = effective_radar_channel(ch, dv.phase, dv.phase);
  const Mat gw = g * dv.beamformer;
  const Mat hw = h * dv.beamformer;

  FilterProblemData fp;
  Mat user_cov = Mat::Zero(nr, nr);
  for (int i = 0; i < ch.n_users(); ++i) {
    const Vec h_i = effective_user_channel(ch, dv.phase, i);
    user_cov += dv.user_power[i] * (h_i * h_i.adjoint());
  }
  const Mat echo_cov = sys.rcs_variance * (hw * hw.adjoint());
  const Mat si_cov = gw * gw.adjoint();
  const Mat noise_cov = sys.noise_power * Mat::Identity(nr, nr);

  fp.rx_covariance = hermitian_part(user_cov + echo_cov + si_cov + noise_cov);
  fp.radar_quad = hermitian_part(user_cov + si_cov + noise_cov);
  fp.radar_gain = hermitian_part(echo_cov / sys.radar_threshold);

  fp.mse_weight.resize(static_cast<std::size_t>(ch.n_users()));
  fp.mse_target.resize(static_cast<std::size_t>(ch.n_users()));
  fp.mse_const = 0.0;
  for (int k = 0; k < ch.n_users(); ++k) {
    const auto ku = static_cast<std::size_t>(k);
    fp.mse_weight[ku] = aux.omega[ku] * std::norm(aux.beta[ku]);
    fp.mse_target[ku] = aux.omega[ku] * std::conj(aux.beta[ku]) *
                        std::sqrt(dv.user_power[k]) *
                        effective_user_channel(ch, dv.phase, k);
    fp.mse_const += std::log(aux.omega[ku]) + aux.omega[ku] + 1.0;
  }
  return fp;
}

}  // namespace fdisac
