#include "fdisac/scenario.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "fdisac/linalg.hpp"

namespace fdisac {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec ula(int n, double spacing_ratio, double direction_cosine, double phase_sign) {
  Vec a(n);
  for (int i = 0; i < n; ++i) {
    a[i] = std::polar(1.0, phase_sign * kTwoPi * spacing_ratio * i * direction_cosine);
  }
  return a;
}

struct ChannelRng {
  std::mt19937_64 engine;
  std::normal_distribution<double> normal{0.0, 1.0};
  std::uniform_real_distribution<double> unit{0.0, 1.0};

  explicit ChannelRng(std::uint64_t seed) : engine(seed) {}

  cxd cn() {  // circularly symmetric, unit variance
    const double re = normal(engine);
    const double im = normal(engine);
    return cxd(re, im) / std::sqrt(2.0);
  }
  Mat cn_matrix(Eigen::Index rows, Eigen::Index cols) {
    Mat m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
      for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = cn();
    return m;
  }
  Vec cn_vector(Eigen::Index n) {
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = cn();
    return v;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(engine); }
  cxd random_phase() { return std::polar(1.0, uniform(0.0, kTwoPi)); }
};

Mat rician_matrix(ChannelRng& rng, const Mat& los, double k_factor_db,
                  double gain) {
  const double kappa = db_to_linear(k_factor_db);
  const Mat scatter = rng.cn_matrix(los.rows(), los.cols());
  return std::sqrt(gain) * (std::sqrt(kappa / (1.0 + kappa)) * los +
                            std::sqrt(1.0 / (1.0 + kappa)) * scatter);
}

// Horizontal angle relative to the BS array broadside (+y axis).
double azimuth_from(const Position& from, const Position& to) {
  return std::atan2(to.x - from.x, to.y - from.y);
}

double elevation_from(const Position& from, const Position& to) {
  const double dx = to.x - from.x, dy = to.y - from.y, dz = to.z - from.z;
  return std::atan2(dz, std::sqrt(dx * dx + dy * dy));
}

}  // namespace

Vec steering_vector_ula(int n, double spacing_ratio, double angle) {
  if (n < 1) throw std::invalid_argument("steering_vector_ula: n must be >= 1");
  return ula(n, spacing_ratio, std::sin(angle), -1.0);
}

Vec steering_vector_ris(int m1, int m2, double spacing_ratio, double elev,
                        double azim) {
  if (m1 < 1 || m2 < 1) {
    throw std::invalid_argument("steering_vector_ris: factors must be >= 1");
  }
  const double g1 = 0.5 * std::sin(elev) * std::cos(azim);
  const double g2 = 0.5 * std::cos(elev);
  const Vec a1 = ula(m1, spacing_ratio, g1, +1.0);
  const Vec a2 = ula(m2, spacing_ratio, g2, +1.0);
  Vec out(static_cast<Eigen::Index>(m1) * m2);
  for (int i = 0; i < m1; ++i) {
    out.segment(static_cast<Eigen::Index>(i) * m2, m2) = a1[i] * a2;
  }
  return out;
}

ChannelSet generate_channels(const ScenarioConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  ChannelRng rng(mix_seed(cfg.rng_seed, seed));

  ChannelSet ch;
  const int nt = cfg.n_tx, nr = cfg.n_rx, m = cfg.n_ris(), k_users = cfg.n_users;
  const auto& pe = cfg.pathloss_exponents;

  // Placement. Target uniform in its box, users uniform in the half disc
  // centred at the RIS on the +x side.
  ch.target_position = {rng.uniform(cfg.target_box.x_min, cfg.target_box.x_max),
                        rng.uniform(cfg.target_box.y_min, cfg.target_box.y_max),
                        rng.uniform(cfg.target_box.z_min, cfg.target_box.z_max)};
  ch.user_positions.resize(static_cast<std::size_t>(k_users));
  for (auto& pos : ch.user_positions) {
    const double r = cfg.user_disc.radius * std::sqrt(rng.uniform(0.0, 1.0));
    const double theta = rng.uniform(-0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
    pos = {cfg.ris_position.x + r * std::cos(theta),
           cfg.ris_position.y + r * std::sin(theta), cfg.user_disc.height};
  }

  const double d_bs_ris = distance(cfg.bs_position, cfg.ris_position);
  const double d_bs_target = distance(cfg.bs_position, ch.target_position);
  const double d_ris_target = distance(cfg.ris_position, ch.target_position);
  if (d_bs_target <= 1e-9 || d_ris_target <= 1e-9 || d_bs_ris <= 1e-9) {
    throw std::invalid_argument("generate_channels: zero-distance link");
  }

  // Angles from sampled geometry.
  ch.angle_tx_target = azimuth_from(cfg.bs_position, ch.target_position);
  ch.angle_rx_target = ch.angle_tx_target;
  ch.ris_elev_target = elevation_from(cfg.ris_position, ch.target_position);
  ch.ris_azim_target = azimuth_from(cfg.ris_position, ch.target_position);

  // BS <-> RIS: Rician around a steering outer product.
  {
    const double ang_bs_to_ris = azimuth_from(cfg.bs_position, cfg.ris_position);
    const double elev_ris_to_bs = elevation_from(cfg.ris_position, cfg.bs_position);
    const double azim_ris_to_bs = azimuth_from(cfg.ris_position, cfg.bs_position);
    const Vec a_ris = steering_vector_ris(cfg.n_ris_rows, cfg.n_ris_cols,
                                          cfg.antenna_spacing_ratio,
                                          elev_ris_to_bs, azim_ris_to_bs);
    const Vec a_tx = steering_vector_ula(nt, cfg.antenna_spacing_ratio, ang_bs_to_ris);
    const Vec a_rx = steering_vector_ula(nr, cfg.antenna_spacing_ratio, ang_bs_to_ris);
    const Mat los_t = a_ris * a_tx.adjoint();
    const Mat los_r = a_ris * a_rx.adjoint();
    ch.g_bs_tx_ris = rician_matrix(rng, los_t, cfg.rician_k_db.bs_ris,
                                   path_gain(cfg.pathloss_ref_db, d_bs_ris, pe.bs_tx_ris));
    ch.g_bs_rx_ris = rician_matrix(rng, los_r, cfg.rician_k_db.bs_ris,
                                   path_gain(cfg.pathloss_ref_db, d_bs_ris, pe.bs_rx_ris));
  }

  // Self interference: Rician with a broadside outer product as the fixed part.
  {
    const Mat los = Mat::Ones(nt, nr);
    ch.h_self_interference = rician_matrix(
        rng, los, cfg.rician_k_db.self_interference, db_to_linear(cfg.si_path_loss_db));
  }

  // User links: Rayleigh.
  ch.h_bs_user.resize(static_cast<std::size_t>(k_users));
  ch.h_ris_user.resize(static_cast<std::size_t>(k_users));
  for (int k = 0; k < k_users; ++k) {
    const Position& up = ch.user_positions[static_cast<std::size_t>(k)];
    const double d_bu = distance(cfg.bs_position, up);
    const double d_ru = distance(cfg.ris_position, up);
    if (d_bu <= 1e-9 || d_ru <= 1e-9) {
      throw std::invalid_argument("generate_channels: user coincides with BS or RIS");
    }
    ch.h_bs_user[static_cast<std::size_t>(k)] =
        std::sqrt(path_gain(cfg.pathloss_ref_db, d_bu, pe.bs_user)) * rng.cn_vector(nr);
    ch.h_ris_user[static_cast<std::size_t>(k)] =
        std::sqrt(path_gain(cfg.pathloss_ref_db, d_ru, pe.ris_user)) * rng.cn_vector(m);
  }

  // Target links: pure line of sight with random-phase fading coefficients.
  ch.fading_bs_tx_target =
      std::sqrt(path_gain(cfg.pathloss_ref_db, d_bs_target, pe.bs_tx_target)) *
      rng.random_phase();
  ch.fading_bs_rx_target =
      std::sqrt(path_gain(cfg.pathloss_ref_db, d_bs_target, pe.bs_rx_target)) *
      rng.random_phase();
  ch.fading_ris_target =
      std::sqrt(path_gain(cfg.pathloss_ref_db, d_ris_target, pe.ris_target)) *
      rng.random_phase();

  ch.g_bs_tx_target = ch.fading_bs_tx_target *
                      steering_vector_ula(nt, cfg.antenna_spacing_ratio, ch.angle_tx_target);
  ch.g_bs_rx_target = ch.fading_bs_rx_target *
                      steering_vector_ula(nr, cfg.antenna_spacing_ratio, ch.angle_rx_target);
  ch.g_ris_target = ch.fading_ris_target *
                    steering_vector_ris(cfg.n_ris_rows, cfg.n_ris_cols,
                                        cfg.antenna_spacing_ratio, ch.ris_elev_target,
                                        ch.ris_azim_target);
  return ch;
}

Vec effective_user_channel(const ChannelSet& ch, const Vec& phi, int k) {
  if (phi.size() != ch.n_ris()) {
    throw std::invalid_argument("effective_user_channel: phi dimension mismatch");
  }
  const Vec& h_ru = ch.h_ris_user.at(static_cast<std::size_t>(k));
  return ch.h_bs_user.at(static_cast<std::size_t>(k)) +
         ch.g_bs_rx_ris.adjoint() * phi.cwiseProduct(h_ru);
}

Mat effective_si_channel(const ChannelSet& ch, const Vec& phi) {
  if (phi.size() != ch.n_ris()) {
    throw std::invalid_argument("effective_si_channel: phi dimension mismatch");
  }
  return ch.g_bs_rx_ris.adjoint() * phi.asDiagonal() * ch.g_bs_tx_ris +
         ch.h_self_interference.adjoint();
}

Mat effective_radar_channel(const ChannelSet& ch, const Vec& phi, const Vec& psi1) {
  if (phi.size() != ch.n_ris() || psi1.size() != ch.n_ris()) {
    throw std::invalid_argument("effective_radar_channel: dimension mismatch");
  }
  const Vec rx = ch.g_bs_rx_target +
                 ch.g_bs_rx_ris.adjoint() * psi1.cwiseProduct(ch.g_ris_target);
  const Eigen::RowVectorXcd tx =
      ch.g_bs_tx_target.adjoint() +
      (phi.cwiseProduct(ch.g_ris_target)).transpose() * ch.g_bs_tx_ris;
  return rx * tx;
}

}  // namespace fdisac
