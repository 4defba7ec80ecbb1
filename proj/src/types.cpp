#include "fdisac/types.hpp"

#include <cmath>
#include <string>

#include "fdisac/linalg.hpp"

namespace fdisac {

double distance(const Position& a, const Position& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double ScenarioConfig::user_power_dbm_of(int k) const {
  if (user_power_dbm.empty()) return 10.0;
  if (user_power_dbm.size() == 1) return user_power_dbm.front();
  return user_power_dbm.at(static_cast<std::size_t>(k));
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("ScenarioConfig: " + what);
}

void check_exponent(double alpha, const char* name) {
  require(alpha > 1.0 && alpha < 6.0,
          std::string(name) + " must lie in (1, 6), got " + std::to_string(alpha));
}

}  // namespace

void ScenarioConfig::validate() const {
  require(n_tx >= 1, "n_tx must be >= 1");
  require(n_rx >= 1, "n_rx must be >= 1");
  require(n_ris_rows >= 1 && n_ris_cols >= 1, "RIS factorization must be >= 1x1");
  require(n_users >= 1, "n_users must be >= 1");
  require(antenna_spacing_ratio > 0.0, "antenna_spacing_ratio must be positive");
  require(std::isfinite(bs_power_dbm) && std::isfinite(noise_dbm) &&
              std::isfinite(radar_threshold_db) && std::isfinite(si_path_loss_db) &&
              std::isfinite(pathloss_ref_db),
          "all powers must be finite");
  require(rcs_variance > 0.0, "rcs_variance must be positive");
  require(!(user_power_dbm.size() > 1 &&
            user_power_dbm.size() != static_cast<std::size_t>(n_users)),
          "user_power_dbm must be scalar or one entry per user");
  for (int k = 0; k < n_users; ++k) {
    require(std::isfinite(user_power_dbm_of(k)), "user power must be finite");
  }
  check_exponent(pathloss_exponents.bs_user, "pathloss_exponents.bs_user");
  check_exponent(pathloss_exponents.bs_tx_ris, "pathloss_exponents.bs_tx_ris");
  check_exponent(pathloss_exponents.bs_rx_ris, "pathloss_exponents.bs_rx_ris");
  check_exponent(pathloss_exponents.ris_user, "pathloss_exponents.ris_user");
  check_exponent(pathloss_exponents.ris_target, "pathloss_exponents.ris_target");
  check_exponent(pathloss_exponents.bs_tx_target, "pathloss_exponents.bs_tx_target");
  check_exponent(pathloss_exponents.bs_rx_target, "pathloss_exponents.bs_rx_target");
  require(target_box.x_min <= target_box.x_max && target_box.y_min <= target_box.y_max &&
              target_box.z_min <= target_box.z_max,
          "target_box bounds are inverted");
  require(user_disc.radius > 0.0, "user_disc.radius must be positive");
}

SystemParams system_params(const ScenarioConfig& cfg) {
  SystemParams p;
  // Power unit: receiver noise power, so noise_power is exactly 1.
  p.noise_power = 1.0;
  p.bs_power = db_to_linear(cfg.bs_power_dbm - cfg.noise_dbm);
  p.user_power.resize(static_cast<std::size_t>(cfg.n_users));
  for (int k = 0; k < cfg.n_users; ++k) {
    p.user_power[static_cast<std::size_t>(k)] =
        db_to_linear(cfg.user_power_dbm_of(k) - cfg.noise_dbm);
  }
  p.radar_threshold = db_to_linear(cfg.radar_threshold_db);
  p.rcs_variance = cfg.rcs_variance;
  return p;
}

double path_gain(double pathloss_ref_db, double dist, double alpha) {
  if (dist <= 0.0) {
    throw std::invalid_argument("path_gain: distance must be positive");
  }
  return db_to_linear(pathloss_ref_db) * std::pow(dist, -alpha);
}

}  // namespace fdisac
