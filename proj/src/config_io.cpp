#include "fdisac/config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fdisac {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw std::invalid_argument("config field '" + field + "': " + why);
}

template <typename T>
void read(const json& j, const char* field, T& out) {
  if (!j.contains(field)) return;
  try {
    out = j.at(field).get<T>();
  } catch (const json::exception& e) {
    fail(field, e.what());
  }
}

void read_position(const json& j, const char* field, Position& out) {
  if (!j.contains(field)) return;
  const json& v = j.at(field);
  if (!v.is_array() || v.size() != 3) fail(field, "expected [x, y, z]");
  out = {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

void read_range(const json& v, const std::string& field, double& lo, double& hi) {
  if (!v.is_array() || v.size() != 2) fail(field, "expected [min, max]");
  lo = v[0].get<double>();
  hi = v[1].get<double>();
}

void check_known_keys(const json& j, const std::set<std::string>& known,
                      const std::string& scope) {
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) {
      fail(scope.empty() ? item.key() : scope + "." + item.key(),
           "unknown field");
    }
  }
}

}  // namespace

ScenarioConfig parse_scenario_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }

  check_known_keys(
      j,
      {"n_tx", "n_rx", "n_ris", "n_users", "antenna_spacing_ratio",
       "bs_power_dbm", "user_power_dbm", "noise_dbm", "radar_threshold_db",
       "rcs_variance", "si_path_loss_db", "pathloss_ref_db",
       "pathloss_exponents", "rician_k_db", "positions", "rng_seed"},
      "");

  ScenarioConfig cfg;
  read(j, "n_tx", cfg.n_tx);
  read(j, "n_rx", cfg.n_rx);
  if (j.contains("n_ris")) {
    const json& r = j.at("n_ris");
    if (r.is_object()) {
      check_known_keys(r, {"rows", "cols"}, "n_ris");
      read(r, "rows", cfg.n_ris_rows);
      read(r, "cols", cfg.n_ris_cols);
    } else {
      fail("n_ris", "expected object {rows, cols}");
    }
  }
  read(j, "n_users", cfg.n_users);
  read(j, "antenna_spacing_ratio", cfg.antenna_spacing_ratio);
  read(j, "bs_power_dbm", cfg.bs_power_dbm);
  if (j.contains("user_power_dbm")) {
    const json& p = j.at("user_power_dbm");
    if (p.is_number()) {
      cfg.user_power_dbm = {p.get<double>()};
    } else if (p.is_array()) {
      cfg.user_power_dbm = p.get<std::vector<double>>();
    } else {
      fail("user_power_dbm", "expected number or array");
    }
  }
  read(j, "noise_dbm", cfg.noise_dbm);
  read(j, "radar_threshold_db", cfg.radar_threshold_db);
  read(j, "rcs_variance", cfg.rcs_variance);
  read(j, "si_path_loss_db", cfg.si_path_loss_db);
  read(j, "pathloss_ref_db", cfg.pathloss_ref_db);

  if (j.contains("pathloss_exponents")) {
    const json& p = j.at("pathloss_exponents");
    check_known_keys(p,
                     {"bs_user", "bs_tx_ris", "bs_rx_ris", "ris_user",
                      "ris_target", "bs_tx_target", "bs_rx_target"},
                     "pathloss_exponents");
    read(p, "bs_user", cfg.pathloss_exponents.bs_user);
    read(p, "bs_tx_ris", cfg.pathloss_exponents.bs_tx_ris);
    read(p, "bs_rx_ris", cfg.pathloss_exponents.bs_rx_ris);
    read(p, "ris_user", cfg.pathloss_exponents.ris_user);
    read(p, "ris_target", cfg.pathloss_exponents.ris_target);
    read(p, "bs_tx_target", cfg.pathloss_exponents.bs_tx_target);
    read(p, "bs_rx_target", cfg.pathloss_exponents.bs_rx_target);
  }
  if (j.contains("rician_k_db")) {
    const json& r = j.at("rician_k_db");
    check_known_keys(r, {"bs_ris", "self_interference"}, "rician_k_db");
    read(r, "bs_ris", cfg.rician_k_db.bs_ris);
    read(r, "self_interference", cfg.rician_k_db.self_interference);
  }
  if (j.contains("positions")) {
    const json& p = j.at("positions");
    check_known_keys(p, {"bs", "ris", "target_box", "user_disc"}, "positions");
    read_position(p, "bs", cfg.bs_position);
    read_position(p, "ris", cfg.ris_position);
    if (p.contains("target_box")) {
      const json& b = p.at("target_box");
      check_known_keys(b, {"x", "y", "z"}, "positions.target_box");
      if (b.contains("x")) read_range(b.at("x"), "positions.target_box.x",
                                      cfg.target_box.x_min, cfg.target_box.x_max);
      if (b.contains("y")) read_range(b.at("y"), "positions.target_box.y",
                                      cfg.target_box.y_min, cfg.target_box.y_max);
      if (b.contains("z")) read_range(b.at("z"), "positions.target_box.z",
                                      cfg.target_box.z_min, cfg.target_box.z_max);
    }
    if (p.contains("user_disc")) {
      const json& d = p.at("user_disc");
      check_known_keys(d, {"radius", "height"}, "positions.user_disc");
      read(d, "radius", cfg.user_disc.radius);
      read(d, "height", cfg.user_disc.height);
    }
  }
  read(j, "rng_seed", cfg.rng_seed);

  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return cfg;
}

ScenarioConfig load_scenario_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config file not readable: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_config(buf.str());
}

std::string scenario_config_to_json(const ScenarioConfig& cfg) {
  json j;
  j["n_tx"] = cfg.n_tx;
  j["n_rx"] = cfg.n_rx;
  j["n_ris"] = {{"rows", cfg.n_ris_rows}, {"cols", cfg.n_ris_cols}};
  j["n_users"] = cfg.n_users;
  j["antenna_spacing_ratio"] = cfg.antenna_spacing_ratio;
  j["bs_power_dbm"] = cfg.bs_power_dbm;
  if (!cfg.user_power_dbm.empty()) {
    j["user_power_dbm"] = cfg.user_power_dbm;
  } else {
    j["user_power_dbm"] = 10.0;
  }
  j["noise_dbm"] = cfg.noise_dbm;
  j["radar_threshold_db"] = cfg.radar_threshold_db;
  j["rcs_variance"] = cfg.rcs_variance;
  j["si_path_loss_db"] = cfg.si_path_loss_db;
  j["pathloss_ref_db"] = cfg.pathloss_ref_db;
  j["pathloss_exponents"] = {
      {"bs_user", cfg.pathloss_exponents.bs_user},
      {"bs_tx_ris", cfg.pathloss_exponents.bs_tx_ris},
      {"bs_rx_ris", cfg.pathloss_exponents.bs_rx_ris},
      {"ris_user", cfg.pathloss_exponents.ris_user},
      {"ris_target", cfg.pathloss_exponents.ris_target},
      {"bs_tx_target", cfg.pathloss_exponents.bs_tx_target},
      {"bs_rx_target", cfg.pathloss_exponents.bs_rx_target}};
  j["rician_k_db"] = {{"bs_ris", cfg.rician_k_db.bs_ris},
                      {"self_interference", cfg.rician_k_db.self_interference}};
  j["positions"] = {
      {"bs", {cfg.bs_position.x, cfg.bs_position.y, cfg.bs_position.z}},
      {"ris", {cfg.ris_position.x, cfg.ris_position.y, cfg.ris_position.z}},
      {"target_box",
       {{"x", {cfg.target_box.x_min, cfg.target_box.x_max}},
        {"y", {cfg.target_box.y_min, cfg.target_box.y_max}},
        {"z", {cfg.target_box.z_min, cfg.target_box.z_max}}}},
      {"user_disc",
       {{"radius", cfg.user_disc.radius}, {"height", cfg.user_disc.height}}}};
  j["rng_seed"] = cfg.rng_seed;
  return j.dump(2);
}

}  // namespace fdisac
