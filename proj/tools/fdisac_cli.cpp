#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fdisac/config_io.hpp"
#include "fdisac/experiment.hpp"

namespace {

// "--sweep m=16,32,64" / "--sweep gamma_db=0,5,10" / "--sweep si_db=-110,-90"
bool parse_sweep(const std::string& spec, fdisac::SweepSpec& sweep,
                 std::string& err) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) {
    err = "sweep spec must be axis=v1,v2,...: " + spec;
    return false;
  }
  const std::string axis = spec.substr(0, eq);
  std::vector<double> values;
  std::stringstream ss(spec.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      err = "bad sweep value '" + item + "' in " + spec;
      return false;
    }
  }
  if (values.empty()) {
    err = "empty sweep axis: " + spec;
    return false;
  }
  if (axis == "m") {
    for (double v : values) sweep.ris_sizes.push_back(static_cast<int>(v));
  } else if (axis == "gamma_db") {
    sweep.gamma_db_values = values;
  } else if (axis == "si_db") {
    sweep.si_db_values = values;
  } else {
    err = "unknown sweep axis '" + axis + "' (expected m, gamma_db, si_db)";
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint RIS/beamforming optimizer for a full-duplex sensing and "
               "uplink communication system"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand(
      "run", "Run seeded Monte-Carlo sweeps and write results.csv");
  std::string config_path;
  std::string out_dir = "out";
  std::string mode_str = "full";
  std::vector<std::string> sweep_specs;
  int seeds = 1;
  std::uint64_t master_seed = 1;
  int threads = 0;
  int max_outer = 50;
  double stop_tol = 1e-4;
  run_cmd->add_option("--config", config_path, "Scenario JSON (defaults used when absent)");
  run_cmd->add_option("--out", out_dir, "Output directory");
  run_cmd->add_option("--mode", mode_str, "full | noris | rndris")
      ->check(CLI::IsMember({"full", "noris", "rndris"}));
  run_cmd->add_option("--sweep", sweep_specs,
                      "Sweep axis, e.g. m=16,32,64 or gamma_db=0,5,10 or "
                      "si_db=-110,-90 (repeatable)");
  run_cmd->add_option("--seeds", seeds, "Monte-Carlo seeds per cell")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--master-seed", master_seed, "Master RNG seed");
  run_cmd->add_option("--threads", threads, "Worker threads (0 = auto)");
  run_cmd->add_option("--max-outer", max_outer, "Outer iteration cap");
  run_cmd->add_option("--stop-tol", stop_tol, "Relative sum-rate stop tolerance");

  auto* defaults_cmd = app.add_subcommand(
      "print-config", "Print the default scenario configuration as JSON");

  CLI11_PARSE(app, argc, argv);

  if (defaults_cmd->parsed()) {
    std::cout << fdisac::scenario_config_to_json(fdisac::ScenarioConfig{})
              << std::endl;
    return 0;
  }

  fdisac::ScenarioConfig cfg;
  try {
    if (!config_path.empty()) cfg = fdisac::load_scenario_config(config_path);
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }

  fdisac::SweepSpec sweep;
  sweep.seeds = seeds;
  sweep.master_seed = master_seed;
  sweep.threads = threads;
  sweep.modes = {*fdisac::baseline_mode_from_string(mode_str)};
  for (const auto& spec : sweep_specs) {
    std::string err;
    if (!parse_sweep(spec, sweep, err)) {
      std::cerr << "error: " << err << std::endl;
      return 2;
    }
  }

  fdisac::RunOptions opts;
  opts.max_outer = max_outer;
  opts.stop_tol = stop_tol;

  try {
    const auto results = fdisac::run_sweep(cfg, sweep, opts, out_dir);
    int ok = 0, infeasible = 0;
    for (const auto& r : results) {
      if (r.status == "infeasible") {
        ++infeasible;
      } else {
        ++ok;
      }
    }
    std::printf("%zu runs (%d completed, %d infeasible) -> %s/results.csv\n",
                results.size(), ok, infeasible, out_dir.c_str());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
