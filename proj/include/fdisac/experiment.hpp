#pragma once

#include <optional>
#include <string>

#include "fdisac/orchestrator.hpp"
#include "fdisac/types.hpp"

namespace fdisac {

enum class BaselineMode { Full, NoRis, RndRis };

std::string to_string(BaselineMode mode);
std::optional<BaselineMode> baseline_mode_from_string(const std::string& s);

/// One sweep axis value set; empty vectors mean "keep the config value".
struct SweepSpec {
  std::vector<int> ris_sizes;          // M values
  std::vector<double> gamma_db_values;
  std::vector<double> si_db_values;
  std::vector<BaselineMode> modes{BaselineMode::Full};
  int seeds = 1;
  std::uint64_t master_seed = 1;
  int threads = 0;  // 0 = hardware concurrency
};

struct CellResult {
  int cell_id = 0;
  int seed = 0;
  BaselineMode mode = BaselineMode::Full;
  int m = 0, n_tx = 0, n_rx = 0, k_users = 0;
  double gamma_r_db = 0.0;
  double si_db = 0.0;
  double sum_rate = 0.0;
  double sinr_radar_db = 0.0;
  int outer_iters = 0;
  double wall_ms = 0.0;
  std::string status;  // "ok" | "infeasible" | "maxiter"
};

/// Nearest-to-square factorization of a RIS size into rows x cols.
std::pair<int, int> ris_factorization(int m);

/// Zeroes every RIS-coupled link; the fixed-phase and no-surface baselines.
ChannelSet without_ris(const ChannelSet& ch);

/// Runs the cartesian sweep (cells x seeds) on a worker pool. Results come
/// back sorted by (cell_id, seed) so repeated runs with one master seed are
/// reproducible byte for byte apart from timings. When out_dir is non-empty,
/// writes results.csv, one run report JSON and one per-iteration trace CSV
/// per (cell, seed).
std::vector<CellResult> run_sweep(const ScenarioConfig& base,
                                  const SweepSpec& sweep,
                                  const RunOptions& base_opts,
                                  const std::string& out_dir);

std::string results_csv_header();
std::string to_csv_row(const CellResult& r);

/// Serialized run report (JSON) and per-iteration trace (CSV).
std::string run_report_to_json(const RunReport& report,
                               const ScenarioConfig& cfg);
std::string run_trace_to_csv(const RunReport& report);

}  // namespace fdisac
