#pragma once

#include <string>

#include "fdisac/beamformer.hpp"
#include "fdisac/ris_pdd.hpp"
#include "fdisac/types.hpp"

namespace fdisac {

struct RunOptions {
  int max_outer = 50;
  double stop_tol = 1e-4;      // relative sum-rate change
  bool optimize_phase = true;  // false for the fixed-phase baselines
  PddConfig pdd;
  AdmmConfig admm;
  std::uint64_t seed = 0;
};

struct IterationRecord {
  int iter = 0;
  double sum_rate = 0.0;
  double sinr_radar = 0.0;
  double radar_margin = 0.0;   // sinr_radar / gamma_r - 1
  double power_margin = 0.0;   // (p_bs - ||W||_F^2) / p_bs
  double phase_error = 0.0;    // worst | |phi_m| - 1 |
  bool phase_accepted = false;
  bool beamformer_accepted = false;
  bool power_accepted = false;
  bool user_filters_accepted = false;
  bool radar_filter_accepted = false;
  double phase_ms = 0.0, beamformer_ms = 0.0, power_ms = 0.0, filters_ms = 0.0;
  int pdd_outer_iters = 0;
};

struct RunReport {
  std::vector<IterationRecord> iterations;
  std::string termination;  // "converged" | "max_outer" | "infeasible_init"
  int outer_iters = 0;
  double final_sum_rate = 0.0;
  double final_sinr_radar = 0.0;
  DesignVariables final_design;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
};

/// Feasible starting point: random unit-modulus phases, full BS power aimed
/// at the direct target channel, matched user filters, and uplink powers
/// backed off geometrically (with radar-filter refreshes and a beam re-aim
/// toward the composite target channel) until the radar constraint holds.
/// Throws InfeasibleError naming the violated margin when restoration fails.
DesignVariables init_feasible(const ScenarioConfig& cfg, const ChannelSet& ch,
                              std::uint64_t seed);

/// Block-coordinate ascent over (beta, omega) -> phi -> W -> q -> {u_k} ->
/// u_0. Every block is accepted only if the true sum rate does not drop by
/// more than 1e-8 and the radar constraint stays satisfied, so the logged
/// sum-rate sequence is non-decreasing and every iterate is feasible.
RunReport run(const ScenarioConfig& cfg, const ChannelSet& ch,
              const RunOptions& opts);

/// As run(), but starting from a caller-supplied feasible design.
RunReport run_from(const ScenarioConfig& cfg, const ChannelSet& ch,
                   const DesignVariables& start, const RunOptions& opts);

}  // namespace fdisac
