#include "fdisac/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "fdisac/config_io.hpp"
#include "fdisac/linalg.hpp"
#include "fdisac/metrics.hpp"
#include "fdisac/scenario.hpp"

namespace fdisac {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(BaselineMode mode) {
  switch (mode) {
    case BaselineMode::Full: return "full";
    case BaselineMode::NoRis: return "noris";
    case BaselineMode::RndRis: return "rndris";
  }
  return "?";
}

std::optional<BaselineMode> baseline_mode_from_string(const std::string& s) {
  if (s == "full") return BaselineMode::Full;
  if (s == "noris") return BaselineMode::NoRis;
  if (s == "rndris") return BaselineMode::RndRis;
  return std::nullopt;
}

std::pair<int, int> ris_factorization(int m) {
  if (m < 1) throw std::invalid_argument("ris_factorization: m must be >= 1");
  int best = 1;
  for (int d = 1; d * d <= m; ++d) {
    if (m % d == 0) best = d;
  }
  return {best, m / best};
}

ChannelSet without_ris(const ChannelSet& ch) {
  ChannelSet out = ch;
  out.g_bs_tx_ris.setZero();
  out.g_bs_rx_ris.setZero();
  for (auto& h : out.h_ris_user) h.setZero();
  out.g_ris_target.setZero();
  return out;
}

namespace {

struct Task {
  int cell_id;
  int seed;
  ScenarioConfig cfg;
  BaselineMode mode;
};

CellResult run_task(const Task& task, const RunOptions& base_opts,
                    std::uint64_t master_seed, const std::string& out_dir) {
  CellResult r;
  r.cell_id = task.cell_id;
  r.seed = task.seed;
  r.mode = task.mode;
  r.m = task.cfg.n_ris();
  r.n_tx = task.cfg.n_tx;
  r.n_rx = task.cfg.n_rx;
  r.k_users = task.cfg.n_users;
  r.gamma_r_db = task.cfg.radar_threshold_db;
  r.si_db = task.cfg.si_path_loss_db;

  const auto t0 = std::chrono::steady_clock::now();
  RunOptions opts = base_opts;
  opts.seed = mix_seed(master_seed, static_cast<std::uint64_t>(task.cell_id),
                       static_cast<std::uint64_t>(task.seed));
  opts.optimize_phase = task.mode == BaselineMode::Full;

  ChannelSet ch = generate_channels(task.cfg, opts.seed);
  if (task.mode == BaselineMode::NoRis) ch = without_ris(ch);

  RunReport report = run(task.cfg, ch, opts);
  r.wall_ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  if (report.termination == "infeasible_init") {
    r.status = "infeasible";
  } else if (report.termination == "max_outer") {
    r.status = "maxiter";
  } else {
    r.status = "ok";
  }
  r.sum_rate = report.final_sum_rate;
  // -999 marks a run with no meaningful radar output (e.g. infeasible init)
  r.sinr_radar_db = report.final_sinr_radar > 0.0
                        ? linear_to_db(report.final_sinr_radar)
                        : -999.0;
  r.outer_iters = report.outer_iters;

  if (!out_dir.empty()) {
    std::ostringstream stem;
    stem << "cell" << task.cell_id << "_seed" << task.seed;
    std::ofstream rep(fs::path(out_dir) / (stem.str() + "_report.json"));
    rep << run_report_to_json(report, task.cfg);
    std::ofstream tr(fs::path(out_dir) / (stem.str() + "_trace.csv"));
    tr << run_trace_to_csv(report);
  }
  return r;
}

}  // namespace

std::vector<CellResult> run_sweep(const ScenarioConfig& base,
                                  const SweepSpec& sweep,
                                  const RunOptions& base_opts,
                                  const std::string& out_dir) {
  std::vector<int> m_values = sweep.ris_sizes;
  if (m_values.empty()) m_values = {base.n_ris()};
  std::vector<double> gamma_values = sweep.gamma_db_values;
  if (gamma_values.empty()) gamma_values = {base.radar_threshold_db};
  std::vector<double> si_values = sweep.si_db_values;
  if (si_values.empty()) si_values = {base.si_path_loss_db};

  std::vector<Task> tasks;
  int cell_id = 0;
  for (const BaselineMode mode : sweep.modes) {
    for (const int m : m_values) {
      for (const double gamma : gamma_values) {
        for (const double si : si_values) {
          ScenarioConfig cfg = base;
          const auto [rows, cols] = ris_factorization(m);
          cfg.n_ris_rows = rows;
          cfg.n_ris_cols = cols;
          cfg.radar_threshold_db = gamma;
          cfg.si_path_loss_db = si;
          for (int seed = 0; seed < sweep.seeds; ++seed) {
            tasks.push_back({cell_id, seed, cfg, mode});
          }
          ++cell_id;
        }
      }
    }
  }

  if (!out_dir.empty()) fs::create_directories(out_dir);

  std::vector<CellResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  const unsigned n_threads = sweep.threads > 0
                                 ? static_cast<unsigned>(sweep.threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      results[i] = run_task(tasks[i], base_opts, sweep.master_seed, out_dir);
    }
  };
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::sort(results.begin(), results.end(),
            [](const CellResult& a, const CellResult& b) {
              return std::tie(a.cell_id, a.seed) < std::tie(b.cell_id, b.seed);
            });
  if (!out_dir.empty()) {
    std::ofstream csv(fs::path(out_dir) / "results.csv");
    csv << results_csv_header() << '\n';
    for (const auto& r : results) csv << to_csv_row(r) << '\n';
  }
  return results;
}

std::string results_csv_header() {
  return "cell_id,seed,mode,M,Nt,Nr,K,gamma_r_db,si_db,sum_rate,"
         "sinr_radar_db,outer_iters,wall_ms,status";
}

std::string to_csv_row(const CellResult& r) {
  std::ostringstream oss;
  oss.precision(12);
  oss << r.cell_id << ',' << r.seed << ',' << to_string(r.mode) << ',' << r.m
      << ',' << r.n_tx << ',' << r.n_rx << ',' << r.k_users << ','
      << r.gamma_r_db << ',' << r.si_db << ',' << r.sum_rate << ','
      << r.sinr_radar_db << ',' << r.outer_iters << ',' << r.wall_ms << ','
      << r.status;
  return oss.str();
}

namespace {

json complex_to_json(const cxd& z) { return json::array({z.real(), z.imag()}); }

json vec_to_json(const Vec& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(complex_to_json(v[i]));
  return arr;
}

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::string run_report_to_json(const RunReport& report,
                               const ScenarioConfig& cfg) {
  json j;
  j["seed"] = report.seed;
  j["termination"] = report.termination;
  j["outer_iters"] = report.outer_iters;
  j["final_sum_rate"] = report.final_sum_rate;
  j["final_sinr_radar"] = report.final_sinr_radar;
  j["warnings"] = report.warnings;
  j["config"] = json::parse(scenario_config_to_json(cfg));
  if (report.final_design.phase.size() > 0) {
    j["final_design"]["phase"] = vec_to_json(report.final_design.phase);
    j["final_design"]["beamformer"] = mat_to_json(report.final_design.beamformer);
    j["final_design"]["user_power"] =
        std::vector<double>(report.final_design.user_power.begin(),
                            report.final_design.user_power.end());
    j["final_design"]["radar_filter"] = vec_to_json(report.final_design.radar_filter);
  }
  return j.dump(2);
}

std::string run_trace_to_csv(const RunReport& report) {
  std::ostringstream oss;
  oss.precision(12);
  oss << "iter,sum_rate,sinr_radar,radar_margin,power_margin,phase_error,"
         "phase_accepted,beamformer_accepted,power_accepted,"
         "user_filters_accepted,radar_filter_accepted,pdd_outer_iters,"
         "phase_ms,beamformer_ms,power_ms,filters_ms\n";
  for (const auto& it : report.iterations) {
    oss << it.iter << ',' << it.sum_rate << ',' << it.sinr_radar << ','
        << it.radar_margin << ',' << it.power_margin << ',' << it.phase_error
        << ',' << it.phase_accepted << ',' << it.beamformer_accepted << ','
        << it.power_accepted << ',' << it.user_filters_accepted << ','
        << it.radar_filter_accepted << ',' << it.pdd_outer_iters << ','
        << it.phase_ms << ',' << it.beamformer_ms << ',' << it.power_ms << ','
        << it.filters_ms << '\n';
  }
  return oss.str();
}

}  // namespace fdisac
