#include "fdisac/orchestrator.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "fdisac/coeffs.hpp"
#include "fdisac/filters.hpp"
#include "fdisac/linalg.hpp"
#include "fdisac/metrics.hpp"
#include "fdisac/power_alloc.hpp"
#include "fdisac/scenario.hpp"

namespace fdisac {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Vec random_unit_phase(std::mt19937_64& rng, Eigen::Index m) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.141592653589793);
  Vec phi(m);
  for (Eigen::Index i = 0; i < m; ++i) phi[i] = std::polar(1.0, angle(rng));
  return phi;
}

Mat single_beam(const Vec& direction, double power, Eigen::Index nt,
                std::mt19937_64& rng) {
  Vec dir = direction;
  if (dir.squaredNorm() <= 0.0) {
    std::normal_distribution<double> g(0.0, 1.0);
    dir = Vec(nt);
    for (Eigen::Index i = 0; i < nt; ++i) dir[i] = cxd(g(rng), g(rng));
  }
  Mat w = Mat::Zero(nt, nt);
  w.col(0) = std::sqrt(power) * dir.normalized();
  return w;
}

AuxState make_aux(const SystemParams& sys, const ChannelSet& ch,
                  const DesignVariables& dv, const RunOptions& opts) {
  AuxState aux;
  const int k_users = ch.n_users();
  aux.beta.resize(static_cast<std::size_t>(k_users));
  aux.omega.resize(static_cast<std::size_t>(k_users));
  for (int k = 0; k < k_users; ++k) {
    aux.beta[static_cast<std::size_t>(k)] = update_beta(sys, ch, dv, k);
    aux.omega[static_cast<std::size_t>(k)] = update_omega(sys, ch, dv, k);
  }
  const Eigen::Index m = ch.n_ris();
  aux.psi1 = dv.phase;
  aux.psi2 = dv.phase;
  aux.lambda1 = Vec::Zero(m);
  aux.lambda2 = Vec::Zero(m);
  aux.rho = opts.pdd.rho0;
  aux.eta_threshold = opts.pdd.eta0;
  aux.upsilon = opts.admm.upsilon;
  aux.tau = Vec::Zero(static_cast<Eigen::Index>(ch.n_tx()) * ch.n_tx());
  return aux;
}

Vec dominant_echo_direction(const ChannelSet& ch, const DesignVariables& dv) {
  const Mat hw = effective_radar_channel(ch, dv.phase, dv.phase) * dv.beamformer;
  Eigen::JacobiSVD<Mat> svd(hw, Eigen::ComputeThinU);
  if (svd.singularValues().size() == 0 || svd.singularValues()[0] <= 0.0) {
    return Vec::Ones(dv.radar_filter.size() > 0 ? dv.radar_filter.size()
                                                : ch.n_rx());
  }
  return svd.matrixU().col(0);
}

}  // namespace

DesignVariables init_feasible(const ScenarioConfig& cfg, const ChannelSet& ch,
                              std::uint64_t seed) {
  const SystemParams sys = system_params(cfg);
  std::mt19937_64 rng(mix_seed(cfg.rng_seed, seed, 0x1717));

  DesignVariables dv;
  dv.phase = random_unit_phase(rng, ch.n_ris());
  dv.beamformer = single_beam(ch.g_bs_tx_target, sys.bs_power, ch.n_tx(), rng);
  dv.user_power = RealVec::Zero(ch.n_users());
  for (int k = 0; k < ch.n_users(); ++k) {
    dv.user_power[k] = sys.user_power[static_cast<std::size_t>(k)];
  }
  dv.user_filters.resize(static_cast<std::size_t>(ch.n_users()));
  for (int k = 0; k < ch.n_users(); ++k) {
    Vec h = effective_user_channel(ch, dv.phase, k);
    if (h.squaredNorm() <= 0.0) h = Vec::Unit(ch.n_rx(), 0);
    dv.user_filters[static_cast<std::size_t>(k)] = h.normalized();
  }

  AuxState dummy;
  dummy.beta.assign(static_cast<std::size_t>(ch.n_users()), cxd(0.0, 0.0));
  dummy.omega.assign(static_cast<std::size_t>(ch.n_users()), 1.0);

  dv.radar_filter = Vec::Unit(ch.n_rx(), 0);
  const int max_rounds = 50;
  double sinr = 0.0;
  for (int round = 0; round < max_rounds; ++round) {
    const FilterProblemData fp = build_filter_problems(sys, ch, dv, dummy);
    dv.radar_filter = update_radar_filter(fp, dominant_echo_direction(ch, dv));
    sinr = sinr_radar(sys, ch, dv);
    if (sinr >= sys.radar_threshold) return dv;
    if (round == 0) {
      // aim the probing beam at the composite (direct + reflected) channel
      const Vec composite =
          ch.g_bs_tx_target +
          ch.g_bs_tx_ris.adjoint() *
              dv.phase.cwiseProduct(ch.g_ris_target).conjugate();
      dv.beamformer = single_beam(composite, sys.bs_power, ch.n_tx(), rng);
    } else {
      dv.user_power *= 0.25;  // uplink interference dominates the radar margin
    }
  }
  std::ostringstream oss;
  oss << "init_feasible: radar SINR " << linear_to_db(sinr)
      << " dB below threshold " << cfg.radar_threshold_db
      << " dB after restoration";
  throw InfeasibleError(oss.str());
}

RunReport run(const ScenarioConfig& cfg, const ChannelSet& ch,
              const RunOptions& opts) {
  DesignVariables dv;
  try {
    dv = init_feasible(cfg, ch, opts.seed);
  } catch (const InfeasibleError& e) {
    RunReport report;
    report.termination = "infeasible_init";
    report.warnings.emplace_back(e.what());
    report.seed = opts.seed;
    return report;
  }
  return run_from(cfg, ch, dv, opts);
}

RunReport run_from(const ScenarioConfig& cfg, const ChannelSet& ch,
                   const DesignVariables& start, const RunOptions& opts) {
  const SystemParams sys = system_params(cfg);
  DesignVariables dv = start;
  AuxState aux = make_aux(sys, ch, dv, opts);

  RunReport report;
  report.seed = opts.seed;

  constexpr double kRateSlack = 1e-8;
  const double gamma_ok = sys.radar_threshold * (1.0 - 1e-8);
  double rate = sum_rate(sys, ch, dv);
  double sinr = sinr_radar(sys, ch, dv);

  // Candidate acceptance: never lose sum rate, never break the radar floor.
  auto guarded = [&](DesignVariables& trial) -> bool {
    double trial_rate = 0.0, trial_sinr = 0.0;
    try {
      trial_rate = sum_rate(sys, ch, trial);
      trial_sinr = sinr_radar(sys, ch, trial);
    } catch (const std::exception&) {
      return false;
    }
    if (!std::isfinite(trial_rate) || !std::isfinite(trial_sinr)) return false;
    if (trial_rate < rate - kRateSlack || trial_sinr < gamma_ok) return false;
    rate = std::max(rate, trial_rate);
    sinr = trial_sinr;
    return true;
  };

  for (int outer = 1; outer <= opts.max_outer; ++outer) {
    IterationRecord rec;
    rec.iter = outer;
    const double rate_prev = rate;

    for (int k = 0; k < ch.n_users(); ++k) {
      aux.beta[static_cast<std::size_t>(k)] = update_beta(sys, ch, dv, k);
      aux.omega[static_cast<std::size_t>(k)] = update_omega(sys, ch, dv, k);
    }

    if (opts.optimize_phase) {
      const auto t0 = Clock::now();
      const P2CoeffSet c2 = build_p2_coeffs(sys, ch, dv, aux);
      const PddResult res = pdd_optimize_phase(c2, dv.phase, opts.pdd);
      rec.pdd_outer_iters = res.outer_iters;
      aux.psi1 = res.state.psi1;
      aux.psi2 = res.state.psi2;
      aux.lambda1 = res.state.lambda1;
      aux.lambda2 = res.state.lambda2;
      aux.rho = res.state.rho;
      aux.eta_threshold = res.state.eta;
      DesignVariables trial = dv;
      trial.phase = res.phi;
      if (guarded(trial)) {
        dv = std::move(trial);
        rec.phase_accepted = true;
      }
      rec.phase_ms = ms_since(t0);
    }

    {
      const auto t0 = Clock::now();
      const BeamformerResult bf = optimize_beamformer(sys, ch, dv, aux, opts.admm);
      DesignVariables trial = dv;
      trial.beamformer = bf.w;
      if (guarded(trial)) {
        dv = std::move(trial);
        rec.beamformer_accepted = true;
      }
      rec.beamformer_ms = ms_since(t0);
    }

    {
      const auto t0 = Clock::now();
      try {
        const PowerProblemData pd = build_power_problem(sys, ch, dv, aux);
        const RealVec q = solve_power(pd);
        DesignVariables trial = dv;
        trial.user_power = q;
        if (guarded(trial)) {
          dv = std::move(trial);
          rec.power_accepted = true;
        }
      } catch (const std::exception& e) {
        report.warnings.emplace_back(std::string("power block: ") + e.what());
      }
      rec.power_ms = ms_since(t0);
    }

    {
      const auto t0 = Clock::now();
      const FilterProblemData fp = build_filter_problems(sys, ch, dv, aux);
      DesignVariables trial = dv;
      trial.user_filters = update_user_filters(fp, dv.user_filters);
      if (guarded(trial)) {
        dv = std::move(trial);
        rec.user_filters_accepted = true;
      }

      // The radar filter leaves the sum rate untouched; accept on margin.
      DesignVariables trial0 = dv;
      trial0.radar_filter = update_radar_filter(fp, dv.radar_filter);
      const double sinr_new = sinr_radar(sys, ch, trial0);
      if (std::isfinite(sinr_new) && sinr_new >= sinr * (1.0 - 1e-9)) {
        dv = std::move(trial0);
        sinr = sinr_new;
        rec.radar_filter_accepted = true;
      }
      rec.filters_ms = ms_since(t0);
    }

    rec.sum_rate = rate;
    rec.sinr_radar = sinr;
    rec.radar_margin = sinr / sys.radar_threshold - 1.0;
    rec.power_margin =
        (sys.bs_power - dv.beamformer.squaredNorm()) / sys.bs_power;
    rec.phase_error = unit_modulus_error(dv.phase);
    report.iterations.push_back(rec);
    report.outer_iters = outer;

    const double change = std::abs(rate - rate_prev);
    if (change <= opts.stop_tol * std::max(std::abs(rate_prev), 1e-12)) {
      report.termination = "converged";
      break;
    }
  }
  if (report.termination.empty()) report.termination = "max_outer";
  report.final_sum_rate = rate;
  report.final_sinr_radar = sinr;
  report.final_design = std::move(dv);
  return report;
}

}  // namespace fdisac
