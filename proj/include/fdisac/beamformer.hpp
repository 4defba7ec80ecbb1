#pragma once

#include "fdisac/coeffs.hpp"
#include "fdisac/types.hpp"

namespace fdisac {

struct AdmmConfig {
  double upsilon = 1.0;     // consensus penalty, meaningful at unit curvature
  double tol_primal = 1e-6; // on ||w - f||
  double tol_dual = 1e-6;   // on ||f_next - f||
  int max_iters = 200;
  bool precondition = true; // normalize quadratic coefficients to unit top eigenvalue
};

struct AdmmTraceRow {
  int iter = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double objective = 0.0;
};

struct AdmmResult {
  Vec w;
  bool converged = false;
  int iters = 0;
  std::vector<AdmmTraceRow> trace;
};

/// Feasibility-copy update: nearest point to tau/upsilon + w inside the
/// linearized radar constraint.
Vec update_f(const WProblemData& wp, const Vec& w, const Vec& tau,
             double upsilon);

/// Power-copy update: ridge-regularized objective step inside the power ball.
Vec update_w(const WProblemData& wp, const Vec& f, const Vec& tau,
             double upsilon, double p_bs);

/// Dual ascent on the consensus gap.
Vec update_tau(const Vec& tau, const Vec& w, const Vec& f, double upsilon);

/// Consensus ADMM for the linearized beamformer subproblem. The returned
/// vector satisfies the power ball exactly; if it misses the linearized radar
/// constraint beyond tolerance the feasibility copy (power-rescaled) is
/// returned instead.
AdmmResult admm_solve(const WProblemData& wp, const Vec& w_init,
                      const AdmmConfig& cfg, double p_bs);

struct BeamformerResult {
  Mat w;                  // N_t x N_t
  int mm_iters = 0;
  double objective = 0.0; // final surrogate objective value
  std::vector<AdmmTraceRow> last_trace;
};

/// Outer linearize-and-solve loop. Each accepted step re-anchors the concave
/// constraint part at the new point; the surrogate objective is
/// non-increasing across accepted steps.
BeamformerResult optimize_beamformer(const SystemParams& sys,
                                     const ChannelSet& ch,
                                     const DesignVariables& dv,
                                     const AuxState& aux,
                                     const AdmmConfig& cfg);

}  // namespace fdisac
