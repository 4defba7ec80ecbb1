#pragma once

#include "fdisac/coeffs.hpp"
#include "fdisac/types.hpp"

namespace fdisac {

struct PddConfig {
  double rho0 = 1.0;
  double penalty_shrink = 0.85;  // rho multiplier when consensus lags
  double eta0 = 0.1;
  double eta_decay = 0.7;
  double inner_tol = 1e-6;       // relative AL change
  int inner_max_iters = 50;
  double outer_tol = 1e-6;       // on ||phi - psi_i||_2
  int outer_max_iters = 120;
};

struct PddTraceRow {
  int outer = 0;
  double res_psi1 = 0.0;  // ||phi - psi1||_inf
  double res_psi2 = 0.0;
  double al_value = 0.0;
  double rho = 0.0;
};

struct PddState {
  Vec phi, psi1, psi2;
  Vec lambda1, lambda2;
  double rho = 1.0;
  double eta = 0.1;
};

struct PddResult {
  Vec phi;                     // unit modulus, accepted
  PddState state;              // relaxed variables at termination
  bool converged = false;
  bool improved = false;       // accepted over the starting point
  int outer_iters = 0;
  double al_violation = 0.0;   // worst observed inner AL increase
  int solver_failures = 0;
  std::vector<PddTraceRow> trace;
};

/// Augmented Lagrangian of the split phase problem (constraint not included).
double pdd_augmented_lagrangian(const P2CoeffSet& c, const PddState& s);

/// Exact minimizer of the AL over phi with (psi1, psi2) fixed, constraint
/// linearized at the current phi.
Vec update_phi(const P5CoeffSet& p5, const PddState& s);

/// Exact minimizer over psi1 with (phi, psi2) fixed; affine constraint.
Vec update_psi1(const P7CoeffSet& p7, const PddState& s);

/// Entry-wise phase alignment with phi + rho * lambda2; exactly unit modulus.
Vec update_psi2(const Vec& phi, const Vec& lambda2, double rho);

/// Dual ascent when both consensus residuals are within the current eta,
/// penalty tightening otherwise. Returns the residuals it acted on.
std::pair<double, double> pdd_outer_step(PddState& s, const PddConfig& cfg);

/// Full penalty-dual loop for the phase shifts. The returned phi is projected
/// to unit modulus and accepted only if it keeps the radar constraint
/// satisfied and does not worsen the surrogate objective; otherwise the
/// starting phi is kept.
PddResult pdd_optimize_phase(const P2CoeffSet& c, const Vec& phi_start,
                             const PddConfig& cfg);

}  // namespace fdisac
