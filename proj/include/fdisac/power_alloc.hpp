#pragma once

#include "fdisac/coeffs.hpp"

namespace fdisac {

/// Closed-form KKT solution of the power subproblem, returned as q_k = p_k^2.
///
/// Users with a non-negative linear coefficient are switched off. The rest
/// take the box-clipped vertex p_k = min(-b_k / 2 a_k, p_max_k); if that
/// violates the radar budget the common multiplier nu is raised until
/// sum d_k p_k(nu)^2 meets the budget exactly (monotone root, bracketed by
/// nu_upper_bound). Throws InfeasibleError when the budget is negative.
RealVec solve_power(const PowerProblemData& pd, double tol = 1e-10);

/// Duality-gap bound for the budget multiplier, valid for any strictly
/// feasible p_interior:
///   (obj(p_interior) - obj(p_vertex)) / (budget - sum d_k p_interior_k^2).
double nu_upper_bound(const PowerProblemData& pd, const RealVec& p_interior);

}  // namespace fdisac
