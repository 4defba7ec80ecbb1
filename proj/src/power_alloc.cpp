#include "fdisac/power_alloc.hpp"

#include <cmath>

#include "fdisac/qcqp.hpp"

namespace fdisac {

namespace {

RealVec clipped_vertex(const PowerProblemData& pd, double nu) {
  const Eigen::Index k_users = pd.quad_coeff.size();
  RealVec p = RealVec::Zero(k_users);
  for (Eigen::Index k = 0; k < k_users; ++k) {
    if (pd.lin_coeff[k] >= 0.0) continue;  // switched off
    const double denom = 2.0 * pd.quad_coeff[k] + 2.0 * nu * pd.budget_coeff[k];
    p[k] = std::min(-pd.lin_coeff[k] / denom, pd.p_max[k]);
  }
  return p;
}

}  // namespace

double nu_upper_bound(const PowerProblemData& pd, const RealVec& p_interior) {
  const double used = pd.budget_used(p_interior);
  if (!(used < pd.budget)) {
    throw std::invalid_argument("nu_upper_bound: point is not strictly interior");
  }
  const RealVec vertex = clipped_vertex(pd, 0.0);
  return (pd.objective_p(p_interior) - pd.objective_p(vertex)) /
         (pd.budget - used);
}

RealVec solve_power(const PowerProblemData& pd, double tol) {
  const Eigen::Index k_users = pd.quad_coeff.size();
  if (pd.budget < 0.0) {
    throw InfeasibleError("solve_power: negative radar budget; restore feasibility first");
  }
  for (Eigen::Index k = 0; k < k_users; ++k) {
    if (pd.lin_coeff[k] < 0.0 && pd.quad_coeff[k] <= 0.0) {
      throw std::invalid_argument("solve_power: active user with non-positive curvature");
    }
    if (pd.p_max[k] <= 0.0) {
      throw std::invalid_argument("solve_power: non-positive power cap");
    }
  }

  RealVec p = clipped_vertex(pd, 0.0);
  if (pd.budget_used(p) <= pd.budget * (1.0 + tol) + tol) {
    return p.array().square();
  }
  if (pd.budget == 0.0) {
    // every user the radar filter can hear must stay silent
    for (Eigen::Index k = 0; k < k_users; ++k) {
      if (pd.budget_coeff[k] > 0.0) p[k] = 0.0;
    }
    return p.array().square();
  }

  // Budget is active: raise nu until it is met exactly.
  auto g = [&](double nu) { return pd.budget_used(clipped_vertex(pd, nu)) - pd.budget; };
  auto dg = [&](double nu) -> double {
    double slope = 0.0;
    for (Eigen::Index k = 0; k < k_users; ++k) {
      if (pd.lin_coeff[k] >= 0.0) continue;
      const double denom = 2.0 * pd.quad_coeff[k] + 2.0 * nu * pd.budget_coeff[k];
      const double interior = -pd.lin_coeff[k] / denom;
      if (interior >= pd.p_max[k]) continue;  // capped entry, locally flat
      const double dp = pd.lin_coeff[k] * 2.0 * pd.budget_coeff[k] / (denom * denom);
      slope += pd.budget_coeff[k] * 2.0 * interior * dp;
    }
    return slope;
  };

  double hi = 1.0;
  if (pd.budget > 0.0) {
    hi = std::max(1e-12, nu_upper_bound(pd, RealVec::Zero(k_users)));
  }
  while (g(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e18) {
      throw InfeasibleError("solve_power: budget unreachable");
    }
  }
  const double scale = std::max(pd.budget, 1e-30);
  const double nu = find_root_monotone(g, 0.0, hi, tol * scale, dg);
  p = clipped_vertex(pd, nu);
  return p.array().square();
}

}  // namespace fdisac
