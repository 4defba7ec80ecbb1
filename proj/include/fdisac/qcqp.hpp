#pragma once

#include <functional>

#include "fdisac/types.hpp"

namespace fdisac {

/// min  x^H Q x - 2 Re{q^H x} + q_scalar
/// s.t. x^H Qbar x - 2 Re{qbar^H x} + qbar_scalar <= 0
/// with Q positive definite and Qbar positive semidefinite (Qbar == 0 gives
/// an affine constraint).
struct QcqpProblem {
  Mat q_matrix;         // Q
  Vec q_vector;         // q
  double q_scalar = 0.0;
  Mat cons_matrix;      // Qbar
  Vec cons_vector;      // qbar
  double cons_scalar = 0.0;

  double objective(const Vec& x) const;
  double constraint(const Vec& x) const;
};

struct QcqpSolution {
  Vec x;
  double multiplier = 0.0;        // KKT multiplier of the constraint
  bool constraint_active = false;
};

/// Exact KKT solution. Unconstrained minimizer if it is feasible; otherwise
/// the constraint is active and the multiplier is the unique positive root of
/// the (monotone, non-increasing) constraint value along the regularized
/// path x(s) = (s Qbar + Q)^-1 (s qbar + q).
///
/// Throws InfeasibleError when no multiplier in [0, 1e12] reaches the
/// constraint set, and std::invalid_argument when Q is not positive definite.
QcqpSolution solve_qcqp(const QcqpProblem& p, double tol = 1e-10);

/// min x^H D x - 2 Re{d^H x}  s.t.  ||x||^2 <= radius_sq, D positive definite.
/// Always feasible (the origin is interior).
Vec solve_ball_qp(const Mat& d_matrix, const Vec& d_vector, double radius_sq,
                  double tol = 1e-10);

/// Safeguarded Newton-bisection root of a continuous monotone function with a
/// sign change on [lo, hi]. A Newton step is taken only when it stays inside
/// the current bracket and halves |g|; otherwise the step bisects. The
/// optional derivative enables the Newton step; without it the search is pure
/// bisection. Stops when |g| <= tol or the bracket collapses.
double find_root_monotone(const std::function<double(double)>& g, double lo,
                          double hi, double tol,
                          const std::function<double(double)>& dg = nullptr);

}  // namespace fdisac
