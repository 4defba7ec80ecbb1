#pragma once

#include <functional>

#include "fdisac/coeffs.hpp"
#include "fdisac/qcqp.hpp"
#include "fdisac/types.hpp"

// Brute-force reference solvers for the test suites. Deliberately slow and
// structurally independent of the closed-form solvers they check: projections
// use their own bisection loops, and nothing here calls into solve_qcqp,
// solve_ball_qp or solve_power.
namespace fdisac::oracle {

/// Projected gradient with backtracking for the single-constraint QCQP.
/// The projection onto {x : x^H A x - 2 Re{b^H x} + c <= 0} is computed per
/// step from its own KKT system, the 1-D multiplier found by plain bisection.
Vec pg_qcqp(const QcqpProblem& p, int iters = 20000, double step = 0.0);

/// Euclidean projection onto the constraint ellipsoid (oracle-local).
Vec project_ellipsoid(const Mat& a, const Vec& b, double c, const Vec& y);

/// Projected gradient for min w^H D1 w subject to both the linearized radar
/// constraint and the power ball, with a Dykstra projection onto the
/// intersection.
Vec pg_beamformer(const WProblemData& wp, double p_bs, const Vec& w_init,
                  int iters = 20000);

/// Exhaustive/refined grid search over [0, p_max]^K (K <= 3), constraint
/// filtered. Resolution refines below `step` times the largest box edge.
/// Throws std::runtime_error when no grid point is feasible.
RealVec grid_power(const PowerProblemData& pd, double step = 1e-3);

/// Central-difference gradient of a scalar function of a real vector.
RealVec finite_diff(const std::function<double(const RealVec&)>& f,
                    const RealVec& x, double h = 1e-6);

}  // namespace fdisac::oracle
