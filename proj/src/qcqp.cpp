#include "fdisac/qcqp.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace fdisac {

double QcqpProblem::objective(const Vec& x) const {
  return std::real((x.adjoint() * q_matrix * x).value()) -
         2.0 * std::real(q_vector.dot(x)) + q_scalar;
}

double QcqpProblem::constraint(const Vec& x) const {
  double quad = 0.0;
  if (cons_matrix.size() > 0) {
    quad = std::real((x.adjoint() * cons_matrix * x).value());
  }
  return quad - 2.0 * std::real(cons_vector.dot(x)) + cons_scalar;
}

double find_root_monotone(const std::function<double(double)>& g, double lo,
                          double hi, double tol,
                          const std::function<double(double)>& dg) {
  if (!(lo <= hi)) throw std::invalid_argument("find_root_monotone: empty bracket");
  double g_lo = g(lo);
  if (std::abs(g_lo) <= tol) return lo;
  double g_hi = g(hi);
  if (std::abs(g_hi) <= tol) return hi;
  if (g_lo * g_hi > 0.0) {
    std::ostringstream oss;
    oss << "find_root_monotone: no sign change on bracket, g(" << lo
        << ") = " << g_lo << ", g(" << hi << ") = " << g_hi;
    throw std::runtime_error(oss.str());
  }

  double x = 0.5 * (lo + hi);
  double gx = g(x);
  for (int it = 0; it < 200; ++it) {
    if (std::abs(gx) <= tol) return x;
    // keep the sign change inside [lo, hi]
    if (gx * g_lo > 0.0) {
      lo = x;
      g_lo = gx;
    } else {
      hi = x;
      g_hi = gx;
    }
    double next = std::numeric_limits<double>::quiet_NaN();
    if (dg) {
      const double slope = dg(x);
      if (slope != 0.0 && std::isfinite(slope)) {
        const double candidate = x - gx / slope;
        if (candidate > lo && candidate < hi) {
          const double g_candidate = g(candidate);
          if (std::abs(g_candidate) <= 0.5 * std::abs(gx)) {
            next = candidate;
            x = next;
            gx = g_candidate;
            continue;
          }
        }
      }
    }
    x = 0.5 * (lo + hi);
    gx = g(x);
    if (hi - lo <= 1e-16 * std::max(1.0, std::abs(hi))) return x;
  }
  return x;
}

namespace {

// Scale used to normalize constraint tolerances.
double constraint_scale(const QcqpProblem& p) {
  double s = std::abs(p.cons_scalar) + p.cons_vector.norm();
  return std::max(1.0, s);
}

}  // namespace

QcqpSolution solve_qcqp(const QcqpProblem& p, double tol) {
  const Eigen::Index n = p.q_vector.size();
  if (p.q_matrix.rows() != n || p.q_matrix.cols() != n) {
    throw std::invalid_argument("solve_qcqp: Q dimension mismatch");
  }
  Eigen::LLT<Mat> llt(p.q_matrix);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("solve_qcqp: Q is not positive definite");
  }

  const bool has_quad_cons = p.cons_matrix.size() > 0 &&
                             p.cons_matrix.cwiseAbs().maxCoeff() > 0.0;
  const double scale = constraint_scale(p);

  QcqpSolution sol;
  sol.x = llt.solve(p.q_vector);
  if (p.constraint(sol.x) <= tol * scale) {
    return sol;  // unconstrained minimizer already feasible
  }

  // Constraint is active. The constraint value along the regularized path is
  // non-increasing in the multiplier, so bracket by doubling and root-find.
  auto x_of = [&](double s) -> Vec {
    if (!has_quad_cons) {
      return llt.solve(p.q_vector + s * p.cons_vector);
    }
    Mat shifted = p.q_matrix + s * p.cons_matrix;
    Eigen::LLT<Mat> f(shifted);
    if (f.info() != Eigen::Success) {
      throw std::runtime_error("solve_qcqp: shifted system lost definiteness");
    }
    return f.solve(p.q_vector + s * p.cons_vector);
  };
  auto g = [&](double s) { return p.constraint(x_of(s)); };
  auto dg = [&](double s) -> double {
    const Vec x = x_of(s);
    Vec r = p.cons_vector;
    if (has_quad_cons) r -= p.cons_matrix * x;
    if (!has_quad_cons) {
      return -2.0 * std::real(r.dot(llt.solve(r)));
    }
    Mat shifted = p.q_matrix + s * p.cons_matrix;
    return -2.0 * std::real(r.dot(Eigen::LLT<Mat>(shifted).solve(r)));
  };

  double hi = 1.0;
  while (g(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e12) {
      throw InfeasibleError("solve_qcqp: constraint unreachable (multiplier > 1e12)");
    }
  }
  const double s_star = find_root_monotone(g, 0.0, hi, tol * scale, dg);
  sol.x = x_of(s_star);
  sol.multiplier = s_star;
  sol.constraint_active = true;
  return sol;
}

Vec solve_ball_qp(const Mat& d_matrix, const Vec& d_vector, double radius_sq,
                  double tol) {
  if (radius_sq <= 0.0) {
    throw std::invalid_argument("solve_ball_qp: radius must be positive");
  }
  if (d_vector.squaredNorm() == 0.0) {
    return Vec::Zero(d_vector.size());
  }
  Eigen::LLT<Mat> llt(d_matrix);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("solve_ball_qp: D is not positive definite");
  }
  Vec x = llt.solve(d_vector);
  if (x.squaredNorm() <= radius_sq * (1.0 + tol)) return x;

  const Eigen::Index n = d_vector.size();
  auto x_of = [&](double kappa) -> Vec {
    Mat shifted = d_matrix + kappa * Mat::Identity(n, n);
    return Eigen::LLT<Mat>(shifted).solve(d_vector);
  };
  // normalized so tol acts on a unit-scale residual
  auto g = [&](double kappa) {
    return x_of(kappa).squaredNorm() / radius_sq - 1.0;
  };
  auto dg = [&](double kappa) -> double {
    Mat shifted = d_matrix + kappa * Mat::Identity(n, n);
    Eigen::LLT<Mat> f(shifted);
    const Vec xk = f.solve(d_vector);
    return -2.0 * std::real(xk.dot(f.solve(xk))) / radius_sq;
  };
  double hi = 1.0;
  while (g(hi) > 0.0) {
    hi *= 2.0;  // terminates: ||x(kappa)|| -> 0
    if (hi > 1e30) throw std::runtime_error("solve_ball_qp: bracketing failed");
  }
  const double kappa = find_root_monotone(g, 0.0, hi, tol, dg);
  return x_of(kappa);
}

}  // namespace fdisac
