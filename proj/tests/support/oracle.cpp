#include "oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace fdisac::oracle {

namespace {

double cons_value(const Mat& a, const Vec& b, double c, const Vec& x) {
  double quad = 0.0;
  if (a.size() > 0) quad = std::real((x.adjoint() * a * x).value());
  return quad - 2.0 * std::real(b.dot(x)) + c;
}

double top_eig(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(a, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

}  // namespace

Vec project_ellipsoid(const Mat& a, const Vec& b, double c, const Vec& y) {
  if (cons_value(a, b, c, y) <= 0.0) return y;
  const Eigen::Index n = y.size();
  const Mat id = Mat::Identity(n, n);
  auto x_of = [&](double mu) -> Vec {
    if (a.size() == 0) return y + mu * b;
    return (id + mu * a).ldlt().solve(y + mu * b);
  };
  auto g = [&](double mu) { return cons_value(a, b, c, x_of(mu)); };
  // plain bisection with doubling upper bound
  double lo = 0.0, hi = 1.0;
  int guard = 0;
  while (g(hi) > 0.0) {
    hi *= 2.0;
    if (++guard > 200) throw std::runtime_error("project_ellipsoid: no boundary crossing");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return x_of(hi);  // hi side is feasible
}

Vec pg_qcqp(const QcqpProblem& p, int iters, double step) {
  const Eigen::Index n = p.q_vector.size();
  double gamma = step;
  if (gamma <= 0.0) {
    gamma = 0.5 / std::max(top_eig(p.q_matrix), 1e-12);
  }
  Vec x = project_ellipsoid(p.cons_matrix, p.cons_vector, p.cons_scalar,
                            Vec::Zero(n));
  double fx = p.objective(x);
  for (int it = 0; it < iters; ++it) {
    const Vec grad = 2.0 * (p.q_matrix * x - p.q_vector);
    double t = gamma;
    Vec candidate;
    double fc = 0.0;
    bool moved = false;
    for (int back = 0; back < 60; ++back) {
      candidate = project_ellipsoid(p.cons_matrix, p.cons_vector,
                                    p.cons_scalar, x - t * grad);
      fc = p.objective(candidate);
      if (fc <= fx) {
        moved = true;
        break;
      }
      t *= 0.5;  // step halving
    }
    if (!moved) break;
    const double improvement = fx - fc;
    x = candidate;
    fx = fc;
    if (improvement <= 1e-14 * std::max(1.0, std::abs(fx)) && it > 50) break;
  }
  return x;
}

Vec pg_beamformer(const WProblemData& wp, double p_bs, const Vec& w_init,
                  int iters) {
  const double radius = std::sqrt(p_bs);
  auto project_ball = [&](const Vec& y) -> Vec {
    const double nrm = y.norm();
    return nrm <= radius ? y : Vec(y * (radius / nrm));
  };
  auto project_cons = [&](const Vec& y) -> Vec {
    return project_ellipsoid(wp.cons_quad, wp.cons_lin, wp.cons_lin_const, y);
  };
  // Dykstra alternating projection onto the intersection.
  auto project_both = [&](const Vec& y) -> Vec {
    Vec x = y;
    Vec inc_p = Vec::Zero(y.size());
    Vec inc_q = Vec::Zero(y.size());
    for (int it = 0; it < 80; ++it) {
      const Vec yp = project_cons(x + inc_p);
      inc_p = x + inc_p - yp;
      const Vec yq = project_ball(yp + inc_q);
      inc_q = yp + inc_q - yq;
      if ((x - yq).norm() <= 1e-13 * std::max(1.0, yq.norm())) {
        x = yq;
        break;
      }
      x = yq;
    }
    return x;
  };

  double gamma = 0.5 / std::max(top_eig(wp.rate_quad), 1e-12);
  Vec x = project_both(w_init);
  double fx = wp.objective(x);
  for (int it = 0; it < iters; ++it) {
    const Vec grad = 2.0 * (wp.rate_quad * x);
    double t = gamma;
    Vec candidate;
    double fc = 0.0;
    bool moved = false;
    for (int back = 0; back < 60; ++back) {
      candidate = project_both(x - t * grad);
      fc = wp.objective(candidate);
      if (fc <= fx) {
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
    const double improvement = fx - fc;
    x = candidate;
    fx = fc;
    if (improvement <= 1e-15 * std::max(1.0, std::abs(fx)) && it > 100) break;
  }
  return x;
}

RealVec grid_power(const PowerProblemData& pd, double step) {
  const Eigen::Index k = pd.quad_coeff.size();
  if (k > 3) throw std::invalid_argument("grid_power: K <= 3 only");

  const int points = 41;
  RealVec lo = RealVec::Zero(k);
  RealVec hi = pd.p_max;
  const double target = step * pd.p_max.maxCoeff();

  RealVec best;
  double best_obj = 0.0;
  bool found = false;
  for (int stage = 0; stage < 12; ++stage) {
    RealVec widths = (hi - lo) / (points - 1);
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    found = false;
    RealVec stage_best;
    while (true) {
      RealVec p(k);
      for (Eigen::Index d = 0; d < k; ++d) p[d] = lo[d] + widths[d] * idx[static_cast<std::size_t>(d)];
      if (pd.budget_used(p) <= pd.budget) {
        const double obj = pd.objective_p(p);
        if (!found || obj < best_obj) {
          best_obj = obj;
          stage_best = p;
          found = true;
        }
      }
      Eigen::Index d = 0;
      while (d < k) {
        if (++idx[static_cast<std::size_t>(d)] < points) break;
        idx[static_cast<std::size_t>(d)] = 0;
        ++d;
      }
      if (d == k) break;
    }
    if (!found) throw std::runtime_error("grid_power: no feasible grid point");
    best = stage_best;
    if (widths.maxCoeff() <= target) break;
    // shrink the box around the incumbent
    for (Eigen::Index d = 0; d < k; ++d) {
      const double w = widths[d] * 2.0;
      lo[d] = std::max(0.0, best[d] - w);
      hi[d] = std::min(pd.p_max[d], best[d] + w);
    }
  }
  return best.array().square();
}

RealVec finite_diff(const std::function<double(const RealVec&)>& f,
                    const RealVec& x, double h) {
  RealVec grad(x.size());
  RealVec xp = x, xm = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + h;
    xm[i] = x[i] - h;
    grad[i] = (f(xp) - f(xm)) / (2.0 * h);
    xp[i] = x[i];
    xm[i] = x[i];
  }
  return grad;
}

}  // namespace fdisac::oracle
