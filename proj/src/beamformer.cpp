#include "fdisac/beamformer.hpp"

#include <cmath>

#include "fdisac/linalg.hpp"
#include "fdisac/qcqp.hpp"

namespace fdisac {

Vec update_f(const WProblemData& wp, const Vec& w, const Vec& tau,
             double upsilon) {
  const Eigen::Index n = w.size();
  QcqpProblem qp;
  qp.q_matrix = Mat::Identity(n, n);
  qp.q_vector = tau / upsilon + w;
  qp.cons_matrix = wp.cons_quad;
  qp.cons_vector = wp.cons_lin;
  qp.cons_scalar = wp.cons_lin_const;
  return solve_qcqp(qp).x;
}

Vec update_w(const WProblemData& wp, const Vec& f, const Vec& tau,
             double upsilon, double p_bs) {
  const Eigen::Index n = f.size();
  const Mat d_bar = wp.rate_quad + 0.5 * upsilon * Mat::Identity(n, n);
  const Vec rhs = 0.5 * (upsilon * f - tau);
  return solve_ball_qp(d_bar, rhs, p_bs);
}

Vec update_tau(const Vec& tau, const Vec& w, const Vec& f, double upsilon) {
  return tau + upsilon * (w - f);
}

namespace {

double top_eigenvalue(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(a, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

// Divides the objective and constraint through by their top curvature so the
// consensus penalty acts at unit scale. Pure rescaling of both forms; the
// minimizer is unchanged.
WProblemData preconditioned(const WProblemData& wp, double* obj_scale) {
  WProblemData out = wp;
  const double s_obj = top_eigenvalue(wp.rate_quad);
  *obj_scale = 1.0;
  if (s_obj > 0.0) {
    out.rate_quad /= s_obj;
    out.rate_const /= s_obj;
    *obj_scale = s_obj;
  }
  const double s_cons = top_eigenvalue(wp.cons_quad);
  if (s_cons > 0.0) {
    out.cons_quad /= s_cons;
    out.cons_curv /= s_cons;
    out.cons_const /= s_cons;
    out.cons_lin /= s_cons;
    out.cons_lin_const /= s_cons;
  }
  return out;
}

}  // namespace

AdmmResult admm_solve(const WProblemData& wp_in, const Vec& w_init,
                      const AdmmConfig& cfg, double p_bs) {
  double obj_scale = 1.0;
  const WProblemData wp =
      cfg.precondition ? preconditioned(wp_in, &obj_scale) : wp_in;

  AdmmResult out;
  Vec w = w_init;
  Vec f = w_init;
  Vec tau = Vec::Zero(w_init.size());
  const double res_scale = std::max(1.0, std::sqrt(p_bs));

  for (int it = 0; it < cfg.max_iters; ++it) {
    const Vec f_next = update_f(wp, w, tau, cfg.upsilon);
    const Vec w_next = update_w(wp, f_next, tau, cfg.upsilon, p_bs);
    tau = update_tau(tau, w_next, f_next, cfg.upsilon);

    const double dual_res = (f_next - f).norm() / res_scale;
    const double primal_res = (w_next - f_next).norm() / res_scale;
    f = f_next;
    w = w_next;
    out.trace.push_back({it, primal_res, dual_res, wp_in.objective(w)});
    out.iters = it + 1;
    if (primal_res <= cfg.tol_primal && dual_res <= cfg.tol_dual) {
      out.converged = true;
      break;
    }
  }

  // w holds the power ball exactly; prefer it when it also meets the
  // linearized radar constraint, otherwise fall back to the feasibility copy
  // pulled into the ball.
  const double cons_scale = std::max(1.0, std::abs(wp.cons_lin_const));
  if (wp.constraint_lin(w) <= 1e-8 * cons_scale) {
    out.w = w;
  } else {
    out.w = f * std::min(1.0, std::sqrt(p_bs) / f.norm());
  }
  return out;
}

BeamformerResult optimize_beamformer(const SystemParams& sys,
                                     const ChannelSet& ch,
                                     const DesignVariables& dv,
                                     const AuxState& aux,
                                     const AdmmConfig& cfg) {
  Vec w = vectorize(dv.beamformer);
  WProblemData wp = build_w_problem(sys, ch, dv, aux, w);

  BeamformerResult out;
  double obj = wp.objective(w);
  const int mm_max_iters = 30;
  const double mm_tol = 1e-6;
  std::vector<AdmmTraceRow> last_trace;
  for (int it = 0; it < mm_max_iters; ++it) {
    wp.reanchor(w);
    const AdmmResult step = admm_solve(wp, w, cfg, sys.bs_power);
    const double obj_new = wp.objective(step.w);
    out.mm_iters = it + 1;
    if (!(obj_new <= obj)) break;  // inexact inner solve stopped improving
    w = step.w;
    last_trace = step.trace;
    if (obj - obj_new <= mm_tol * std::max(1.0, std::abs(obj))) {
      obj = obj_new;
      break;
    }
    obj = obj_new;
  }
  out.w = unvectorize(w, ch.n_tx(), ch.n_tx());
  out.objective = obj;
  out.last_trace = std::move(last_trace);
  return out;
}

}  // namespace fdisac
