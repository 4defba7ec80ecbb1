#include "fdisac/ris_pdd.hpp"

#include <cmath>

#include "fdisac/linalg.hpp"
#include "fdisac/qcqp.hpp"

namespace fdisac {

double pdd_augmented_lagrangian(const P2CoeffSet& c, const PddState& s) {
  const Vec d1 = s.phi - s.psi1;
  const Vec d2 = s.phi - s.psi2;
  return eval_p3_objective(c, s.phi, s.psi1) +
         d1.squaredNorm() / (2.0 * s.rho) + std::real(s.lambda1.dot(d1)) +
         d2.squaredNorm() / (2.0 * s.rho) + std::real(s.lambda2.dot(d2));
}

Vec update_phi(const P5CoeffSet& p5, const PddState& s) {
  const Eigen::Index m = s.phi.size();
  QcqpProblem qp;
  qp.q_matrix = p5.quad + Mat::Identity(m, m) / s.rho;
  qp.q_vector = p5.lin + (s.psi1 + s.psi2) / (2.0 * s.rho) -
                (s.lambda1 + s.lambda2) / 2.0;
  qp.q_scalar = p5.cst +
                (s.psi1.squaredNorm() + s.psi2.squaredNorm()) / (2.0 * s.rho) -
                std::real(s.lambda1.dot(s.psi1) + s.lambda2.dot(s.psi2));
  qp.cons_matrix = p5.cons_quad;
  qp.cons_vector = p5.cons_lin;
  qp.cons_scalar = p5.cons_cst;
  return solve_qcqp(qp).x;
}

Vec update_psi1(const P7CoeffSet& p7, const PddState& s) {
  const Eigen::Index m = s.phi.size();
  QcqpProblem qp;
  qp.q_matrix = p7.quad + Mat::Identity(m, m) / (2.0 * s.rho);
  qp.q_vector = p7.lin + s.phi / (2.0 * s.rho) + s.lambda1 / 2.0;
  qp.q_scalar = p7.cst + s.phi.squaredNorm() / (2.0 * s.rho) +
                std::real(s.lambda1.dot(s.phi));
  qp.cons_matrix = Mat();  // affine constraint
  qp.cons_vector = p7.cons_lin;
  qp.cons_scalar = p7.cons_cst;
  return solve_qcqp(qp).x;
}

Vec update_psi2(const Vec& phi, const Vec& lambda2, double rho) {
  return unit_modulus(phi + rho * lambda2);
}

std::pair<double, double> pdd_outer_step(PddState& s, const PddConfig& cfg) {
  const double res1 = (s.phi - s.psi1).cwiseAbs().maxCoeff();
  const double res2 = (s.phi - s.psi2).cwiseAbs().maxCoeff();
  if (std::max(res1, res2) <= s.eta) {
    s.lambda1 += (s.phi - s.psi1) / s.rho;
    s.lambda2 += (s.phi - s.psi2) / s.rho;
    s.eta *= cfg.eta_decay;
  } else {
    s.rho *= cfg.penalty_shrink;
  }
  return {res1, res2};
}

PddResult pdd_optimize_phase(const P2CoeffSet& c, const Vec& phi_start,
                             const PddConfig& cfg) {
  PddResult out;
  PddState s;
  s.phi = phi_start;
  s.psi1 = phi_start;
  s.psi2 = phi_start;
  s.lambda1 = Vec::Zero(phi_start.size());
  s.lambda2 = Vec::Zero(phi_start.size());
  s.rho = cfg.rho0;
  s.eta = cfg.eta0;

  const double al_tol = 1e-9;
  for (int outer = 0; outer < cfg.outer_max_iters; ++outer) {
    double al_prev = pdd_augmented_lagrangian(c, s);
    for (int inner = 0; inner < cfg.inner_max_iters; ++inner) {
      // anchors refresh at the current feasible iterate every pass
      try {
        const P5CoeffSet p5 = build_p5_coeffs(c, s.psi1, s.phi);
        const Vec phi_new = update_phi(p5, s);
        PddState trial = s;
        trial.phi = phi_new;
        const double al_new = pdd_augmented_lagrangian(c, trial);
        out.al_violation = std::max(
            out.al_violation, (al_new - al_prev) / std::max(1.0, std::abs(al_prev)));
        if (al_new <= al_prev + al_tol * std::max(1.0, std::abs(al_prev))) {
          s.phi = phi_new;
        }
      } catch (const InfeasibleError&) {
        ++out.solver_failures;  // keep current phi, re-anchor next pass
      }

      try {
        const P7CoeffSet p7 = build_p7_coeffs(c, s.phi, s.psi1);
        const Vec psi1_new = update_psi1(p7, s);
        PddState trial = s;
        trial.psi1 = psi1_new;
        const double al_before = pdd_augmented_lagrangian(c, s);
        const double al_new = pdd_augmented_lagrangian(c, trial);
        out.al_violation = std::max(
            out.al_violation,
            (al_new - al_before) / std::max(1.0, std::abs(al_before)));
        if (al_new <= al_before + al_tol * std::max(1.0, std::abs(al_before))) {
          s.psi1 = psi1_new;
        }
      } catch (const InfeasibleError&) {
        ++out.solver_failures;
      }

      s.psi2 = update_psi2(s.phi, s.lambda2, s.rho);

      const double al_now = pdd_augmented_lagrangian(c, s);
      const bool settled =
          std::abs(al_prev - al_now) <=
          cfg.inner_tol * std::max(1.0, std::abs(al_prev));
      al_prev = al_now;
      if (settled) break;
    }

    const auto [res1, res2] = pdd_outer_step(s, cfg);
    out.trace.push_back({outer, res1, res2, al_prev, s.rho});
    out.outer_iters = outer + 1;
    if ((s.phi - s.psi1).norm() <= cfg.outer_tol &&
        (s.phi - s.psi2).norm() <= cfg.outer_tol) {
      out.converged = true;
      break;
    }
  }

  // Project onto the unit-modulus set and accept only a feasible
  // non-worsening point.
  const Vec candidate = unit_modulus(s.phi);
  const double start_obj = eval_p2_objective(c, phi_start);
  const double cand_obj = eval_p2_objective(c, candidate);
  const double cons_scale = std::max(1.0, std::abs(c.cons_const));
  if (eval_p2_constraint(c, candidate) <= 1e-8 * cons_scale &&
      cand_obj <= start_obj + 1e-10 * std::max(1.0, std::abs(start_obj))) {
    out.phi = candidate;
    out.improved = cand_obj < start_obj;
  } else {
    out.phi = phi_start;
  }
  out.state = s;
  return out;
}

}  // namespace fdisac
