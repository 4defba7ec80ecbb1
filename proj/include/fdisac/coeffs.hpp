#pragma once

#include "fdisac/types.hpp"

namespace fdisac {

/// Coefficients of the phase-shift subproblem. The surrogate objective and
/// the radar constraint are quartic in phi; both decompose into an exact
/// quadratic (multi-user + self-interference + noise) part plus a target-echo
/// product  rx_gain(psi1) * tx_gain(phi)  that is rank-factorized here:
///
///   rx_gain_user(psi1, k) = |u_k^H g_r + echo_rx_lin_k^H psi1|^2
///   tx_gain(phi) = tx_const + 2 Re{tx_cross^T phi} + phi^H tx_gram^T phi
///
/// with the splitting copy psi1 standing in for phi on the receive side.
/// Everything here depends only on (W, q, u, beta, omega), so one build per
/// outer iteration serves every inner phase update.
struct P2CoeffSet {
  // objective: phi^H obj_quad phi - 2 Re{obj_lin^H phi} + obj_const + echo
  Mat obj_quad;
  Vec obj_lin;
  double obj_const = 0.0;
  // constraint positive part, same shape
  Mat cons_quad;
  Vec cons_lin;
  double cons_const = 0.0;

  // echo receive-side factors
  std::vector<double> echo_weight;  // omega_k |beta_k|^2 sigma_t^2
  std::vector<cxd> echo_rx_const;   // u_k^H g_r
  std::vector<Vec> echo_rx_lin;     // diag(g_rt^*) G_r u_k
  double cons_echo_weight = 0.0;    // sigma_t^2 / Gamma_r
  cxd cons_rx_const{0.0, 0.0};      // u_0^H g_r
  Vec cons_rx_lin;                  // diag(g_rt^*) G_r u_0

  // echo transmit-side factors, B = diag(g_rt) G_t W
  double tx_const = 0.0;  // ||W^H g_t||^2
  Vec tx_cross;           // B W^H g_t
  Mat tx_gram;            // B B^H, Hermitian PSD

  // aggregates reused by the split subproblem builders
  double rx_weight_sum = 0.0;  // sum_k w_k |u_k^H g_r|^2
  Vec rx_cross_sum;            // sum_k w_k (u_k^H g_r) echo_rx_lin_k
  Mat rx_gram_sum;             // sum_k w_k echo_rx_lin_k echo_rx_lin_k^H
  double cons_rx_weight = 0.0; // c_r |u_0^H g_r|^2
  Vec cons_rx_cross;           // c_r (u_0^H g_r) cons_rx_lin
  Mat cons_rx_gram;            // c_r cons_rx_lin cons_rx_lin^H

  int m() const { return static_cast<int>(obj_quad.rows()); }
  double rx_gain_user(const Vec& psi1, int k) const;
  double rx_gain_radar(const Vec& psi1) const;
  double tx_gain(const Vec& phi) const;
};

P2CoeffSet build_p2_coeffs(const SystemParams& sys, const ChannelSet& ch,
                           const DesignVariables& dv, const AuxState& aux);

/// Negated surrogate sum rate as a function of phi (radar side tied to phi).
double eval_p2_objective(const P2CoeffSet& c, const Vec& phi);
/// Radar constraint value; <= 0 iff the radar SINR meets its threshold.
double eval_p2_constraint(const P2CoeffSet& c, const Vec& phi);

/// Split forms with an independent receive-side copy psi1.
double eval_p3_objective(const P2CoeffSet& c, const Vec& phi, const Vec& psi1);
double eval_p3_constraint(const P2CoeffSet& c, const Vec& phi, const Vec& psi1);

/// Dense aggregate blocks of the quartic forms (vec is column-major, so
/// vec(psi phi^T) = phi (x) psi). Quadratic in size and cubic-in-M to touch;
/// intended for small-M verification, not the solver path.
struct P2DenseBlocks {
  Mat t1_quad;      // merged quadratic of the objective
  Mat t1_bilinear;  // psi^H . phi coupling (T12-style)
  Mat t1_conj;      // psi^H . phi^* coupling (T15-style)
  Mat t1_cubic;     // vec(psi phi^T)^H . phi (T167-style), M^2 x M
  Mat t1_quartic;   // vec^H . vec (T18-style), M^2 x M^2
  Vec t1_lin;
  double t1_const = 0.0;
  Mat t0_quad;      // positive constraint quadratic
  Mat t0_neg_quad;  // merged negative echo quadratic (T00-style)
  Mat t0_bilinear;
  Mat t0_conj;
  Mat t0_cubic;
  Mat t0_quartic;
  Vec t0_lin;
  double t0_const = 0.0;
};

P2DenseBlocks materialize_p2_blocks(const P2CoeffSet& c);

/// Quadratic model of the phase update at fixed psi1, with the concave part
/// of the constraint linearized at phi_anchor (touching, conservative).
struct P5CoeffSet {
  Mat quad;  // positive definite once the proximal term is added
  Vec lin;
  double cst = 0.0;
  Mat cons_quad;        // shared positive part (PSD)
  Vec cons_lin;         // linearized
  double cons_cst = 0.0;
  Vec cons_lin_exact;
  double cons_cst_exact = 0.0;
  Mat cons_curv;        // subtracted echo curvature (PSD)

  double objective(const Vec& phi) const;
  double constraint_lin(const Vec& phi) const;
  double constraint_exact(const Vec& phi) const;
};

P5CoeffSet build_p5_coeffs(const P2CoeffSet& c, const Vec& psi1,
                           const Vec& phi_anchor);

/// Quadratic model of the splitting-copy update at fixed phi; the constraint
/// is concave in psi1 and becomes affine after linearization.
struct P7CoeffSet {
  Mat quad;
  Vec lin;
  double cst = 0.0;
  Vec cons_lin;  // affine constraint: -2 Re{cons_lin^H psi} + cons_cst <= 0
  double cons_cst = 0.0;
  Vec cons_lin_exact;
  double cons_cst_exact = 0.0;
  Mat cons_curv;

  double objective(const Vec& psi) const;
  double constraint_lin(const Vec& psi) const;
  double constraint_exact(const Vec& psi) const;
};

P7CoeffSet build_p7_coeffs(const P2CoeffSet& c, const Vec& phi,
                           const Vec& psi1_anchor);

/// Beamformer subproblem over w = vec(W): minimize w^H D1 w - c3 subject to
/// the radar constraint in DC form w^H D2 w - w^H D3 w + c4 <= 0 and the
/// power ball. reanchor() refreshes the linearization of the concave part.
struct WProblemData {
  Mat rate_quad;    // D1, PSD
  double rate_const = 0.0;
  Mat cons_quad;    // D2, PSD
  Mat cons_curv;    // D3, PSD
  double cons_const = 0.0;
  Vec cons_lin;     // D3 w_anchor
  double cons_lin_const = 0.0;

  double objective(const Vec& w) const;
  double constraint_exact(const Vec& w) const;
  double constraint_lin(const Vec& w) const;
  void reanchor(const Vec& w_anchor);
};

WProblemData build_w_problem(const SystemParams& sys, const ChannelSet& ch,
                             const DesignVariables& dv, const AuxState& aux,
                             const Vec& w_anchor);

/// Power subproblem in p_k = sqrt(q_k):
///   minimize sum a_k p_k^2 + sum b_k p_k - obj_const
///   s.t.     sum d_k p_k^2 <= budget, 0 <= p_k <= p_max_k.
struct PowerProblemData {
  RealVec quad_coeff;    // a_k
  RealVec lin_coeff;     // b_k
  RealVec budget_coeff;  // d_k
  double obj_const = 0.0;
  double budget = 0.0;
  RealVec p_max;

  double objective_p(const RealVec& p) const;
  double objective_q(const RealVec& q) const;
  double budget_used(const RealVec& p) const;
};

PowerProblemData build_power_problem(const SystemParams& sys,
                                     const ChannelSet& ch,
                                     const DesignVariables& dv,
                                     const AuxState& aux);

/// Receive filter subproblems. The per-user quadratic is mse_weight[k] times
/// a shared PD covariance; a zero weight marks a degenerate (zero-power)
/// user whose filter carries no objective and is left unchanged by updates.
struct FilterProblemData {
  Mat rx_covariance;               // all-signal covariance at the RX array, PD
  std::vector<double> mse_weight;  // omega_k |beta_k|^2
  std::vector<Vec> mse_target;     // omega_k beta_k^* sqrt(q_k) h_k
  double mse_const = 0.0;
  Mat radar_quad;  // E1: interference + noise covariance, PD
  Mat radar_gain;  // E2: scaled echo covariance, PSD rank <= 1

  Mat mse_quad(int k) const;  // F_k
};

FilterProblemData build_filter_problems(const SystemParams& sys,
                                        const ChannelSet& ch,
                                        const DesignVariables& dv,
                                        const AuxState& aux);

}  // namespace fdisac
