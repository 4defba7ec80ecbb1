#include "fdisac/filters.hpp"

#include <cmath>

#include "fdisac/metrics.hpp"
#include "fdisac/scenario.hpp"

namespace fdisac {

cxd update_beta(const SystemParams& sys, const ChannelSet& ch,
                const DesignVariables& dv, int k) {
  const Vec& u = dv.user_filters.at(static_cast<std::size_t>(k));
  const cxd gain = std::sqrt(dv.user_power[k]) *
                   u.dot(effective_user_channel(ch, dv.phase, k));
  return gain / filtered_total_power(sys, ch, dv, k);
}

double update_omega(const SystemParams& sys, const ChannelSet& ch,
                    const DesignVariables& dv, int k) {
  return 1.0 + sinr_user(sys, ch, dv, k);
}

std::vector<Vec> update_user_filters(const FilterProblemData& fp,
                                     const std::vector<Vec>& current) {
  if (current.size() != fp.mse_weight.size()) {
    throw std::invalid_argument("update_user_filters: filter count mismatch");
  }
  std::vector<Vec> out = current;
  Eigen::LLT<Mat> cov(fp.rx_covariance);
  if (cov.info() != Eigen::Success) {
    throw std::runtime_error("update_user_filters: covariance not positive definite");
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (fp.mse_weight[k] <= 0.0 || fp.mse_target[k].squaredNorm() == 0.0) {
      continue;  // degenerate user, objective constant in u_k
    }
    // F_k = weight * cov, so F_k^-1 target = cov^-1 target / weight.
    out[k] = cov.solve(fp.mse_target[k]) / fp.mse_weight[k];
  }
  return out;
}

Vec radar_filter_step(const FilterProblemData& fp, const Vec& u) {
  Eigen::LLT<Mat> llt(fp.radar_quad);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("radar_filter_step: E1 not positive definite");
  }
  return llt.solve(fp.radar_gain.adjoint() * u);
}

Vec update_radar_filter(const FilterProblemData& fp, const Vec& u0_init,
                        double tol, int max_iters) {
  if (u0_init.squaredNorm() == 0.0) {
    throw std::invalid_argument("update_radar_filter: zero initial filter");
  }
  Eigen::LLT<Mat> llt(fp.radar_quad);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("update_radar_filter: E1 not positive definite");
  }
  Vec u = u0_init.normalized();
  for (int it = 0; it < max_iters; ++it) {
    Vec next = llt.solve(fp.radar_gain.adjoint() * u);
    const double scale = next.norm();
    if (scale == 0.0) {
      return u;  // echo is orthogonal to everything reachable; keep direction
    }
    next /= scale;
    // compare directions up to phase
    const double change =
        std::min((next - u).norm(), (next + u).norm()) / std::max(1.0, u.norm());
    u = next;
    if (change < tol) break;
  }
  return u;
}

}  // namespace fdisac
