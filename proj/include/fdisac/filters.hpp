#pragma once

#include "fdisac/coeffs.hpp"
#include "fdisac/types.hpp"

namespace fdisac {

/// MMSE scaling of the receive estimate for user k.
cxd update_beta(const SystemParams& sys, const ChannelSet& ch,
                const DesignVariables& dv, int k);

/// 1 + SINR_k; the rate weight that makes the surrogate tight.
double update_omega(const SystemParams& sys, const ChannelSet& ch,
                    const DesignVariables& dv, int k);

/// Per-user MMSE filters F_k^-1 h_k. A user with zero mse_weight has a
/// constant objective; its current filter is kept.
std::vector<Vec> update_user_filters(const FilterProblemData& fp,
                                     const std::vector<Vec>& current);

/// One surrogate step of the radar-margin descent: E1^-1 (E2 u), without
/// normalization. Exposed for the per-step descent tests.
Vec radar_filter_step(const FilterProblemData& fp, const Vec& u);

/// Fixed-point iteration on the radar feasibility margin
/// u^H E1 u - u^H E2 u, normalized each step (the radar SINR is
/// scale-invariant in u_0). Stops on relative direction change below tol.
Vec update_radar_filter(const FilterProblemData& fp, const Vec& u0_init,
                        double tol = 1e-8, int max_iters = 100);

}  // namespace fdisac
