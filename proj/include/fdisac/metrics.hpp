#pragma once

#include "fdisac/types.hpp"

namespace fdisac {

/// Uplink SINR of user k at the given design point. Throws on a zero filter.
double sinr_user(const SystemParams& sys, const ChannelSet& ch,
                 const DesignVariables& dv, int k);

/// Radar output SINR. Throws on a zero filter.
double sinr_radar(const SystemParams& sys, const ChannelSet& ch,
                  const DesignVariables& dv);

/// sum_k log(1 + SINR_k), natural log.
double sum_rate(const SystemParams& sys, const ChannelSet& ch,
                const DesignVariables& dv);

/// Variational rate bound log(w_k) - w_k e_k + 1 with the mean-square error
/// e_k of the scaled receive estimate. Equals the true rate at the optimal
/// (beta_k, omega_k) and lower-bounds it elsewhere.
double surrogate_rate(const SystemParams& sys, const ChannelSet& ch,
                      const DesignVariables& dv, const AuxState& aux, int k);

double surrogate_sum_rate(const SystemParams& sys, const ChannelSet& ch,
                          const DesignVariables& dv, const AuxState& aux);

/// Total power arriving at filter u_k (all users, target echo, residual
/// self-interference, noise). Shared by the surrogate and the closed-form
/// auxiliary updates.
double filtered_total_power(const SystemParams& sys, const ChannelSet& ch,
                            const DesignVariables& dv, int k);

}  // namespace fdisac
