#include "fdisac/metrics.hpp"

#include <cmath>

#include "fdisac/scenario.hpp"

namespace fdisac {

namespace {

void check_filter(const Vec& u, const char* who) {
  if (u.size() == 0 || u.squaredNorm() == 0.0) {
    throw std::invalid_argument(std::string(who) + ": zero receive filter");
  }
}

struct FilterTerms {
  double self_interference;  // ||u^H G W||^2
  double echo;               // sigma_t^2 ||u^H H W||^2
  double noise;              // sigma_r^2 ||u||^2
};

FilterTerms common_terms(const SystemParams& sys, const ChannelSet& ch,
                         const DesignVariables& dv, const Vec& u) {
  const Mat g = effective_si_channel(ch, dv.phase);
  const Mat h = effective_radar_channel(ch, dv.phase, dv.phase);
  FilterTerms t;
  t.self_interference = (u.adjoint() * g * dv.beamformer).squaredNorm();
  t.echo = sys.rcs_variance * (u.adjoint() * h * dv.beamformer).squaredNorm();
  t.noise = sys.noise_power * u.squaredNorm();
  return t;
}

}  // namespace

double sinr_user(const SystemParams& sys, const ChannelSet& ch,
                 const DesignVariables& dv, int k) {
  const Vec& u = dv.user_filters.at(static_cast<std::size_t>(k));
  check_filter(u, "sinr_user");
  const FilterTerms t = common_terms(sys, ch, dv, u);
  double signal = 0.0, interference = 0.0;
  for (int i = 0; i < ch.n_users(); ++i) {
    const double p = dv.user_power[i] *
                     std::norm(u.dot(effective_user_channel(ch, dv.phase, i)));
    if (i == k) {
      signal = p;
    } else {
      interference += p;
    }
  }
  return signal / (interference + t.echo + t.self_interference + t.noise);
}

double sinr_radar(const SystemParams& sys, const ChannelSet& ch,
                  const DesignVariables& dv) {
  const Vec& u = dv.radar_filter;
  check_filter(u, "sinr_radar");
  const FilterTerms t = common_terms(sys, ch, dv, u);
  double interference = 0.0;
  for (int i = 0; i < ch.n_users(); ++i) {
    interference += dv.user_power[i] *
                    std::norm(u.dot(effective_user_channel(ch, dv.phase, i)));
  }
  return t.echo / (interference + t.self_interference + t.noise);
}

double sum_rate(const SystemParams& sys, const ChannelSet& ch,
                const DesignVariables& dv) {
  double total = 0.0;
  for (int k = 0; k < ch.n_users(); ++k) {
    total += std::log1p(sinr_user(sys, ch, dv, k));
  }
  return total;
}

double filtered_total_power(const SystemParams& sys, const ChannelSet& ch,
                            const DesignVariables& dv, int k) {
  const Vec& u = dv.user_filters.at(static_cast<std::size_t>(k));
  const FilterTerms t = common_terms(sys, ch, dv, u);
  double users = 0.0;
  for (int i = 0; i < ch.n_users(); ++i) {
    users += dv.user_power[i] *
             std::norm(u.dot(effective_user_channel(ch, dv.phase, i)));
  }
  return users + t.echo + t.self_interference + t.noise;
}

double surrogate_rate(const SystemParams& sys, const ChannelSet& ch,
                      const DesignVariables& dv, const AuxState& aux, int k) {
  const auto ku = static_cast<std::size_t>(k);
  const cxd beta = aux.beta.at(ku);
  const double omega = aux.omega.at(ku);
  if (omega <= 0.0) {
    throw std::invalid_argument("surrogate_rate: omega must be positive");
  }
  const Vec& u = dv.user_filters.at(ku);
  const cxd gain = std::sqrt(dv.user_power[k]) *
                   u.dot(effective_user_channel(ch, dv.phase, k));
  const double mse = 1.0 - 2.0 * std::real(std::conj(beta) * gain) +
                     std::norm(beta) * filtered_total_power(sys, ch, dv, k);
  return std::log(omega) - omega * mse + 1.0;
}

double surrogate_sum_rate(const SystemParams& sys, const ChannelSet& ch,
                          const DesignVariables& dv, const AuxState& aux) {
  double total = 0.0;
  for (int k = 0; k < ch.n_users(); ++k) {
    total += surrogate_rate(sys, ch, dv, aux, k);
  }
  return total;
}

}  // namespace fdisac
