#pragma once

#include "fdisac/types.hpp"

namespace fdisac {

/// Uniform linear array response: entry i = exp(-j 2 pi (d/lambda) i sin(angle)).
Vec steering_vector_ula(int n, double spacing_ratio, double angle);

/// Planar RIS response: Kronecker product of the elevation and azimuth ULA
/// factors, with direction cosines g1 = sin(elev) cos(azim) / 2 and
/// g2 = cos(elev) / 2. Entry phases carry +j (departure convention).
Vec steering_vector_ris(int m1, int m2, double spacing_ratio, double elev,
                        double azim);

/// Draws target/user placement and every channel realization. Deterministic
/// in (cfg, seed); Rician links mix a steering-based LoS component with
/// unit-variance complex Gaussian scatter, Rayleigh links are pure scatter,
/// and every link is scaled by the square root of its path gain.
ChannelSet generate_channels(const ScenarioConfig& cfg, std::uint64_t seed);

/// h_{U,k} = h_bs_user[k] + G_r^H diag(phi) h_ris_user[k].
Vec effective_user_channel(const ChannelSet& ch, const Vec& phi, int k);

/// G = G_r^H diag(phi) G_t + H_s^H.
Mat effective_si_channel(const ChannelSet& ch, const Vec& phi);

/// Rank-one target round-trip response
///   (g_r + G_r^H diag(psi1) g_rt) (g_t^H + g_rt^T diag(phi) G_t);
/// psi1 == phi gives the physical channel, a distinct psi1 the split form
/// used by the phase solver.
Mat effective_radar_channel(const ChannelSet& ch, const Vec& phi,
                            const Vec& psi1);

}  // namespace fdisac
