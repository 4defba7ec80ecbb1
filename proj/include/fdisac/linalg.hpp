#pragma once

#include "fdisac/types.hpp"

namespace fdisac {

/// (A + A^H) / 2. Quadratic-form coefficients are Hermitian analytically;
/// assembly drift is folded back before any solver touches them.
Mat hermitian_part(const Mat& a);

/// Clips eigenvalues in [-clip_tol * lmax, 0) to zero. Throws
/// std::runtime_error if any eigenvalue is below -abort_tol * lmax, which
/// indicates an assembly bug rather than rounding noise.
Mat psd_clip(const Mat& a, double clip_tol = 1e-10, double abort_tol = 1e-6);

/// Entry-wise exp(j * arg(v)). Zero entries map to 1.
Vec unit_modulus(const Vec& v);

/// Largest |entry| deviation from unit modulus.
double unit_modulus_error(const Vec& v);

/// Column-major vec(A).
Vec vectorize(const Mat& a);
Mat unvectorize(const Vec& v, int rows, int cols);

double db_to_linear(double db);
double linear_to_db(double lin);

/// Deterministic 64-bit stream mixing for (seed, stream-id ...) tuples.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0);

}  // namespace fdisac
