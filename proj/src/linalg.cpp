#include "fdisac/linalg.hpp"

#include <cmath>

namespace fdisac {

Mat hermitian_part(const Mat& a) { return 0.5 * (a + a.adjoint()); }

Mat psd_clip(const Mat& a, double clip_tol, double abort_tol) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(hermitian_part(a));
  const RealVec& vals = eig.eigenvalues();
  double lmax = std::max(vals.maxCoeff(), 0.0);
  if (lmax == 0.0) lmax = 1.0;
  if (vals.minCoeff() < -abort_tol * lmax) {
    throw std::runtime_error("psd_clip: matrix is indefinite beyond tolerance (min eig " +
                             std::to_string(vals.minCoeff()) + ", max eig " +
                             std::to_string(lmax) + ")");
  }
  RealVec clipped = vals.cwiseMax(0.0);
  return eig.eigenvectors() * clipped.asDiagonal() *
         eig.eigenvectors().adjoint();
}

Vec unit_modulus(const Vec& v) {
  Vec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out[i] = std::polar(1.0, std::arg(v[i]));
  }
  return out;
}

double unit_modulus_error(const Vec& v) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    worst = std::max(worst, std::abs(std::abs(v[i]) - 1.0));
  }
  return worst;
}

Vec vectorize(const Mat& a) {
  return Eigen::Map<const Vec>(a.data(), a.size());
}

Mat unvectorize(const Vec& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols) {
    throw std::invalid_argument("unvectorize: size mismatch");
  }
  return Eigen::Map<const Mat>(v.data(), rows, cols);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  // splitmix64 finalizer applied to a simple combine
  auto finalize = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  return finalize(finalize(finalize(a) ^ b) ^ c);
}

}  // namespace fdisac
