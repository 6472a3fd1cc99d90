#include "psdfactor/random.hpp"

#include <cmath>

#include <Eigen/QR>

namespace psdfactor {

std::uint64_t splitmix64(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::normal() { return normal_(engine_); }

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

int Rng::uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
}

CMatrix Rng::gaussian(Index rows, Index cols) {
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
  return m;
}

CMatrix Rng::unitary(Index n) {
  const CMatrix z = gaussian(n, n);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Haar measure: fix the phases of R's diagonal.
  for (Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

CMatrix Rng::hermitian(Index n) { return hermitian_part(gaussian(n, n)); }

CMatrix Rng::psd(Index n, Index rank, double lo, double hi) {
  const CMatrix v = unitary(n);
  RVector d = RVector::Zero(n);
  for (Index i = 0; i < rank && i < n; ++i) d(i) = uniform(lo, hi);
  return hermitian_part(v * d.asDiagonal() * v.adjoint());
}

CMatrix Rng::with_condition(Index n, double cond) {
  const CMatrix u = unitary(n);
  const CMatrix w = unitary(n);
  RVector s(n);
  for (Index i = 0; i < n; ++i) {
    const double frac = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
    s(i) = std::pow(cond, frac * uniform(0.0, 1.0));
  }
  if (n > 1) s(n - 1) = cond;
  return u * s.asDiagonal() * w.adjoint();
}

CMatrix Rng::of_rank(Index rows, Index cols, Index rank) {
  return gaussian(rows, rank) * gaussian(rank, cols);
}

CMatrix Rng::normal_matrix(Index n) {
  const CMatrix u = unitary(n);
  CVector d(n);
  for (Index i = 0; i < n; ++i) d(i) = complex_normal();
  return u * d.asDiagonal() * u.adjoint();
}

Subspace Rng::subspace(Index n, Index k) {
  if (k == 0) return Subspace::zero(n);
  return Subspace(n, unitary(n).leftCols(k));
}

LinRel Rng::relation(Index n, Index m, Index dim) {
  return LinRel(n, m, subspace(n + m, dim));
}

}  // namespace psdfactor
