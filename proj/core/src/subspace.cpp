#include "psdfactor/subspace.hpp"

#include <algorithm>
#include <string>

namespace psdfactor {

Subspace::Subspace(Index ambient_dim, CMatrix basis, double tol)
    : ambient_(ambient_dim), basis_(std::move(basis)), tol_(tol) {
  if (basis_.cols() == 0) basis_.resize(ambient_, 0);
  if (basis_.rows() != ambient_) {
    throw Error(ErrorCode::DimensionMismatch,
                "subspace basis has " + std::to_string(basis_.rows()) + " rows, expected " +
                    std::to_string(ambient_));
  }
  const CMatrix gram = basis_.adjoint() * basis_;
  if (frobenius(gram - identity(basis_.cols())) > std::max(tol_, 1e-8) * (1.0 + basis_.cols())) {
    throw Error(ErrorCode::DimensionMismatch, "subspace basis is not orthonormal");
  }
}

Subspace Subspace::span(const CMatrix& vectors, double rel_tol) {
  return Subspace(vectors.rows(), range_basis(vectors, rel_tol));
}

Subspace Subspace::zero(Index ambient_dim) { return Subspace(ambient_dim, CMatrix(ambient_dim, 0)); }

Subspace Subspace::full(Index ambient_dim) { return Subspace(ambient_dim, identity(ambient_dim)); }

Subspace Subspace::kernel_of(const CMatrix& m) {
  return Subspace(m.cols(), null_space(m));
}

Subspace Subspace::range_of(const CMatrix& m) { return Subspace(m.rows(), range_basis(m)); }

CMatrix Subspace::projector() const { return basis_ * basis_.adjoint(); }

Subspace Subspace::complement() const {
  if (is_zero()) return full(ambient_);
  return Subspace(ambient_, null_space(basis_.adjoint()));
}

bool Subspace::contains(const CVector& v, double tol) const {
  if (v.size() != ambient_) throw Error(ErrorCode::DimensionMismatch, "vector size");
  const CVector r = v - basis_ * (basis_.adjoint() * v);
  return r.norm() <= tol * (1.0 + v.norm());
}

bool Subspace::contains(const Subspace& other, double tol) const {
  if (other.ambient_ != ambient_) throw Error(ErrorCode::DimensionMismatch, "ambient dimension");
  if (other.is_zero()) return true;
  if (other.dim() > dim()) return false;
  const CMatrix r = other.basis_ - basis_ * (basis_.adjoint() * other.basis_);
  return op_norm(r) <= tol;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "intersect: ambient dimension");
  }
  if (a.is_zero() || b.is_zero()) return Subspace::zero(a.ambient_dim());
  if (a.is_full()) return b;
  if (b.is_full()) return a;
  // (u, v) with Qa u = Qb v.
  CMatrix stacked(a.ambient_dim(), a.dim() + b.dim());
  stacked << a.basis(), -b.basis();
  // Absolute threshold: both blocks are orthonormal, so singular values are O(1).
  const CMatrix ns = null_space(stacked, kRankThreshold);
  if (ns.cols() == 0) return Subspace::zero(a.ambient_dim());
  return Subspace::span(a.basis() * ns.topRows(a.dim()));
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "sum: ambient dimension");
  }
  CMatrix stacked(a.ambient_dim(), a.dim() + b.dim());
  stacked << a.basis(), b.basis();
  if (stacked.cols() == 0) return Subspace::zero(a.ambient_dim());
  return Subspace::span(stacked);
}

double distance(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "distance: ambient dimension");
  }
  if (a.dim() != b.dim()) return 1.0;
  if (a.dim() == 0) return 0.0;
  return op_norm(a.projector() - b.projector());
}

bool approx_equal(const Subspace& a, const Subspace& b, double tol) {
  return distance(a, b) <= tol;
}

Subspace image(const CMatrix& m, const Subspace& s) {
  if (m.cols() != s.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "image");
  if (s.is_zero()) return Subspace::zero(m.rows());
  return Subspace::span(m * s.basis());
}

Subspace preimage(const CMatrix& m, const Subspace& s) {
  if (m.rows() != s.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "preimage");
  // M v in s  <=>  (I - P_s) M v = 0.
  // The threshold is taken relative to M, since the residual may be pure roundoff.
  const CMatrix residual = m - s.basis() * (s.basis().adjoint() * m);
  const double thr = kRankThreshold * std::max(1.0, op_norm(m));
  if (residual.size() == 0 || op_norm(residual) <= thr) return Subspace::full(m.cols());
  Eigen::BDCSVD<CMatrix> svd(residual, Eigen::ComputeFullV);
  Index r = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > thr) ++r;
  return Subspace(m.cols(), svd.matrixV().rightCols(m.cols() - r));
}

Subspace cartesian(const Subspace& a, const Subspace& b) {
  const Index n = a.ambient_dim() + b.ambient_dim();
  CMatrix q = zeros(n, a.dim() + b.dim());
  q.topLeftCorner(a.ambient_dim(), a.dim()) = a.basis();
  q.bottomRightCorner(b.ambient_dim(), b.dim()) = b.basis();
  return Subspace(n, q);
}

}  // namespace psdfactor
