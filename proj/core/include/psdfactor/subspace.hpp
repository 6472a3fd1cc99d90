#pragma once

#include "psdfactor/numkernel.hpp"

namespace psdfactor {

/// Default tolerance for subspace equality and containment tests.
inline constexpr double kSubspaceTol = 1e-9;

/// A linear subspace of C^n carried by an orthonormal basis.
class Subspace {
 public:
  Subspace() = default;

  /// `basis` must have orthonormal columns (checked to `tol`).
  Subspace(Index ambient_dim, CMatrix basis, double tol = kSubspaceTol);

  /// Span of the columns of `vectors`, with the global rank threshold.
  static Subspace span(const CMatrix& vectors, double rel_tol = kRankThreshold);
  static Subspace zero(Index ambient_dim);
  static Subspace full(Index ambient_dim);
  static Subspace kernel_of(const CMatrix& m);
  static Subspace range_of(const CMatrix& m);

  Index ambient_dim() const noexcept { return ambient_; }
  Index dim() const noexcept { return basis_.cols(); }
  const CMatrix& basis() const noexcept { return basis_; }
  double tol() const noexcept { return tol_; }

  bool is_zero() const noexcept { return dim() == 0; }
  bool is_full() const noexcept { return dim() == ambient_; }

  /// Orthogonal projector onto the subspace.
  CMatrix projector() const;
  Subspace complement() const;

  /// ||(I - P) v|| <= tol (1 + ||v||).
  bool contains(const CVector& v, double tol = kSubspaceTol) const;
  /// other is a subset of *this: ||(I - P) Q_other||_2 <= tol.
  bool contains(const Subspace& other, double tol = kSubspaceTol) const;

 private:
  Index ambient_ = 0;
  CMatrix basis_ = CMatrix(0, 0);
  double tol_ = kSubspaceTol;
};

Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);

/// sin of the largest principal angle, i.e. ||P_a - P_b||_2. Returns 1 when the
/// dimensions differ.
double distance(const Subspace& a, const Subspace& b);
bool approx_equal(const Subspace& a, const Subspace& b, double tol = kSubspaceTol);

/// span{M q : q in s}.
Subspace image(const CMatrix& m, const Subspace& s);
/// {v : M v in s}.
Subspace preimage(const CMatrix& m, const Subspace& s);
/// a x b inside C^{na + nb}.
Subspace cartesian(const Subspace& a, const Subspace& b);

}  // namespace psdfactor
