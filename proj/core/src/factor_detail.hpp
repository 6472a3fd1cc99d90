#pragma once

#include <algorithm>
#include <cmath>

#include "psdfactor/factor.hpp"

namespace psdfactor::detail {

/// ||a - b||_F / (1 + max(||a||_F, ||b||_F)).
inline double rel_residual(const CMatrix& a, const CMatrix& b) {
  return frobenius(a - b) / (1.0 + std::max(frobenius(a), frobenius(b)));
}

/// Distance of H from the Hermitian PSD cone, relative to its size.
inline double psd_defect(const CMatrix& h) {
  const double scale = 1.0 + frobenius(h);
  const double asym = frobenius(h - h.adjoint()) / scale;
  const double neg = h.size() ? std::max(0.0, -min_eigenvalue(h)) / scale : 0.0;
  return std::max(asym, neg);
}

/// Size of M restricted to the columns of an orthonormal basis, relative to ||M||.
inline double vanishing_on(const CMatrix& m, const CMatrix& basis) {
  if (basis.cols() == 0 || m.size() == 0) return 0.0;
  return op_norm(m * basis) / (1.0 + op_norm(m));
}

inline void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, what);
  }
}

inline void require_square_matrix(const CMatrix& a, const char* what) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::NotSquare, what);
}

}  // namespace psdfactor::detail
