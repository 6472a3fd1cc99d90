#pragma once

// Dense complex linear-algebra kernel. Everything here is a pure function of
// its arguments; results are plain values.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "psdfactor/error.hpp"

namespace psdfactor {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Singular/eigen values below kRankThreshold * (largest one) count as zero.
inline constexpr double kRankThreshold = 1e-10;
/// Relative Frobenius tolerance for identity checks.
inline constexpr double kDefaultTol = 1e-8;

// ---------------------------------------------------------------------------
// Small helpers shared by every module.

double frobenius(const CMatrix& m);
double op_norm(const CMatrix& m);
CMatrix adjoint(const CMatrix& m);
CMatrix hermitian_part(const CMatrix& m);
bool is_hermitian(const CMatrix& m, double tol = kDefaultTol);
bool all_finite(const CMatrix& m);
CMatrix identity(Index n);
CMatrix zeros(Index rows, Index cols);

/// Singular values, descending.
RVector singular_values(const CMatrix& m);
/// Numerical rank at kRankThreshold (or `rel_tol`) relative to the largest singular value.
Index rank(const CMatrix& m, double rel_tol = kRankThreshold);
/// Orthonormal basis (columns) of ker m.
CMatrix null_space(const CMatrix& m, double rel_tol = kRankThreshold);
/// Orthonormal basis (columns) of ran m.
CMatrix range_basis(const CMatrix& m, double rel_tol = kRankThreshold);
/// 2-norm condition number; +inf for singular input.
double condition_number(const CMatrix& m);

// ---------------------------------------------------------------------------

struct HermEig {
  RVector eigenvalues;   // ascending
  CMatrix eigenvectors;  // unitary, column k belongs to eigenvalues[k]
};

/// Cyclic complex Jacobi. Throws NotHermitian when ||H - H*||_F > tol ||H||_F
/// and NoConvergence when the sweep cap is hit.
HermEig hermitian_eig(const CMatrix& h, double tol = kDefaultTol);

/// V diag(lambda_i^alpha) V*, eigenvalues below the rank threshold mapped to 0
/// for every alpha (negative powers act as powers of the Moore-Penrose inverse).
CMatrix psd_power(const CMatrix& p, double alpha, double tol = kDefaultTol);

CMatrix moore_penrose(const CMatrix& t);

struct PolarParts {
  CMatrix unitary_factor;  // partial isometry, initial space ran |G|
  CMatrix modulus;         // (G*G)^{1/2}
};

PolarParts polar(const CMatrix& g);

struct LoewnerResult {
  bool ordered = false;
  double margin = 0.0;  // smallest eigenvalue of Q - P
};

/// P <= Q iff lambda_min(Q - P) >= -tol (1 + ||Q - P||).
LoewnerResult loewner_leq(const CMatrix& p, const CMatrix& q, double tol = kDefaultTol);

/// Smallest eigenvalue of a Hermitian matrix (after symmetrisation).
double min_eigenvalue(const CMatrix& h);
bool is_psd(const CMatrix& h, double tol = kDefaultTol);

struct IntertwinerSpace {
  std::vector<CMatrix> basis;  // orthonormal in the Frobenius inner product
  CMatrix max_rank_element;
  Index max_rank = 0;
};

inline constexpr std::uint64_t kIntertwinerSeed = 0x9e3779b97f4a7c15ULL;
inline constexpr int kIntertwinerCandidates = 64;

/// Basis of {G : G T = S G} (G is S.rows() x T.rows()) and a maximal-rank
/// element found among seeded random unit combinations of the basis.
IntertwinerSpace sylvester_intertwiners(const CMatrix& t, const CMatrix& s,
                                        std::uint64_t seed = kIntertwinerSeed);

struct SpectrumInfo {
  CVector eigenvalues;  // sorted by (real, imag)
  bool diagonalizable = false;
  double eigvec_condition = 0.0;  // +inf when not diagonalizable
  CMatrix eigenvectors;           // unit columns aligned with `eigenvalues` (when diagonalizable)
  std::vector<Index> cluster_of;  // cluster index for each eigenvalue
};

/// Relative radius (times ||T||) within which computed eigenvalues are merged.
inline constexpr double kClusterTol = 1e-6;

/// Eigenvalues by complex Schur; eigenvalues within tol * ||T|| of each other
/// form one cluster, and diagonalizability is decided by rank tests on
/// (T - mu I) for every cluster mean mu.
SpectrumInfo spectrum(const CMatrix& t, double tol = kClusterTol);

/// Eigenvalues of a general square matrix (complex Schur), sorted by (real, imag).
CVector eigenvalues(const CMatrix& t);

/// Hausdorff distance between two finite point sets in the complex plane.
double hausdorff(const CVector& a, const CVector& b);

}  // namespace psdfactor
