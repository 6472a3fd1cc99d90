#include "psdfactor/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace psdfactor {

namespace {

constexpr int kMaxJacobiSweeps = 100;

using Svd = Eigen::BDCSVD<CMatrix>;

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NotSquare, std::string(what) + " must be square, got " +
                                          std::to_string(m.rows()) + "x" +
                                          std::to_string(m.cols()));
  }
}

// One complex Jacobi rotation W = [[c, s e], [-s conj(e), c]] applied as
// A <- W* A W on rows/columns p, q, and V <- V W.
void rotate(CMatrix& a, CMatrix& v, Index p, Index q) {
  const Complex apq = a(p, q);
  const double g = std::abs(apq);
  if (g == 0.0) return;
  const Complex e = apq / g;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * g);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex wpq = s * e;
  const Complex wqp = -s * std::conj(e);

  const Index n = a.rows();
  for (Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp + wqp * akq;
    a(k, q) = wpq * akp + c * akq;
  }
  for (Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk + std::conj(wqp) * aqk;
    a(q, k) = std::conj(wpq) * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (Index k = 0; k < v.rows(); ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp + wqp * vkq;
    v(k, q) = wpq * vkp + c * vkq;
  }
}

double off_diagonal_norm(const CMatrix& a) {
  double sum = 0.0;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

// Rotate the phase of a unit vector so that its largest entry is real positive.
void normalize_phase(Eigen::Ref<CVector> v) {
  Index imax = 0;
  double best = -1.0;
  for (Index i = 0; i < v.size(); ++i) {
    // Ties are broken towards the lower index; the 1e-12 slack keeps the
    // choice stable under rounding.
    if (std::abs(v(i)) > best * (1.0 + 1e-12)) {
      best = std::abs(v(i));
      imax = i;
    }
  }
  if (best > 0.0) v *= std::conj(v(imax)) / std::abs(v(imax));
}

}  // namespace

double frobenius(const CMatrix& m) { return m.norm(); }

double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  const RVector s = singular_values(m);
  return s.size() ? s(0) : 0.0;
}

CMatrix adjoint(const CMatrix& m) { return m.adjoint(); }

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return frobenius(m - m.adjoint()) <= tol * (1.0 + frobenius(m));
}

bool all_finite(const CMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

CMatrix identity(Index n) { return CMatrix::Identity(n, n); }

CMatrix zeros(Index rows, Index cols) { return CMatrix::Zero(rows, cols); }

RVector singular_values(const CMatrix& m) {
  if (m.size() == 0) return RVector(0);
  Svd svd(m);
  return svd.singularValues();
}

Index rank(const CMatrix& m, double rel_tol) {
  const RVector s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double thr = rel_tol * s(0);
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > thr) ++r;
  return r;
}

CMatrix null_space(const CMatrix& m, double rel_tol) {
  const Index n = m.cols();
  if (n == 0) return CMatrix(0, 0);
  if (m.rows() == 0) return identity(n);
  Svd svd(m, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  Index r = 0;
  if (s.size() && s(0) > 0.0) {
    const double thr = rel_tol * s(0);
    for (Index i = 0; i < s.size(); ++i)
      if (s(i) > thr) ++r;
  }
  return svd.matrixV().rightCols(n - r);
}

CMatrix range_basis(const CMatrix& m, double rel_tol) {
  if (m.size() == 0) return CMatrix(m.rows(), 0);
  Svd svd(m, Eigen::ComputeThinU);
  const RVector& s = svd.singularValues();
  Index r = 0;
  if (s.size() && s(0) > 0.0) {
    const double thr = rel_tol * s(0);
    for (Index i = 0; i < s.size(); ++i)
      if (s(i) > thr) ++r;
  }
  return svd.matrixU().leftCols(r);
}

double condition_number(const CMatrix& m) {
  const RVector s = singular_values(m);
  if (s.size() == 0) return 1.0;
  if (s(s.size() - 1) == 0.0 || m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return s(0) / s(s.size() - 1);
}

HermEig hermitian_eig(const CMatrix& h, double tol) {
  require_square(h, "hermitian_eig input");
  if (!all_finite(h)) throw Error(ErrorCode::NotHermitian, "non-finite entries");
  const double nrm = frobenius(h);
  if (frobenius(h - h.adjoint()) > tol * nrm) {
    throw Error(ErrorCode::NotHermitian, "||H - H*||_F exceeds tol * ||H||_F");
  }
  const Index n = h.rows();
  CMatrix a = hermitian_part(h);
  CMatrix v = identity(n);

  const double target = std::numeric_limits<double>::epsilon() * nrm;
  int sweep = 0;
  while (off_diagonal_norm(a) > target) {
    if (++sweep > kMaxJacobiSweeps) {
      throw Error(ErrorCode::NoConvergence, "Jacobi sweep cap reached");
    }
    for (Index p = 0; p + 1 < n; ++p)
      for (Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index i, Index j) { return a(i, i).real() < a(j, j).real(); });
  HermEig out{RVector(n), CMatrix(n, n)};
  for (Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[k], order[k]).real();
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  return out;
}

double min_eigenvalue(const CMatrix& h) {
  if (h.size() == 0) return 0.0;
  return hermitian_eig(hermitian_part(h), 1.0).eigenvalues(0);
}

bool is_psd(const CMatrix& h, double tol) {
  if (!is_hermitian(h, tol)) return false;
  return min_eigenvalue(h) >= -tol * (1.0 + op_norm(h));
}

CMatrix psd_power(const CMatrix& p, double alpha, double tol) {
  require_square(p, "psd_power input");
  const Index n = p.rows();
  if (n == 0) return CMatrix(0, 0);
  const HermEig eig = hermitian_eig(p, std::max(tol, kDefaultTol));
  const double lmax = eig.eigenvalues.cwiseAbs().maxCoeff();
  if (eig.eigenvalues(0) < -tol * lmax) {
    throw Error(ErrorCode::NotPSD, "minimum eigenvalue " + std::to_string(eig.eigenvalues(0)));
  }
  const double thr = kRankThreshold * lmax;
  RVector f(n);
  for (Index i = 0; i < n; ++i) {
    const double l = eig.eigenvalues(i);
    f(i) = (l <= thr) ? 0.0 : std::pow(l, alpha);
  }
  const CMatrix& v = eig.eigenvectors;
  return hermitian_part(v * f.asDiagonal() * v.adjoint());
}

CMatrix moore_penrose(const CMatrix& t) {
  if (t.size() == 0) return zeros(t.cols(), t.rows());
  Svd svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector& s = svd.singularValues();
  CMatrix out = zeros(t.cols(), t.rows());
  if (s.size() == 0 || s(0) == 0.0) return out;
  const double thr = kRankThreshold * s(0);
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > thr) out += (svd.matrixV().col(i) / s(i)) * svd.matrixU().col(i).adjoint();
  }
  return out;
}

PolarParts polar(const CMatrix& g) {
  require_square(g, "polar input");
  const Index n = g.rows();
  if (n == 0) return {CMatrix(0, 0), CMatrix(0, 0)};
  Svd svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  const CMatrix& u = svd.matrixU();
  const CMatrix& v = svd.matrixV();
  Index r = 0;
  if (s(0) > 0.0) {
    for (Index i = 0; i < n; ++i)
      if (s(i) > kRankThreshold * s(0)) ++r;
  }
  PolarParts out;
  out.modulus = hermitian_part(v * s.asDiagonal() * v.adjoint());
  out.unitary_factor = u.leftCols(r) * v.leftCols(r).adjoint();
  return out;
}

LoewnerResult loewner_leq(const CMatrix& p, const CMatrix& q, double tol) {
  if (p.rows() != q.rows() || p.cols() != q.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "loewner_leq operands differ in size");
  }
  require_square(p, "loewner_leq operand");
  if (!is_hermitian(p, tol) || !is_hermitian(q, tol)) {
    throw Error(ErrorCode::NotHermitian, "loewner_leq operands must be Hermitian");
  }
  const CMatrix d = hermitian_part(q - p);
  LoewnerResult out;
  out.margin = min_eigenvalue(d);
  out.ordered = out.margin >= -tol * (1.0 + op_norm(d));
  return out;
}

IntertwinerSpace sylvester_intertwiners(const CMatrix& t, const CMatrix& s, std::uint64_t seed) {
  require_square(t, "sylvester_intertwiners T");
  require_square(s, "sylvester_intertwiners S");
  const Index n = t.rows();
  const Index m = s.rows();
  IntertwinerSpace out;
  out.max_rank_element = zeros(m, n);
  if (n == 0 || m == 0) return out;

  // vec(G T - S G) = (T^T (x) I_m - I_n (x) S) vec(G), column-major vec.
  const Index mn = m * n;
  CMatrix k = zeros(mn, mn);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      k.block(a * m, b * m, m, m) += t(b, a) * identity(m);
    }
    k.block(a * m, a * m, m, m) -= s;
  }
  const CMatrix ns = null_space(k);
  for (Index j = 0; j < ns.cols(); ++j) {
    out.basis.emplace_back(Eigen::Map<const CMatrix>(ns.col(j).data(), m, n));
  }
  if (out.basis.empty()) return out;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Index k_min = std::min(m, n);
  Index best_rank = -1;
  double best_sigma = -1.0;
  for (int trial = 0; trial < kIntertwinerCandidates; ++trial) {
    CVector c(static_cast<Index>(out.basis.size()));
    for (Index i = 0; i < c.size(); ++i) c(i) = Complex(normal(rng), normal(rng));
    c /= c.norm();
    CMatrix g = zeros(m, n);
    for (Index i = 0; i < c.size(); ++i) g += c(i) * out.basis[static_cast<std::size_t>(i)];
    const RVector sv = singular_values(g);
    Index r = 0;
    if (sv(0) > 0.0)
      for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > kRankThreshold * sv(0)) ++r;
    const double smin = sv(k_min - 1);
    if (r > best_rank || (r == best_rank && smin > best_sigma)) {
      best_rank = r;
      best_sigma = smin;
      out.max_rank_element = g;
    }
  }
  out.max_rank = best_rank;
  return out;
}

SpectrumInfo spectrum(const CMatrix& t, double tol) {
  require_square(t, "spectrum input");
  const Index n = t.rows();
  SpectrumInfo out;
  out.eigenvalues = CVector(n);
  if (n == 0) {
    out.diagonalizable = true;
    out.eigvec_condition = 1.0;
    out.eigenvectors = CMatrix(0, 0);
    return out;
  }
  const double nrm = op_norm(t);
  if (nrm == 0.0) {
    out.eigenvalues.setZero();
    out.diagonalizable = true;
    out.eigvec_condition = 1.0;
    out.eigenvectors = identity(n);
    out.cluster_of.assign(static_cast<std::size_t>(n), 0);
    return out;
  }

  out.eigenvalues = eigenvalues(t);

  // Single-linkage clustering at radius tol * ||T||. A 2x2 Jordan block splits
  // its eigenvalue by about sqrt(eps) * ||T||, well inside the default radius.
  const double radius = tol * nrm;
  std::vector<Index> cluster(static_cast<std::size_t>(n), -1);
  Index n_clusters = 0;
  for (Index i = 0; i < n; ++i) {
    if (cluster[static_cast<std::size_t>(i)] >= 0) continue;
    std::vector<Index> stack{i};
    cluster[static_cast<std::size_t>(i)] = n_clusters;
    while (!stack.empty()) {
      const Index a = stack.back();
      stack.pop_back();
      for (Index b = 0; b < n; ++b) {
        if (cluster[static_cast<std::size_t>(b)] < 0 &&
            std::abs(out.eigenvalues(a) - out.eigenvalues(b)) <= radius) {
          cluster[static_cast<std::size_t>(b)] = n_clusters;
          stack.push_back(b);
        }
      }
    }
    ++n_clusters;
  }
  out.cluster_of = cluster;

  out.diagonalizable = true;
  out.eigenvectors = zeros(n, n);
  const double thr = kRankThreshold * nrm;
  for (Index c = 0; c < n_clusters; ++c) {
    std::vector<Index> members;
    Complex mu = 0.0;
    for (Index i = 0; i < n; ++i)
      if (cluster[static_cast<std::size_t>(i)] == c) {
        members.push_back(i);
        mu += out.eigenvalues(i);
      }
    mu /= static_cast<double>(members.size());
    const Index mult = static_cast<Index>(members.size());
    const CMatrix shifted = t - mu * identity(n);
    Svd svd(shifted, Eigen::ComputeFullV);
    const RVector& s = svd.singularValues();
    Index r = 0;
    for (Index i = 0; i < n; ++i)
      if (s(i) > thr) ++r;
    if (r != n - mult) {
      out.diagonalizable = false;
      continue;
    }
    for (Index k = 0; k < mult; ++k) {
      CVector col = svd.matrixV().col(n - mult + k);
      normalize_phase(col);
      out.eigenvectors.col(members[static_cast<std::size_t>(k)]) = col;
    }
  }
  // Larger Jordan blocks can split beyond the radius into singleton clusters
  // that share one null vector; the assembled eigenvector matrix then drops rank.
  if (out.diagonalizable && rank(out.eigenvectors) < n) out.diagonalizable = false;
  if (out.diagonalizable) {
    out.eigvec_condition = condition_number(out.eigenvectors);
  } else {
    out.eigvec_condition = std::numeric_limits<double>::infinity();
    out.eigenvectors = CMatrix(0, 0);
  }
  return out;
}

CVector eigenvalues(const CMatrix& t) {
  require_square(t, "eigenvalues input");
  const Index n = t.rows();
  if (n == 0) return CVector(0);
  Eigen::ComplexEigenSolver<CMatrix> ces(t, /*computeEigenvectors=*/false);
  if (ces.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "complex Schur failed");
  std::vector<Complex> ev(ces.eigenvalues().data(), ces.eigenvalues().data() + n);
  std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  return Eigen::Map<const CVector>(ev.data(), n);
}

double hausdorff(const CVector& a, const CVector& b) {
  if (a.size() == 0 && b.size() == 0) return 0.0;
  if (a.size() == 0 || b.size() == 0) return std::numeric_limits<double>::infinity();
  auto directed = [](const CVector& x, const CVector& y) {
    double worst = 0.0;
    for (Index i = 0; i < x.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (Index j = 0; j < y.size(); ++j) best = std::min(best, std::abs(x(i) - y(j)));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace psdfactor
