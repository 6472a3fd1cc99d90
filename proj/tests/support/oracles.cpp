#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

std::vector<Complex> charpoly(const CMatrix& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<Complex> c(n + 1);
  c[n] = 1.0;
  CMatrix m = CMatrix::Zero(n, n);
  const CMatrix id = CMatrix::Identity(n, n);
  for (int k = 1; k <= n; ++k) {
    m = a * m + c[n - k + 1] * id;
    c[n - k] = -(a * m).trace() / static_cast<double>(k);
  }
  return c;
}

CVector companion_roots(const std::vector<Complex>& coeffs) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n <= 0) return CVector(0);
  CMatrix comp = CMatrix::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -coeffs[i] / coeffs[n];
  Eigen::ComplexEigenSolver<CMatrix> es(comp, false);
  return es.eigenvalues();
}

CVector charpoly_eigenvalues(const CMatrix& a) { return companion_roots(charpoly(a)); }

Eigen::VectorXd herm_eigenvalues(const CMatrix& h) {
  const CMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double herm_min_eig(const CMatrix& h) {
  if (h.size() == 0) return 0.0;
  return herm_eigenvalues(h)(0);
}

bool psd_leq(const CMatrix& p, const CMatrix& q, double tol) {
  const CMatrix d = q - p;
  const double scale = d.size() ? Eigen::JacobiSVD<CMatrix>(d).singularValues()(0) : 0.0;
  return herm_min_eig(d) >= -tol * (1.0 + scale);
}

CMatrix herm_power(const CMatrix& p, double alpha) {
  const CMatrix sym = 0.5 * (p + p.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  Eigen::VectorXd d(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) d(i) = ev(i) > 1e-10 * top ? std::pow(ev(i), alpha) : 0.0;
  return es.eigenvectors() * d.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

std::optional<double> lambda_sweep(const CMatrix& t, const CMatrix& b, int points, double lo, double hi) {
  const CMatrix tb = 0.5 * (t.adjoint() * b + b.adjoint() * t);
  const CMatrix tt = t.adjoint() * t;
  const double ratio = std::pow(hi / lo, 1.0 / (points - 1));
  double lambda = lo;
  for (int i = 0; i < points; ++i, lambda *= ratio) {
    const CMatrix d = lambda * tb - tt;
    const double scale = 1.0 + lambda * tb.norm() + tt.norm();
    if (herm_min_eig(d) >= -1e-9 * scale) return lambda;
  }
  return std::nullopt;
}

double reverse_eta(const CMatrix& t, const CMatrix& b) {
  const CMatrix bt = b.adjoint() * t;
  const CMatrix root = herm_power(bt, -0.5);
  return herm_min_eig(root * (t.adjoint() * t) * root);
}

int sylvester_kernel_dim(const CMatrix& t, const CMatrix& s) {
  const int n = static_cast<int>(t.rows());
  const int m = static_cast<int>(s.rows());
  // vec(G T - S G) = (T^T (x) I_m - I_n (x) S) vec(G), column-major vec.
  CMatrix k = CMatrix::Zero(n * m, n * m);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) k.block(a * m, b * m, m, m) += t(b, a) * CMatrix::Identity(m, m);
  for (int a = 0; a < n; ++a) k.block(a * m, a * m, m, m) -= s;
  return n * m - numerical_rank(k);
}

int numerical_rank(const CMatrix& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const Eigen::VectorXd sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * sv(0)) ++r;
  return r;
}

double hausdorff(const CVector& a, const CVector& b) {
  if (a.size() == 0 || b.size() == 0) return (a.size() == b.size()) ? 0.0 : std::numeric_limits<double>::infinity();
  auto directed = [](const CVector& p, const CVector& q) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < q.size(); ++j) best = std::min(best, std::abs(p(i) - q(j)));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

double adjoint_defect(const Graph& t, const Graph& t_adj) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < t.pairs.cols(); ++i) {
    const CVector x = t.pairs.col(i).head(t.n);
    const CVector y = t.pairs.col(i).tail(t.m);
    for (Eigen::Index j = 0; j < t_adj.pairs.cols(); ++j) {
      const CVector u = t_adj.pairs.col(j).head(t.m);
      const CVector v = t_adj.pairs.col(j).tail(t.n);
      worst = std::max(worst, std::abs(v.dot(x) - u.dot(y)));
    }
  }
  return worst;
}

CMatrix span_projector(const CMatrix& cols) {
  const Eigen::Index dim = cols.rows();
  if (cols.cols() == 0) return CMatrix::Zero(dim, dim);
  Eigen::JacobiSVD<CMatrix> svd(cols, Eigen::ComputeThinU);
  const Eigen::VectorXd sv = svd.singularValues();
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(0) > 0.0 && sv(i) > 1e-10 * sv(0)) ++r;
  const CMatrix u = svd.matrixU().leftCols(r);
  return u * u.adjoint();
}

Graph compose(const Graph& s, const Graph& t) {
  // (x, y) in T, (y', z) in S with y = y': kernel of [T_y, -S_x] over the coefficients.
  const Eigen::Index kt = t.pairs.cols();
  const Eigen::Index ks = s.pairs.cols();
  CMatrix constraint(t.m, kt + ks);
  constraint << t.pairs.bottomRows(t.m), -s.pairs.topRows(s.n);
  CMatrix ker = CMatrix::Identity(kt + ks, kt + ks);
  if (constraint.cols() > 0 && constraint.rows() > 0) {
    Eigen::FullPivLU<CMatrix> lu(constraint);
    lu.setThreshold(1e-11);
    ker = lu.rank() < constraint.cols() ? CMatrix(lu.kernel()) : CMatrix(kt + ks, 0);
  }
  Graph out{t.n, s.m, CMatrix(t.n + s.m, ker.cols())};
  out.pairs.topRows(t.n) = t.pairs.topRows(t.n) * ker.topRows(kt);
  out.pairs.bottomRows(s.m) = s.pairs.bottomRows(s.m) * ker.bottomRows(ks);
  return out;
}

double graph_distance(const Graph& a, const Graph& b) {
  const CMatrix d = span_projector(a.pairs) - span_projector(b.pairs);
  if (d.size() == 0) return 0.0;
  return Eigen::JacobiSVD<CMatrix>(d).singularValues()(0);
}

double graph_excess(const Graph& big, const Graph& small) {
  if (small.pairs.cols() == 0) return 0.0;
  const CMatrix q = span_projector(small.pairs);
  const CMatrix r = q - span_projector(big.pairs) * q;
  return Eigen::JacobiSVD<CMatrix>(r).singularValues()(0);
}

bool form_order_leq(const CMatrix& lo_op, const CMatrix& lo_dom, const CMatrix& hi_op, const CMatrix& hi_dom,
                    double tol) {
  const CMatrix p_lo = span_projector(lo_dom);
  if (hi_dom.cols() > 0) {
    const CMatrix leak = hi_dom - p_lo * hi_dom;
    if (Eigen::JacobiSVD<CMatrix>(leak).singularValues()(0) > 1e-8) return false;
  }
  const CMatrix q = hi_dom.cols() > 0 ? CMatrix(Eigen::JacobiSVD<CMatrix>(hi_dom, Eigen::ComputeThinU).matrixU())
                                      : CMatrix(hi_op.rows(), 0);
  if (q.cols() == 0) return true;
  const CMatrix diff = q.adjoint() * (hi_op - lo_op) * q;
  const double scale = 1.0 + (q.adjoint() * hi_op * q).norm() + (q.adjoint() * lo_op * q).norm();
  return herm_min_eig(diff) >= -tol * scale;
}

CMatrix orth(const CMatrix& cols) {
  if (cols.cols() == 0) return CMatrix(cols.rows(), 0);
  Eigen::JacobiSVD<CMatrix> svd(cols, Eigen::ComputeThinU);
  const Eigen::VectorXd sv = svd.singularValues();
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(0) > 0.0 && sv(i) > 1e-10 * sv(0)) ++r;
  return svd.matrixU().leftCols(r);
}

CMatrix kernel(const CMatrix& m) {
  if (m.rows() == 0) return CMatrix::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(0) > 0.0 && sv(i) > 1e-10 * sv(0)) ++r;
  return svd.matrixV().rightCols(m.cols() - r);
}

Graph adjoint(const Graph& t) {
  // (v; u) with Y* v - X* u = 0.
  CMatrix constraint(t.pairs.cols(), t.m + t.n);
  constraint << t.pairs.bottomRows(t.m).adjoint(), -t.pairs.topRows(t.n).adjoint();
  return Graph{t.m, t.n, kernel(constraint)};
}

Parts parts(const Graph& t) {
  const CMatrix x = t.pairs.topRows(t.n);
  const CMatrix y = t.pairs.bottomRows(t.m);
  Parts out;
  out.dom = orth(x);
  out.mul = orth(CMatrix(y * kernel(x)));
  const CMatrix p_perp = CMatrix::Identity(t.m, t.m) - out.mul * out.mul.adjoint();
  Eigen::CompleteOrthogonalDecomposition<CMatrix> cod;
  cod.setThreshold(1e-10);
  cod.compute(x);
  out.op = x.cols() == 0 ? CMatrix(CMatrix::Zero(t.m, t.n)) : CMatrix(p_perp * y * cod.pseudoInverse());
  return out;
}

std::optional<double> min_lambda(const CMatrix& m1, const CMatrix& m2) {
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m2 + m2.adjoint()));
  const Eigen::VectorXd ev = es.eigenvalues();
  const double top = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  std::vector<Eigen::Index> live;
  std::vector<Eigen::Index> dead;
  for (Eigen::Index i = 0; i < ev.size(); ++i) (ev(i) > 1e-10 * top ? live : dead).push_back(i);
  const double scale = 1.0 + m1.norm();
  for (Eigen::Index i : dead) {
    const CVector v = es.eigenvectors().col(i);
    if (std::abs(v.dot(m1 * v)) > 1e-9 * scale) return std::nullopt;
  }
  if (live.empty()) return 0.0;
  CMatrix w(m2.rows(), static_cast<Eigen::Index>(live.size()));
  for (std::size_t k = 0; k < live.size(); ++k)
    w.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(live[k]) / std::sqrt(ev(live[k]));
  return std::max(0.0, herm_eigenvalues(CMatrix(w.adjoint() * m1 * w)).maxCoeff());
}

double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<CMatrix>(m).singularValues()(0);
}

}  // namespace oracle
