#include "psdfactor/linrel.hpp"

#include <string>

#include <Eigen/SVD>

namespace psdfactor {

namespace {

// Graph blocks are sub-blocks of orthonormal matrices, so their singular values
// live in [0, 1] and an absolute threshold is the meaningful one.
CMatrix block_null_space(const CMatrix& m) {
  const Index n = m.cols();
  if (n == 0) return CMatrix(0, 0);
  if (m.rows() == 0) return identity(n);
  Eigen::BDCSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  const double thr = kRankThreshold * std::max(1.0, s.size() ? s(0) : 0.0);
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > thr) ++r;
  return svd.matrixV().rightCols(n - r);
}

CMatrix stack(const CMatrix& top, const CMatrix& bottom) {
  CMatrix out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

void require_square_rel(const LinRel& t, const char* what) {
  if (!t.is_square()) {
    throw Error(ErrorCode::NotSquare, std::string(what) + ": relation is " +
                                          std::to_string(t.dom_dim()) + " -> " +
                                          std::to_string(t.codom_dim()));
  }
}

void require_nonneg_selfadjoint(const LinRel& t, double tol, const char* what) {
  const RelClass c = rel_classify(t, tol);
  if (!(c.selfadjoint && c.nonnegative)) {
    throw Error(ErrorCode::NotNonnegSelfadjoint, std::string(what));
  }
}

}  // namespace

LinRel::LinRel(Index dom_dim, Index codom_dim, Subspace graph)
    : n_(dom_dim), m_(codom_dim), graph_(std::move(graph)) {
  if (graph_.ambient_dim() != n_ + m_) {
    throw Error(ErrorCode::DimensionMismatch,
                "graph lives in C^" + std::to_string(graph_.ambient_dim()) + ", expected C^" +
                    std::to_string(n_ + m_));
  }
}

LinRel LinRel::span(const CMatrix& xs, const CMatrix& ys) {
  if (xs.cols() != ys.cols()) throw Error(ErrorCode::DimensionMismatch, "LinRel::span");
  const CMatrix st = stack(xs, ys);
  if (st.cols() == 0) return LinRel(xs.rows(), ys.rows(), Subspace::zero(st.rows()));
  return LinRel(xs.rows(), ys.rows(), Subspace::span(st));
}

LinRel LinRel::scaled(Complex c) const { return span(x_block(), c * y_block()); }

LinRel rel_from_matrix(const CMatrix& m) { return LinRel::span(identity(m.cols()), m); }

LinRel rel_from_matrix_on(const CMatrix& m, const Subspace& d) {
  if (d.ambient_dim() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "rel_from_matrix_on");
  return LinRel::span(d.basis(), m * d.basis());
}

LinRel rel_pure_mul(Index dom_dim, const Subspace& mul) {
  return LinRel::span(zeros(dom_dim, mul.dim()), mul.basis());
}

RelParts rel_parts(const LinRel& t) {
  const Index n = t.dom_dim();
  const Index m = t.codom_dim();
  const CMatrix qx = t.x_block();
  const CMatrix qy = t.y_block();
  RelParts p;
  p.dom = qx.cols() ? Subspace::span(qx) : Subspace::zero(n);
  p.ran = qy.cols() ? Subspace::span(qy) : Subspace::zero(m);
  const CMatrix ker_coeff = block_null_space(qy);
  p.ker = ker_coeff.cols() ? Subspace::span(qx * ker_coeff) : Subspace::zero(n);
  const CMatrix mul_coeff = block_null_space(qx);
  p.mul = mul_coeff.cols() ? Subspace::span(qy * mul_coeff) : Subspace::zero(m);
  const CMatrix ps = p.mul.complement().projector();
  p.operator_part_matrix = qx.cols() ? CMatrix(ps * qy * moore_penrose(qx)) : zeros(m, n);
  return p;
}

LinRel rel_operator_part(const LinRel& t) {
  const RelParts p = rel_parts(t);
  return rel_from_matrix_on(p.operator_part_matrix, p.dom);
}

LinRel rel_mul_part(const LinRel& t) { return rel_pure_mul(t.dom_dim(), rel_parts(t).mul); }

LinRel rel_adjoint(const LinRel& t) {
  const Index n = t.dom_dim();
  const Index m = t.codom_dim();
  if (t.graph().is_zero()) return LinRel(m, n, Subspace::full(m + n));
  const CMatrix jq = stack(t.y_block(), -t.x_block());
  return LinRel(m, n, Subspace(m + n, jq).complement());
}

LinRel rel_inverse(const LinRel& t) {
  if (t.graph().is_zero()) return LinRel(t.codom_dim(), t.dom_dim(), Subspace::zero(t.graph().ambient_dim()));
  return LinRel(t.codom_dim(), t.dom_dim(),
                Subspace(t.graph().ambient_dim(), stack(t.y_block(), t.x_block())));
}

LinRel rel_compose(const LinRel& s, const LinRel& t) {
  if (t.codom_dim() != s.dom_dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "rel_compose: T maps into C^" + std::to_string(t.codom_dim()) + ", S starts at C^" +
                    std::to_string(s.dom_dim()));
  }
  const Index n = t.dom_dim();
  const Index l = s.codom_dim();
  const Index dt = t.graph().dim();
  const Index ds = s.graph().dim();
  // Pairs (a, b) of graph coefficients that meet in the middle space.
  CMatrix meet(t.codom_dim(), dt + ds);
  meet << t.y_block(), -s.x_block();
  const CMatrix ns = block_null_space(meet);
  if (ns.cols() == 0) return LinRel(n, l, Subspace::zero(n + l));
  return LinRel::span(t.x_block() * ns.topRows(dt), s.y_block() * ns.bottomRows(ds));
}

LinRel rel_restrict(const LinRel& b, const Subspace& d) {
  if (d.ambient_dim() != b.dom_dim()) throw Error(ErrorCode::DimensionMismatch, "rel_restrict");
  return LinRel(b.dom_dim(), b.codom_dim(),
                intersect(b.graph(), cartesian(d, Subspace::full(b.codom_dim()))));
}

LinRel rel_graph_sum(const LinRel& a, const LinRel& b) {
  if (a.dom_dim() != b.dom_dim() || a.codom_dim() != b.codom_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "rel_graph_sum");
  }
  return LinRel(a.dom_dim(), a.codom_dim(), sum(a.graph(), b.graph()));
}

LinRel rel_closure(const LinRel& t) { return t; }

RelClass rel_classify(const LinRel& t, double tol) {
  require_square_rel(t, "rel_classify");
  RelClass c;
  const CMatrix f = t.x_block().adjoint() * t.y_block();
  const double fn = frobenius(f);
  c.symmetric = frobenius(f - f.adjoint()) <= tol * (1.0 + fn);
  c.nonnegative = c.symmetric && (f.size() == 0 || min_eigenvalue(f) >= -tol * (1.0 + fn));
  const LinRel adj = rel_adjoint(t);
  c.selfadjoint = distance(t.graph(), adj.graph()) <= tol;
  return c;
}

LinRel rel_sqrt(const LinRel& t, double tol) {
  require_nonneg_selfadjoint(t, tol, "rel_sqrt needs a nonnegative selfadjoint relation");
  const RelParts p = rel_parts(t);
  const CMatrix pd = p.dom.projector();
  const CMatrix ms = hermitian_part(pd * p.operator_part_matrix * pd);
  const CMatrix root = psd_power(ms, 0.5, std::max(tol, kDefaultTol));
  const Index n = t.dom_dim();
  CMatrix xs = zeros(n, p.dom.dim() + p.mul.dim());
  CMatrix ys = zeros(n, p.dom.dim() + p.mul.dim());
  xs.leftCols(p.dom.dim()) = p.dom.basis();
  ys.leftCols(p.dom.dim()) = root * p.dom.basis();
  ys.rightCols(p.mul.dim()) = p.mul.basis();
  return LinRel::span(xs, ys);
}

CMatrix rel_resolvent(const LinRel& t, double tol) {
  require_nonneg_selfadjoint(t, tol, "rel_resolvent needs a nonnegative selfadjoint relation");
  const Index n = t.dom_dim();
  if (n == 0) return CMatrix(0, 0);
  // Graph of (I + T)^{-1} is {(x + y, x)}; x + y ranges over all of H.
  const CMatrix qx = t.x_block();
  const CMatrix sum_block = qx + t.y_block();
  const CMatrix r = qx * sum_block.partialPivLu().inverse();
  return hermitian_part(r);
}

LoewnerResult rel_order(const LinRel& lo, const LinRel& hi, double tol) {
  if (lo.dom_dim() != hi.dom_dim()) throw Error(ErrorCode::DimensionMismatch, "rel_order");
  return loewner_leq(rel_resolvent(hi, tol), rel_resolvent(lo, tol), tol);
}

bool rel_order_leq(const LinRel& lo, const LinRel& hi, double tol) {
  return rel_order(lo, hi, tol).ordered;
}

LinRel rel_moore_penrose(const LinRel& t) {
  return rel_from_matrix(moore_penrose(rel_parts(t).operator_part_matrix));
}

double rel_distance(const LinRel& a, const LinRel& b) {
  if (a.dom_dim() != b.dom_dim() || a.codom_dim() != b.codom_dim()) return 1.0;
  return distance(a.graph(), b.graph());
}

bool rel_equal(const LinRel& a, const LinRel& b, double tol) { return rel_distance(a, b) <= tol; }

bool rel_contains(const LinRel& big, const LinRel& small, double tol) {
  if (big.dom_dim() != small.dom_dim() || big.codom_dim() != small.codom_dim()) return false;
  return big.graph().contains(small.graph(), tol);
}

}  // namespace psdfactor
