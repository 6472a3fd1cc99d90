#pragma once

// Linear relations between finite-dimensional spaces, carried by their graphs.
// A relation H -> K is a subspace of H x K with pairs stacked as (x; y).

#include "psdfactor/subspace.hpp"

namespace psdfactor {

class LinRel {
 public:
  LinRel() = default;
  LinRel(Index dom_dim, Index codom_dim, Subspace graph);

  /// Span of the stacked columns (x_j; y_j).
  static LinRel span(const CMatrix& xs, const CMatrix& ys);

  Index dom_dim() const noexcept { return n_; }
  Index codom_dim() const noexcept { return m_; }
  const Subspace& graph() const noexcept { return graph_; }
  double tol() const noexcept { return graph_.tol(); }

  /// Upper (x) and lower (y) blocks of the graph basis.
  CMatrix x_block() const { return graph_.basis().topRows(n_); }
  CMatrix y_block() const { return graph_.basis().bottomRows(m_); }

  bool is_square() const noexcept { return n_ == m_; }
  /// {(x, c y)}.
  LinRel scaled(Complex c) const;

 private:
  Index n_ = 0;
  Index m_ = 0;
  Subspace graph_;
};

struct RelParts {
  Subspace dom;
  Subspace ran;
  Subspace ker;
  Subspace mul;
  /// m x n matrix of T_s = P_s T on dom T, zero on (dom T)^perp.
  CMatrix operator_part_matrix;
};

struct RelClass {
  bool symmetric = false;
  bool nonnegative = false;
  bool selfadjoint = false;
};

LinRel rel_from_matrix(const CMatrix& m);
/// Graph of M restricted to the subspace D.
LinRel rel_from_matrix_on(const CMatrix& m, const Subspace& d);
/// {0} x M.
LinRel rel_pure_mul(Index dom_dim, const Subspace& mul);

RelParts rel_parts(const LinRel& t);
/// T_s as a relation with the same domain as T.
LinRel rel_operator_part(const LinRel& t);
/// T_mul = {0} x mul T.
LinRel rel_mul_part(const LinRel& t);

LinRel rel_adjoint(const LinRel& t);
LinRel rel_inverse(const LinRel& t);
/// S T, i.e. first T then S.
LinRel rel_compose(const LinRel& s, const LinRel& t);
/// B restricted to D: B intersected with D x K.
LinRel rel_restrict(const LinRel& b, const Subspace& d);
/// Componentwise sum {(x + u, y + v)} of graphs; with trivially intersecting
/// graphs this is the direct sum written T_s (+) T_mul.
LinRel rel_graph_sum(const LinRel& a, const LinRel& b);
/// Relations are stored closed, so closure returns its argument.
LinRel rel_closure(const LinRel& t);

RelClass rel_classify(const LinRel& t, double tol = kDefaultTol);
LinRel rel_sqrt(const LinRel& t, double tol = kDefaultTol);

/// Everywhere defined contraction (I + T)^{-1} of a nonnegative selfadjoint relation.
CMatrix rel_resolvent(const LinRel& t, double tol = kDefaultTol);
LoewnerResult rel_order(const LinRel& lo, const LinRel& hi, double tol = kDefaultTol);
bool rel_order_leq(const LinRel& lo, const LinRel& hi, double tol = kDefaultTol);

/// Moore-Penrose inverse of the operator part, everywhere defined K -> H.
LinRel rel_moore_penrose(const LinRel& t);

double rel_distance(const LinRel& a, const LinRel& b);
bool rel_equal(const LinRel& a, const LinRel& b, double tol = kSubspaceTol);
/// small is a subset of big.
bool rel_contains(const LinRel& big, const LinRel& small, double tol = kSubspaceTol);

}  // namespace psdfactor
