#include <cmath>
#include <limits>
#include <utility>

#include "factor_detail.hpp"

namespace psdfactor {

using detail::psd_defect;
using detail::rel_residual;
using detail::vanishing_on;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shrink factor used to confirm that lambda* is minimal.
constexpr double kMinimalityShrink = 1e-4;

// Operator parts larger or smaller than this by norm are rescaled before the
// graph of T*B is formed; both lambda* and X are invariant under T, B -> cT, cB.
constexpr double kRescaleAbove = 1e2;

// Orthonormal basis of ker(T_s)* = (ran T_s)^perp inside K.
Subspace operator_part_cokernel(const RelParts& p) {
  return image(p.operator_part_matrix, p.dom).complement();
}

}  // namespace

bool all_pass(const CheckList& checks) {
  for (const Check& c : checks)
    if (!c.pass) return false;
  return true;
}

void add_check(CheckList& checks, std::string name, double value, double tol) {
  checks.push_back({std::move(name), value, tol, value <= tol});
}

void add_flag(CheckList& checks, std::string name, bool holds) {
  checks.push_back({std::move(name), holds ? 0.0 : 1.0, 0.0, holds});
}

DouglasResult douglas_solve(const CMatrix& t, const CMatrix& b, double tol) {
  detail::require_same_shape(t, b, "douglas_solve: T and B must have the same shape");
  DouglasResult out;
  const CMatrix ker_b = null_space(b);
  const double leak = vanishing_on(t, ker_b);
  out.feasible = leak <= tol;
  add_check(out.checks, "ker B inside ker T", leak, tol);
  out.Y = t * moore_penrose(b);
  out.c = op_norm(out.Y);
  if (out.feasible) {
    add_check(out.checks, "Y B = T", rel_residual(out.Y * b, t), tol);
    const Subspace ran_t = Subspace::range_of(t);
    const CMatrix outside = out.Y - ran_t.projector() * out.Y;
    add_check(out.checks, "ran Y inside closure of ran T", op_norm(outside) / (1.0 + out.c), tol);
    add_check(out.checks, "ker B* inside ker Y", vanishing_on(out.Y, null_space(b.adjoint())), tol);
  }
  return out;
}

SebCertificate seb_solve(const CMatrix& t, const CMatrix& b, double tol) {
  detail::require_same_shape(t, b, "seb_solve: T and B must have the same shape");
  const Index m = t.rows();
  const CMatrix tb = t.adjoint() * b;
  if (!is_hermitian(tb, tol) || !is_psd(hermitian_part(tb), tol)) {
    throw Error(ErrorCode::HypothesisFailed, "seb_solve: T*B is not Hermitian PSD");
  }
  SebCertificate out;
  if (frobenius(t) == 0.0) {
    out.feasible = true;
    out.X = zeros(m, m);
    out.G0 = zeros(m, t.cols());
    add_check(out.checks, "X B = T", 0.0, tol);
    return out;
  }
  const CMatrix mh = hermitian_part(tb);
  const double leak = vanishing_on(t, null_space(mh));
  add_check(out.checks, "ker T*B inside ker T", leak, tol);
  if (leak > tol) {
    out.lambda_star = kInf;
    out.X = zeros(m, m);
    out.G0 = zeros(m, t.cols());
    out.norm_X = 0.0;
    out.residual_xb_t = kInf;
    return out;
  }
  out.feasible = true;
  const CMatrix root_pinv = psd_power(mh, -0.5, tol);
  const CMatrix t_root = t * root_pinv;
  out.lambda_star = std::pow(op_norm(t_root), 2);
  out.G0 = t_root / std::sqrt(out.lambda_star);
  out.X = hermitian_part(out.lambda_star * out.G0 * out.G0.adjoint());
  out.norm_X = op_norm(out.X);
  out.residual_xb_t = frobenius(out.X * b - t) / (1.0 + frobenius(t));

  add_check(out.checks, "X B = T", out.residual_xb_t, tol);
  add_check(out.checks, "X PSD", psd_defect(out.X), tol);
  add_check(out.checks, "||X|| <= lambda*", std::max(0.0, out.norm_X - out.lambda_star), tol);
  add_check(out.checks, "||G0|| <= 1", std::max(0.0, op_norm(out.G0) - 1.0), tol);
  const CMatrix ker_tstar = null_space(t.adjoint());
  const bool same_rank = rank(out.X) == m - ker_tstar.cols();
  add_flag(out.checks, "rank X = rank T*", same_rank);
  add_check(out.checks, "ker T* inside ker X", vanishing_on(out.X, ker_tstar), tol);
  const CMatrix tt = t.adjoint() * t;
  const LoewnerResult ineq = loewner_leq(hermitian_part(tt), out.lambda_star * mh, tol);
  add_check(out.checks, "T*T <= lambda* T*B", std::max(0.0, -ineq.margin) / (1.0 + op_norm(tt)), tol);
  const LoewnerResult rem = loewner_leq(mh, out.norm_X * hermitian_part(b.adjoint() * b), tol);
  add_check(out.checks, "T*B <= ||X|| B*B", std::max(0.0, -rem.margin) / (1.0 + op_norm(mh)), tol);
  return out;
}

SebRelCertificate seb_relation_solve(const LinRel& t, const LinRel& b, double tol) {
  if (t.dom_dim() != b.dom_dim() || t.codom_dim() != b.codom_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "seb_relation_solve: T and B differ in shape");
  }
  const Index n = t.dom_dim();
  const Index m = t.codom_dim();
  const RelParts tp = rel_parts(t);
  const RelParts bp = rel_parts(b);
  const Subspace coker_ts = operator_part_cokernel(tp);
  if (!coker_ts.contains(bp.mul, std::max(tol, kSubspaceTol))) {
    throw Error(ErrorCode::HypothesisFailed, "seb_relation_solve: mul B is not inside ker (T_s)*");
  }
  const double scale = std::max(op_norm(tp.operator_part_matrix), op_norm(bp.operator_part_matrix));
  if (scale > kRescaleAbove || (scale > 0.0 && scale < 1.0 / kRescaleAbove)) {
    SebRelCertificate out = seb_relation_solve(t.scaled(1.0 / scale), b.scaled(1.0 / scale), tol);
    out.B0 = rel_restrict(b, rel_parts(out.B0).dom);
    return out;
  }
  const LinRel tstar = rel_adjoint(t);
  const LinRel tb = rel_compose(tstar, b);
  const RelClass tb_class = rel_classify(tb, tol);
  if (!tb_class.selfadjoint) {
    throw Error(ErrorCode::HypothesisFailed, "seb_relation_solve: T*B is not selfadjoint");
  }

  SebRelCertificate out;
  const RelParts mp = rel_parts(tb);
  out.B0 = rel_restrict(b, mp.dom);
  out.equality_mode = rel_parts(out.B0).dom.contains(tp.dom, std::max(tol, kSubspaceTol));
  const CMatrix ts = tp.operator_part_matrix;
  const CMatrix pd = mp.dom.projector();
  const CMatrix ms = hermitian_part(pd * mp.operator_part_matrix * pd);

  const bool dom_ok = tp.dom.contains(mp.dom, std::max(tol, kSubspaceTol));
  add_flag(out.checks, "dom T*B inside dom T", dom_ok);
  const Subspace ker_ms = intersect(mp.dom, Subspace::kernel_of(ms));
  const double leak = vanishing_on(ts, ker_ms.basis());
  add_check(out.checks, "ker (T*B)_s inside ker T_s", leak, tol);
  const double ts_on_dom = vanishing_on(ts, mp.dom.basis());

  bool feasible = dom_ok && leak <= tol;
  if (feasible && !tb_class.nonnegative) {
    // A form that is not nonnegative can only dominate T*T with lambda = 0.
    feasible = ts_on_dom <= tol;
  }
  out.feasible = feasible;
  out.X = zeros(m, m);
  out.G0 = zeros(m, n);
  if (!feasible) {
    out.lambda_star = kInf;
    return out;
  }

  if (ts_on_dom > 0.0 && tb_class.nonnegative) {
    const CMatrix t_root = ts * psd_power(ms, -0.5, tol);
    out.lambda_star = std::pow(op_norm(t_root), 2);
    if (out.lambda_star > 0.0) {
      out.G0 = t_root / std::sqrt(out.lambda_star);
      out.X = hermitian_part(out.lambda_star * out.G0 * out.G0.adjoint());
    }
  }
  const double check_tol = std::max(tol, kSubspaceTol);

  add_check(out.checks, "X PSD", psd_defect(out.X), tol);
  add_check(out.checks, "||X|| <= lambda*", std::max(0.0, op_norm(out.X) - out.lambda_star), tol);

  const LinRel x_rel = rel_from_matrix(out.X);
  const LinRel xb0 = rel_compose(x_rel, out.B0);
  const LinRel ts_rel = rel_operator_part(t);
  add_flag(out.checks, "X B0 inside T_s", rel_contains(ts_rel, xb0, check_tol));

  const LinRel b0star = rel_adjoint(out.B0);
  const LinRel lhs = rel_compose(tstar, out.B0);
  const LinRel mid = rel_compose(b0star, xb0);
  const LinRel rhs = rel_compose(b0star, t);
  add_check(out.checks, "T* B0 = B0* X B0", rel_distance(lhs, mid), check_tol);
  add_check(out.checks, "B0* X B0 = B0* T", rel_distance(mid, rhs), check_tol);
  add_check(out.checks, "ker (T_s)* inside ker X", vanishing_on(out.X, coker_ts.basis()), tol);

  const LinRel tt = rel_compose(tstar, t);
  if (out.lambda_star > 0.0) {
    add_flag(out.checks, "T*T <= lambda* T*B", rel_order_leq(tt, tb.scaled(out.lambda_star), tol));
    add_flag(out.checks, "lambda* minimal",
             !rel_order_leq(tt, tb.scaled(out.lambda_star * (1.0 - kMinimalityShrink)), tol));
    const LinRel tb0 = rel_compose(tstar, out.B0);
    add_flag(out.checks, "T*T <= ||X|| T*B0",
             rel_order_leq(tt, tb0.scaled(op_norm(out.X)), tol));
  }

  if (out.equality_mode) {
    const LinRel rebuilt = rel_graph_sum(xb0, rel_mul_part(t));
    add_check(out.checks, "T = X B0 + T_mul", rel_distance(rebuilt, t), check_tol);
    const Subspace ker_x = Subspace::kernel_of(out.X);
    add_check(out.checks, "ker X = ker (T_s)*", distance(ker_x, coker_ts), check_tol);
  }
  return out;
}

ReverseCertificate reverse_solve(const LinRel& t, const LinRel& b, double tol) {
  if (t.dom_dim() != b.dom_dim() || t.codom_dim() != b.codom_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "reverse_solve: T and B differ in shape");
  }
  const Index n = t.dom_dim();
  const Index m = t.codom_dim();
  const double check_tol = std::max(tol, kSubspaceTol);

  const LinRel bstar = rel_adjoint(b);
  const LinRel tstar = rel_adjoint(t);
  const LinRel bt = rel_compose(bstar, t);
  const RelClass bt_class = rel_classify(bt, tol);
  if (!(bt_class.selfadjoint && bt_class.nonnegative)) {
    throw Error(ErrorCode::HypothesisFailed, "reverse_solve: B*T is not nonnegative selfadjoint");
  }
  const RelParts tp = rel_parts(t);
  const RelParts tsp = rel_parts(tstar);
  const Subspace ker_tstar_mul_t = sum(tsp.ker, tp.mul);
  if (!ker_tstar_mul_t.contains(rel_parts(bstar).ker, check_tol)) {
    throw Error(ErrorCode::HypothesisFailed, "reverse_solve: ker B* is not inside ker T* + mul T");
  }

  ReverseCertificate out;
  const Subspace ran_bt = rel_parts(bt).ran;
  out.B0 = LinRel(m, n, intersect(bstar.graph(), cartesian(Subspace::full(m), ran_bt)));

  const LinRel s = rel_inverse(tstar);
  const LinRel a = rel_inverse(bstar);
  const SebRelCertificate dual = seb_relation_solve(s, a, tol);
  out.dual_lambda_star = dual.lambda_star;
  out.feasible = dual.feasible;
  add_flag(out.checks, "dual problem feasible", dual.feasible);
  if (!dual.feasible) {
    out.eta_star = 0.0;
    return out;
  }
  out.eta_star = dual.lambda_star > 0.0 ? 1.0 / dual.lambda_star : kInf;
  out.Y_inverse = dual.X;
  out.Y = rel_inverse(rel_from_matrix(dual.X));

  add_check(out.checks, "Y^{-1} PSD", psd_defect(out.Y_inverse), tol);
  const LinRel b0star = rel_adjoint(out.B0);
  const LinRel yb0star = rel_compose(out.Y, b0star);
  add_flag(out.checks, "T inside Y B0*", rel_contains(yb0star, t, check_tol));

  const LinRel b0t = rel_compose(out.B0, t);
  const LinRel b0yb0 = rel_compose(out.B0, yb0star);
  const LinRel tsb0 = rel_compose(tstar, b0star);
  add_check(out.checks, "B*T = B0 T", rel_distance(bt, b0t), check_tol);
  add_check(out.checks, "B0 T = B0 Y B0*", rel_distance(b0t, b0yb0), check_tol);
  add_check(out.checks, "B0 Y B0* = T* B0*", rel_distance(b0yb0, tsb0), check_tol);

  const LinRel tt = rel_compose(tstar, t);
  if (std::isfinite(out.eta_star)) {
    add_flag(out.checks, "T*T >= eta* B0 T", rel_order_leq(b0t.scaled(out.eta_star), tt, tol));
  }
  const Subspace mul_y = rel_parts(out.Y).mul;
  add_flag(out.checks, "ker T* + mul T inside mul Y", mul_y.contains(ker_tstar_mul_t, check_tol));

  const Subspace ran_b0 = rel_parts(out.B0).ran;
  out.range_condition = ran_b0.contains(tsp.ran, check_tol);
  if (out.range_condition) {
    const LinRel kernel_part = LinRel::span(tsp.ker.basis(), zeros(n, tsp.ker.dim()));
    const LinRel rebuilt = rel_graph_sum(rel_compose(out.B0, out.Y), kernel_part);
    add_check(out.checks, "T* = B0 Y + (ker T* x {0})", rel_distance(rebuilt, tstar), check_tol);
    add_check(out.checks, "mul Y = mul T + ker T*", distance(mul_y, ker_tstar_mul_t), check_tol);
  }
  return out;
}

}  // namespace psdfactor
