// Acceptance suite: one PASS/FAIL line per criterion, tolerances as pinned
// by the acceptance contract. Exit status is the number of failed criteria.
//
// Usage: psdfactor_acceptance [--only K] [--cli PATH]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <psdfactor/cli/app.hpp>
#include <psdfactor/cli/wire.hpp>
#include <psdfactor/diagmodel.hpp>
#include <psdfactor/factor.hpp>
#include <psdfactor/random.hpp>

#include "generators.hpp"
#include "oracles.hpp"

using namespace psdfactor;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Running maximum of a measured quantity against its bound.
struct Gauge {
  double worst = 0.0;
  double bound = 0.0;
  int violations = 0;

  void add(double value, double limit) {
    const double ratio = limit > 0.0 ? value / limit : (value > 0.0 ? INFINITY : 0.0);
    if (!(value <= limit)) ++violations;
    if (ratio > (bound > 0.0 ? worst / bound : 0.0) || worst == 0.0) {
      worst = value;
      bound = limit;
    }
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string gauge_text(const std::string& name, const Gauge& g) {
  return name + " " + sci(g.worst) + " (bound " + sci(g.bound) + ", " + std::to_string(g.violations) + " over)";
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double rel_res(const CMatrix& a, const CMatrix& b) {
  return (a - b).norm() / (1.0 + std::max(a.norm(), b.norm()));
}

/// Hermitian and PSD defect, relative to the size of m.
double psd_defect(const CMatrix& m) {
  const double scale = 1.0 + m.norm();
  const double herm = (m - m.adjoint()).norm() / scale;
  const double neg = std::max(0.0, -oracle::herm_min_eig(CMatrix(0.5 * (m + m.adjoint())))) / scale;
  return std::max(herm, neg);
}

oracle::Graph graph(const LinRel& r) {
  return {static_cast<int>(r.dom_dim()), static_cast<int>(r.codom_dim()), r.graph().basis()};
}

oracle::Graph matrix_graph(const CMatrix& m) {
  CMatrix pairs(m.cols() + m.rows(), m.cols());
  pairs << CMatrix::Identity(m.cols(), m.cols()), m;
  return {static_cast<int>(m.cols()), static_cast<int>(m.rows()), pairs};
}

CVector with_zero(const CVector& v) {
  CVector out(v.size() + 1);
  out << v, Complex(0.0);
  return out;
}

CVector eig(const CMatrix& m) { return Eigen::ComplexEigenSolver<CMatrix>(m, false).eigenvalues(); }

// ---------------------------------------------------------------------------

Outcome criterion1() {
  constexpr int kInstances = 1000;
  Gauge residual;
  Gauge norm_excess;
  int infeasible = 0;
  int kernel_mismatch = 0;
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < kInstances; ++i) {
    Rng rng(splitmix64(0xC1, static_cast<std::uint64_t>(i)));
    const gen::PlantedSeb p = gen::planted_seb(rng, rng.uniform_int(2, 8));
    const SebCertificate c = seb_solve(p.T, p.B);
    if (!c.feasible) {
      ++infeasible;
      continue;
    }
    residual.add((c.X * p.B - p.T).norm(), 1e-8 * (1.0 + p.T.norm()));
    norm_excess.add(oracle::op_norm(c.X) - c.lambda_star, 1e-8);
    const CMatrix ker_ts = oracle::kernel(p.T.adjoint());
    const bool same_rank = oracle::numerical_rank(c.X) == oracle::numerical_rank(p.T.adjoint());
    const bool contains = ker_ts.cols() == 0 || (c.X * ker_ts).norm() <= 1e-8 * (1.0 + c.X.norm());
    if (!same_rank || !contains) ++kernel_mismatch;
  }
  const double runtime = seconds_since(start);
  Outcome o;
  o.pass = infeasible == 0 && residual.violations == 0 && norm_excess.violations == 0 && kernel_mismatch == 0 &&
           runtime <= 30.0;
  o.detail = std::to_string(kInstances) + " planted; infeasible " + std::to_string(infeasible) + "; " +
             gauge_text("|XB-T|_F", residual) + "; " + gauge_text("|X|-lambda*", norm_excess) +
             "; ker X != ker T* in " + std::to_string(kernel_mismatch) + "; runtime " + sci(runtime) +
             " s (limit 30 s)";
  return o;
}

Outcome criterion2() {
  constexpr int kPerDim = 200;
  int disagreements = 0;
  int bracket_misses = 0;
  int feasible_count = 0;
  int total = 0;
  for (int n = 2; n <= 8; ++n) {
    for (int i = 0; i < kPerDim; ++i, ++total) {
      Rng rng(splitmix64(0xC2 + static_cast<std::uint64_t>(n) * 1000, static_cast<std::uint64_t>(i)));
      CMatrix t;
      CMatrix b;
      if (i % 2 == 0) {
        const auto p = gen::planted_seb(rng, n);
        t = p.T;
        b = p.B;
      } else {
        const auto p = gen::planted_seb_infeasible(rng, n);
        t = p.T;
        b = p.B;
      }
      const SebCertificate c = seb_solve(t, b);
      const std::optional<double> sweep = oracle::lambda_sweep(t, b, 64, 1e-4, 1e4);
      if (c.feasible != sweep.has_value()) {
        ++disagreements;
        continue;
      }
      if (!c.feasible) continue;
      ++feasible_count;
      // The sweep returns the first grid point at or above lambda*.
      const double ratio = std::pow(1e8, 1.0 / 63.0);
      if (c.lambda_star > *sweep * (1.0 + 1e-6) || c.lambda_star < *sweep / ratio * (1.0 - 1e-6)) ++bracket_misses;
    }
  }
  Outcome o;
  o.pass = disagreements == 0 && bracket_misses == 0;
  o.detail = std::to_string(total) + " pairs over n = 2..8 (" + std::to_string(feasible_count) +
             " feasible); verdict disagreements " + std::to_string(disagreements) +
             "; lambda* outside its sweep bracket " + std::to_string(bracket_misses);
  return o;
}

Outcome criterion3() {
  constexpr int kInstances = 200;
  int hypothesis_violations = 0;
  int verdict_mismatch = 0;
  int i_implies_ii_fail = 0;
  int ii_implies_i_fail = 0;
  int feasible_count = 0;
  Gauge eq34;
  Gauge containment;
  Gauge lambda_gap;
  for (int i = 0; i < kInstances; ++i) {
    Rng rng(splitmix64(0xC3, static_cast<std::uint64_t>(i)));
    const Index n = rng.uniform_int(2, 6);
    const Index k = rng.uniform_int(1, 3);
    const bool planted_feasible = i % 2 == 0;
    const gen::PlantedRelations p = gen::planted_relations(rng, n, k, planted_feasible);
    const oracle::Graph gt = graph(p.T);
    const oracle::Graph gb = graph(p.B);
    const oracle::Parts pt = oracle::parts(gt);
    const oracle::Parts pb = oracle::parts(gb);
    if (pb.mul.cols() == 0 || pt.mul.cols() == 0 || (pt.op.adjoint() * pb.mul).norm() > 1e-9) {
      ++hypothesis_violations;
      continue;
    }
    // Form bound on the common domain: T*T <= lambda T*B.
    const CMatrix dom = oracle::orth(CMatrix(pt.dom * pt.dom.adjoint() * pb.dom));
    const CMatrix ts = pt.op * dom;
    const CMatrix bs = pb.op * dom;
    const CMatrix m1 = ts.adjoint() * ts;
    const CMatrix m2 = ts.adjoint() * bs;
    const std::optional<double> lambda_oracle = oracle::min_lambda(m1, CMatrix(0.5 * (m2 + m2.adjoint())));

    const SebRelCertificate c = seb_relation_solve(p.T, p.B);
    if (c.feasible != lambda_oracle.has_value() || c.feasible != planted_feasible) {
      ++verdict_mismatch;
      continue;
    }
    if (!c.feasible) continue;
    ++feasible_count;

    // Form bound => factorization: X bounded PSD, X B0 inside T, B0* X B0 = T* B0 = B0* T.
    const oracle::Graph gb0 = graph(c.B0);
    oracle::Graph xb0 = gb0;
    xb0.pairs.bottomRows(xb0.m) = c.X * gb0.pairs.bottomRows(gb0.m);
    const double excess = oracle::graph_excess(gt, xb0);
    containment.add(excess, 1e-8);
    const oracle::Graph b0_adj = oracle::adjoint(gb0);
    const oracle::Graph lhs = oracle::compose(b0_adj, oracle::compose(matrix_graph(c.X), gb0));
    const oracle::Graph mid = oracle::compose(oracle::adjoint(gt), gb0);
    const oracle::Graph rhs = oracle::compose(b0_adj, gt);
    const double d34 = std::max(oracle::graph_distance(lhs, mid), oracle::graph_distance(mid, rhs));
    eq34.add(d34, 1e-8);
    const CMatrix ker_ts_adj = oracle::kernel(pt.op.adjoint());
    const bool ker_ok = ker_ts_adj.cols() == 0 || (c.X * ker_ts_adj).norm() <= 1e-8 * (1.0 + c.X.norm());
    if (psd_defect(c.X) > 1e-8 || excess > 1e-8 || d34 > 1e-8 || !ker_ok) ++i_implies_ii_fail;

    // Factorization => form bound: lambda = ||X|| satisfies T*T <= lambda T*B, and it is minimal.
    const double lam = oracle::op_norm(c.X);
    const CMatrix gap = lam * CMatrix(0.5 * (m2 + m2.adjoint())) - m1;
    if (oracle::herm_min_eig(gap) < -1e-8 * (1.0 + gap.norm())) ++ii_implies_i_fail;
    lambda_gap.add(std::abs(c.lambda_star - *lambda_oracle), 1e-8 * (1.0 + *lambda_oracle));
  }
  Outcome o;
  o.pass = hypothesis_violations == 0 && verdict_mismatch == 0 && i_implies_ii_fail == 0 && ii_implies_i_fail == 0 &&
           eq34.violations == 0 && containment.violations == 0 && lambda_gap.violations == 0;
  o.detail = std::to_string(kInstances) + " relations with mul parts (" + std::to_string(feasible_count) +
             " feasible); hypothesis misses " + std::to_string(hypothesis_violations) + "; verdict mismatches " +
             std::to_string(verdict_mismatch) + "; form=>factor fails " + std::to_string(i_implies_ii_fail) +
             "; factor=>form fails " + std::to_string(ii_implies_i_fail) + "; " + gauge_text("B0*XB0/T*B0/B0*T dist", eq34) +
             "; " + gauge_text("X B0 excess", containment) + "; " + gauge_text("|lambda*-oracle|", lambda_gap);
  return o;
}

Outcome criterion4() {
  constexpr int kInstances = 200;
  int infeasible = 0;
  int range_condition = 0;
  Gauge duality_lib_eta;
  Gauge duality_lib_lambda;
  Gauge equality_form;
  for (int i = 0; i < kInstances; ++i) {
    Rng rng(splitmix64(0xC4, static_cast<std::uint64_t>(i)));
    const gen::PlantedReverse p = gen::planted_reverse(rng, rng.uniform_int(2, 8));
    const ReverseCertificate r = reverse_solve(rel_from_matrix(p.T), rel_from_matrix(p.B));
    if (!r.feasible) {
      ++infeasible;
      continue;
    }
    const CMatrix s = p.T.adjoint().inverse();
    const CMatrix a = p.B.adjoint().inverse();
    const CMatrix sa = s.adjoint() * a;
    const std::optional<double> lambda_inv = oracle::min_lambda(s.adjoint() * s, CMatrix(0.5 * (sa + sa.adjoint())));
    const double eta_oracle = oracle::reverse_eta(p.T, p.B);
    const double lambda_lib = seb_solve(s, a).lambda_star;
    duality_lib_eta.add(lambda_inv ? std::abs(r.eta_star * *lambda_inv - 1.0) : INFINITY, 1e-8);
    duality_lib_lambda.add(std::abs(eta_oracle * lambda_lib - 1.0), 1e-8);
    if (r.range_condition) {
      ++range_condition;
      const oracle::Graph t_adj = oracle::adjoint(matrix_graph(p.T));
      const oracle::Graph b_adj_y = oracle::compose(matrix_graph(p.B.adjoint()), graph(r.Y));
      equality_form.add(oracle::graph_distance(t_adj, b_adj_y), 1e-8);
    }
  }
  Outcome o;
  o.pass = infeasible == 0 && duality_lib_eta.violations == 0 && duality_lib_lambda.violations == 0 &&
           equality_form.violations == 0 && range_condition > 0;
  o.detail = std::to_string(kInstances) + " feasible planted; infeasible " + std::to_string(infeasible) + "; " +
             gauge_text("|eta*.lambda*_oracle-1|", duality_lib_eta) + "; " +
             gauge_text("|eta_oracle.lambda*-1|", duality_lib_lambda) + "; range condition in " +
             std::to_string(range_condition) + ", " + gauge_text("T*=B*Y dist", equality_form);
  return o;
}

Outcome criterion5() {
  constexpr int kAccept = 500;
  constexpr int kReject = 100;
  int construction_fail = 0;
  int plusdot_fail = 0;
  int errors = 0;
  double worst_ratio = 0.0;
  double max_cond = 0.0;
  for (int i = 0; i < kAccept; ++i) {
    Rng rng(splitmix64(0xC5, static_cast<std::uint64_t>(i)));
    const Index n = rng.uniform_int(2, 8);
    const gen::PlantedScalar p = gen::planted_scalar(rng, n, 1e4);
    max_cond = std::max(max_cond, p.cond_G);
    WSimilarForms w;
    try {
      w = wsimilar_forms(p.T);
    } catch (const Error&) {
      ++errors;
      continue;
    }
    const double bound = 1e-6 * p.cond_G * p.cond_G;
    const CMatrix& t = p.T;
    const CMatrix ts = t.adjoint();
    const auto invertible_psd = [&](const CMatrix& m) {
      return oracle::numerical_rank(m) == n ? psd_defect(m) : INFINITY;
    };
    const double x_half_res = [&] {
      const CMatrix xh = oracle::herm_power(w.X, 0.5);
      return std::max(rel_res(CMatrix(xh * t), CMatrix(w.S * xh)), rel_res(CMatrix(w.S * xh), CMatrix(xh * t)));
    }();
    const std::vector<double> residuals = {
        // W-similarity to a nonnegative selfadjoint operator.
        psd_defect(CMatrix(w.G * t * w.G.inverse())),
        // X T = T* X with X in GL+.
        rel_res(CMatrix(w.X * t), CMatrix(ts * w.X)), invertible_psd(w.X),
        // T = X1 B1 and T* = X2 B2.
        rel_res(CMatrix(w.X1 * w.B1), t), psd_defect(w.B1), invertible_psd(w.X1),
        rel_res(CMatrix(w.X2 * w.B2), ts), psd_defect(w.B2), invertible_psd(w.X2),
        // T = B X and T* = B' Y.
        rel_res(CMatrix(w.B2 * w.X2), t), rel_res(CMatrix(w.B1 * w.X1), ts),
        // T W and Z T selfadjoint nonnegative with W, Z in GL+.
        psd_defect(CMatrix(t * w.W)), invertible_psd(w.W), psd_defect(CMatrix(w.Z * t)), invertible_psd(w.Z),
        // similar to S = X^{1/2} T X^{-1/2} = S* >= 0 with the planted spectrum.
        x_half_res, psd_defect(w.S),
        oracle::hausdorff(oracle::herm_eigenvalues(CMatrix(0.5 * (w.S + w.S.adjoint()))).cast<Complex>(),
                          p.D.diagonal()) /
            (1.0 + p.D.norm()),
    };
    bool ok = true;
    for (double r : residuals) {
      worst_ratio = std::max(worst_ratio, r / bound);
      ok = ok && r <= bound;
    }
    if (!ok) ++construction_fail;

    const int rank = oracle::numerical_rank(t);
    const CMatrix ker = oracle::kernel(t);
    CMatrix joined(n, oracle::orth(t).cols() + ker.cols());
    joined << oracle::orth(t), ker;
    const bool exact = rank + ker.cols() == n && oracle::numerical_rank(joined) == n;
    if (!exact || !w.plusdot_ok) ++plusdot_fail;
  }
  int false_accepts = 0;
  for (int i = 0; i < kReject; ++i) {
    Rng rng(splitmix64(0xC5F, static_cast<std::uint64_t>(i)));
    const CMatrix t = gen::planted_non_scalar(rng, rng.uniform_int(2, 8), i % 2 == 0, 1e4);
    if (psd_similarity_decide(t).accept) ++false_accepts;
  }
  Outcome o;
  o.pass = construction_fail == 0 && plusdot_fail == 0 && errors == 0 && false_accepts == 0;
  o.detail = std::to_string(kAccept) + " scalar T (max cond(G) " + sci(max_cond) + "); construction failures " +
             std::to_string(construction_fail) + ", worst residual/(1e-6 cond^2) " + sci(worst_ratio) +
             "; rejected as non-scalar " + std::to_string(errors) + "; plusdot failures " +
             std::to_string(plusdot_fail) + "; " + std::to_string(kReject) +
             " non-scalar (Jordan / negative, cond <= 1e4): false accepts " + std::to_string(false_accepts);
  return o;
}

Outcome criterion6() {
  constexpr int kPairs = 500;
  Gauge swap;
  Gauge presimilar;
  Gauge lib_swap;
  Gauge lib_presimilar;
  for (int i = 0; i < kPairs; ++i) {
    Rng rng(splitmix64(0xC6, static_cast<std::uint64_t>(i)));
    const Index n = rng.uniform_int(2, 8);
    const CMatrix a = rng.psd(n, rng.uniform_int(1, static_cast<int>(n)));
    const CMatrix b = rng.psd(n, rng.uniform_int(1, static_cast<int>(n)));
    const CVector ab = eig(CMatrix(a * b));
    const CVector ba = eig(CMatrix(b * a));
    const CMatrix half = oracle::herm_power(a, 0.5);
    const CVector sym = oracle::herm_eigenvalues(CMatrix(half * b * half)).cast<Complex>();
    swap.add(oracle::hausdorff(with_zero(ab), with_zero(ba)), 1e-7);
    presimilar.add(oracle::hausdorff(ab, sym), 1e-7);
    lib_swap.add(spectra_swap(a, b).distance, 1e-7);
    lib_presimilar.add(presimilar_S(a, b).hausdorff_distance, 1e-7);
  }
  Outcome o;
  o.pass = swap.violations == 0 && presimilar.violations == 0 && lib_swap.violations == 0 &&
           lib_presimilar.violations == 0;
  o.detail = std::to_string(kPairs) + " PSD pairs; oracle " + gauge_text("AB/BA", swap) + ", " +
             gauge_text("AB/A^1/2 B A^1/2", presimilar) + "; library " + gauge_text("AB/BA", lib_swap) + ", " +
             gauge_text("AB/S", lib_presimilar);
  return o;
}

Outcome criterion7() {
  constexpr int kRelations = 1000;
  constexpr double kTol = 1e-9;
  Gauge involution;
  Gauge adjoint_oracle;
  Gauge inverse_adjoint;
  Gauge chain;
  Gauge restriction;
  Gauge containment;
  Gauge equality;
  int equality_cases = 0;
  for (int i = 0; i < kRelations; ++i) {
    Rng rng(splitmix64(0xC7, static_cast<std::uint64_t>(i)));
    const int kind = i % 3;  // 0: general, 1: S everywhere defined, 2: T invertible
    const Index n = rng.uniform_int(1, 5);
    const Index m = kind == 2 ? n : rng.uniform_int(1, 5);
    const Index l = rng.uniform_int(1, 5);
    const LinRel t = kind == 2 ? rel_from_matrix(rng.with_condition(n, rng.uniform(1.0, 10.0)))
                               : rng.relation(n, m, rng.uniform_int(0, static_cast<int>(n + m)));
    const LinRel b = rng.relation(n, m, rng.uniform_int(0, static_cast<int>(n + m)));
    const LinRel s = kind == 1 ? rel_from_matrix(rng.gaussian(l, m))
                               : rng.relation(m, l, rng.uniform_int(0, static_cast<int>(m + l)));

    const LinRel t_adj = rel_adjoint(t);
    involution.add(rel_distance(rel_adjoint(t_adj), t), kTol);
    adjoint_oracle.add(oracle::graph_distance(graph(t_adj), oracle::adjoint(graph(t))), kTol);
    inverse_adjoint.add(rel_distance(rel_adjoint(rel_inverse(t)), rel_inverse(t_adj)), kTol);

    const LinRel t_s = rel_operator_part(t);
    const LinRel p_s = rel_from_matrix(rel_parts(t).mul.complement().projector());
    const std::vector<LinRel> links = {
        rel_compose(t_adj, t),
        rel_compose(rel_adjoint(t_s), t),
        rel_compose(t_adj, rel_compose(p_s, t)),
        rel_compose(rel_adjoint(t_s), t_s),
    };
    double worst_link = oracle::graph_distance(graph(links[0]), oracle::compose(oracle::adjoint(graph(t)), graph(t)));
    for (std::size_t a = 0; a + 1 < links.size(); ++a)
      worst_link = std::max(worst_link, rel_distance(links[a], links[a + 1]));
    chain.add(worst_link, kTol);

    const LinRel tb = rel_compose(t_adj, b);
    const LinRel tb_restricted = rel_compose(t_adj, rel_restrict(b, rel_parts(tb).dom));
    restriction.add(rel_distance(tb, tb_restricted), kTol);

    const oracle::Graph st_adj = graph(rel_adjoint(rel_compose(s, t)));
    const oracle::Graph ts_adj = graph(rel_compose(t_adj, rel_adjoint(s)));
    containment.add(oracle::graph_excess(st_adj, ts_adj), kTol);
    if (kind != 0) {
      ++equality_cases;
      equality.add(oracle::graph_distance(st_adj, ts_adj), kTol);
    }
  }
  Outcome o;
  o.pass = involution.violations == 0 && adjoint_oracle.violations == 0 && inverse_adjoint.violations == 0 &&
           chain.violations == 0 && restriction.violations == 0 && containment.violations == 0 &&
           equality.violations == 0;
  o.detail = std::to_string(kRelations) + " relations; " + gauge_text("T**", involution) + "; " +
             gauge_text("T* vs oracle", adjoint_oracle) + "; " + gauge_text("(T^-1)* vs (T*)^-1", inverse_adjoint) +
             "; " + gauge_text("T*T chain", chain) + "; " + gauge_text("T*B restriction", restriction) + "; " +
             gauge_text("T*S* excess", containment) + "; equality cases " + std::to_string(equality_cases) + " " +
             gauge_text("dist", equality);
  return o;
}

struct Family {
  DiagSymbol t;
  DiagSymbol b;
  bool check_seb = false;
  bool check_reverse = false;
};

Outcome criterion8() {
  constexpr std::int64_t kN = 2000;
  constexpr std::int64_t kBlock = 8;
  constexpr double kTol = 1e-6;
  const std::vector<Rational> b_up = {Rational(1, 2), Rational(1), Rational(3, 2)};
  const std::vector<Rational> shifts = {Rational(0), Rational(1, 2), Rational(1)};
  std::vector<Family> families;
  Rng rng(splitmix64(0xC8, 0));
  for (int i = 0; i < 20; ++i) {  // B unbounded, X bounded
    const Rational pb = b_up[static_cast<std::size_t>(i % 3)];
    const Rational pt = pb - shifts[static_cast<std::size_t>((i / 3) % 3)];
    families.push_back({gen::random_symbol(rng, rng.uniform_int(0, 6), pt, i % 4 == 0),
                        gen::random_symbol(rng, rng.uniform_int(0, 6), pb, false), true, pt == pb});
  }
  for (int i = 0; i < 20; ++i) {  // Y unbounded
    const Rational pb = Rational(i % 3 - 1, 2);
    const Rational pt = pb + shifts[static_cast<std::size_t>(1 + i % 2)];
    families.push_back({gen::random_symbol(rng, rng.uniform_int(0, 6), pt, i % 4 == 1),
                        gen::random_symbol(rng, rng.uniform_int(0, 6), pb, false), false, true});
  }
  for (int i = 0; i < 10; ++i) {  // equal powers, both problems
    const Rational p = Rational(i % 3 - 2, 2);
    families.push_back({gen::random_symbol(rng, rng.uniform_int(0, 6), p, false),
                        gen::random_symbol(rng, rng.uniform_int(0, 6), p, false), true, true});
  }

  int unbounded_b = 0;
  int unbounded_y = 0;
  int errors = 0;
  Gauge seb_gap;
  Gauge reverse_gap;
  for (const Family& f : families) {
    try {
      if (f.check_seb) {
        const DiagSebResult sym = diag_seb_solve(f.t, f.b);
        if (sym.b_unbounded) ++unbounded_b;
        double truncated = 0.0;
        for (std::int64_t first = 1; first <= kN; first += kBlock) {
          const std::int64_t last = std::min(kN, first + kBlock - 1);
          const SebCertificate c =
              seb_solve(diag_truncate_matrix(f.t, first, last), diag_truncate_matrix(f.b, first, last));
          truncated = std::max(truncated, c.feasible ? c.lambda_star : INFINITY);
        }
        seb_gap.add(std::abs(sym.lambda_star - truncated), kTol);
      }
      if (f.check_reverse) {
        const DiagReverseResult sym = diag_reverse_solve(f.t, f.b);
        if (!diag_is_bounded(sym.Y)) ++unbounded_y;
        double truncated = INFINITY;
        for (std::int64_t first = 1; first <= kN; first += kBlock) {
          const std::int64_t last = std::min(kN, first + kBlock - 1);
          const ReverseCertificate c = reverse_solve(diag_truncate_relation(f.t, first, last),
                                                     diag_truncate_relation(f.b, first, last));
          truncated = std::min(truncated, c.feasible ? c.eta_star : 0.0);
        }
        reverse_gap.add(std::abs(sym.eta_star - truncated), kTol);
      }
    } catch (const Error&) {
      ++errors;
    }
  }
  Outcome o;
  o.pass = errors == 0 && seb_gap.violations == 0 && reverse_gap.violations == 0 && unbounded_b >= 10 &&
           unbounded_y >= 10 && families.size() == 50;
  o.detail = std::to_string(families.size()) + " families at N = " + std::to_string(kN) + " (blocks of " +
             std::to_string(kBlock) + "); unbounded B " + std::to_string(unbounded_b) + ", unbounded Y " +
             std::to_string(unbounded_y) + "; " + gauge_text("|lambda*-trunc|", seb_gap) + "; " +
             gauge_text("|eta*-trunc|", reverse_gap) + "; errors " + std::to_string(errors);
  return o;
}

std::string run_binary(const std::string& command) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
  if (!pipe) return out;
  char buf[4096];
  for (std::size_t got; (got = std::fread(buf, 1, sizeof buf, pipe.get())) > 0;) out.append(buf, got);
  return out;
}

bool bitwise_equal(const CMatrix& a, const CMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(Complex) * static_cast<std::size_t>(a.size())) == 0;
}

Outcome criterion9(const std::string& cli_path) {
  using namespace psdfactor::cli;
  Rng rng(splitmix64(0xC9, 0));
  const std::vector<std::string> docs = {
      R"({"command":"seb","T":{"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0],[1,0]]},)"
      R"("B":{"rows":2,"cols":2,"data":[[2,0],[0,0],[0,0],[2,0]]}})",
      R"({"command":"diag","op":"seb","t":"sqrt_n","b":"n"})",
      write_json(Json{{"command", "rel"}, {"op", "parts"}, {"T", to_json(rng.relation(3, 4, 4))}}),
      write_json(Json{{"command", "wsimilar"}, {"T", to_json(gen::planted_scalar(rng, 5, 100.0).T)}}),
      R"({"command":"proptest","suite":"seb_roundtrip","trials":100,"seed":42})",
      R"({"command":"proptest","suite":"relation_algebra","trials":100,"seed":7})",
      R"({"command":"proptest","suite":"wsimilar","trials":50,"seed":9})",
  };
  int run_mismatch = 0;
  int thread_mismatch = 0;
  for (const auto& doc : docs) {
    Overrides one;
    Overrides four;
    four.threads = 4;
    const std::string a = write_json(without_timing(run_text(doc, one).report));
    const std::string b = write_json(without_timing(run_text(doc, one).report));
    const std::string c = write_json(without_timing(run_text(doc, four).report));
    if (a != b) ++run_mismatch;
    if (a != c) ++thread_mismatch;
  }
  int binary_mismatch = 0;
  std::string binary_note = "binary not given";
  if (!cli_path.empty()) {
    const std::string base = "'" + cli_path + "' proptest --suite seb_roundtrip --trials 100 --seed 42 --no-timing";
    const std::string r1 = run_binary(base + " --threads 1");
    const std::string r2 = run_binary(base + " --threads 1");
    const std::string r4 = run_binary(base + " --threads 4");
    if (r1.empty() || r1 != r2 || r1 != r4) ++binary_mismatch;
    binary_note = "binary runs (1, 1, 4 threads) " + std::string(binary_mismatch ? "differ" : "identical") + ", " +
                  std::to_string(r1.size()) + " bytes";
  }
  int roundtrip_fail = 0;
  for (int i = 0; i < 200; ++i) {
    const Index n = rng.uniform_int(1, 6);
    const Index m = rng.uniform_int(1, 6);
    const CMatrix mat = rng.gaussian(n, m);
    const LinRel rel = rng.relation(n, m, rng.uniform_int(0, static_cast<int>(n + m)));
    const DiagSymbol sym = gen::random_symbol(rng, rng.uniform_int(0, 5), Rational(rng.uniform_int(-3, 3), 2), true);
    const CMatrix mat_back = matrix_from_json(parse_document(write_json(to_json(mat))), "");
    const LinRel rel_back = relation_from_json(parse_document(write_json(to_json(rel))), "");
    const DiagSymbol sym_back = symbol_from_json(parse_document(write_json(to_json(sym))), "");
    if (!bitwise_equal(mat, mat_back) || !bitwise_equal(rel.graph().basis(), rel_back.graph().basis()) ||
        rel_distance(rel, rel_back) != 0.0 || !(sym == sym_back))
      ++roundtrip_fail;
  }
  Outcome o;
  o.pass = run_mismatch == 0 && thread_mismatch == 0 && binary_mismatch == 0 && roundtrip_fail == 0;
  o.detail = std::to_string(docs.size()) + " jobs; run-to-run mismatches " + std::to_string(run_mismatch) +
             "; 1 vs 4 thread mismatches " + std::to_string(thread_mismatch) + "; " + binary_note +
             "; 600 payload round trips, inexact " + std::to_string(roundtrip_fail);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  std::string cli_path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
    if (arg == "--cli" && i + 1 < argc) cli_path = argv[++i];
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Sebestyen round trip", criterion1},
      {"feasibility soundness", criterion2},
      {"relation-level equivalence", criterion3},
      {"reverse/forward duality", criterion4},
      {"W-similarity suite", criterion5},
      {"spectral identities", criterion6},
      {"relation algebra", criterion7},
      {"diagonal/truncation agreement", criterion8},
      {"CLI determinism", [&] { return criterion9(cli_path); }},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (only != 0 && static_cast<int>(k + 1) != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("unexpected exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << k + 1 << "] " << criteria[k].first << ": " << o.detail
              << " [" << sci(seconds_since(start)) << " s]" << std::endl;
  }
  return failed;
}
