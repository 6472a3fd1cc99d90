#include <cmath>
#include <limits>

#include "factor_detail.hpp"

namespace psdfactor {

using detail::psd_defect;
using detail::rel_residual;

namespace {

struct Intertwiner {
  CMatrix g_inv;
  double cond = 1.0;
  double ctol = 0.0;
};

// Validates G (T-side) = S G for a given left factor and returns G^{-1}.
Intertwiner check_intertwiner(const CMatrix& lhs_t, const CMatrix& g, const CMatrix& s, double tol,
                              const char* who) {
  detail::require_square_matrix(lhs_t, who);
  detail::require_same_shape(lhs_t, g, who);
  detail::require_same_shape(lhs_t, s, who);
  const Index n = g.rows();
  if (n > 0 && rank(g) < n) throw Error(ErrorCode::NotInvertible, std::string(who) + ": G is singular");
  Intertwiner out;
  out.cond = n > 0 ? condition_number(g) : 1.0;
  out.ctol = tol * out.cond * out.cond;
  if (rel_residual(g * lhs_t, s * g) > out.ctol) {
    throw Error(ErrorCode::NotIntertwining, std::string(who) + ": G does not intertwine T with S");
  }
  out.g_inv = n > 0 ? CMatrix(g.inverse()) : CMatrix(0, 0);
  return out;
}

}  // namespace

QAPackage inclusionnfs_package(const CMatrix& t, const CMatrix& g, const CMatrix& s, double tol) {
  const CMatrix ts = t.adjoint();
  const Intertwiner iw = check_intertwiner(ts, g, s, tol, "inclusionnfs_package");
  QAPackage out;
  out.direction = PackageSide::AdjointSide;
  out.G = g;
  out.S = s;
  out.A = hermitian_part(g.adjoint() * g);
  const CMatrix s_half = psd_power(hermitian_part(s), 0.5, tol);
  const CMatrix left = iw.g_inv * s_half;
  out.B_F = hermitian_part(left * left.adjoint());
  out.reconstruction_residual = rel_residual(out.A * out.B_F, t);

  add_check(out.checks, "A PSD", psd_defect(out.A), iw.ctol);
  add_check(out.checks, "B_F PSD", psd_defect(out.B_F), iw.ctol);
  add_check(out.checks, "A B_F = T", out.reconstruction_residual, iw.ctol);

  const CMatrix tsb = ts * out.B_F;
  if (is_hermitian(tsb, iw.ctol) && is_psd(hermitian_part(tsb), iw.ctol)) {
    const SebCertificate seb = seb_solve(t, out.B_F, iw.ctol);
    add_flag(out.checks, "T*T <= lambda T*B_F feasible", seb.feasible);
    if (seb.feasible) {
      const double bound = op_norm(out.A);
      add_check(out.checks, "lambda* <= ||A||", std::max(0.0, seb.lambda_star - bound) / (1.0 + bound),
                iw.ctol);
    }
  }
  return out;
}

QAPackage tba_package(const CMatrix& t, const CMatrix& g, const CMatrix& s, double tol) {
  const Intertwiner iw = check_intertwiner(t, g, s, tol, "tba_package");
  const CMatrix ts = t.adjoint();
  QAPackage out;
  out.direction = PackageSide::DirectSide;
  out.G = g;
  out.S = s;
  out.X = hermitian_part(g.adjoint() * g);
  out.A = hermitian_part(iw.g_inv * iw.g_inv.adjoint());
  out.A_F = hermitian_part(g.adjoint() * s * g);
  out.reconstruction_residual = rel_residual(out.A * out.A_F, t);

  add_check(out.checks, "B^{-1} PSD", psd_defect(out.X), iw.ctol);
  add_check(out.checks, "A_F PSD", psd_defect(out.A_F), iw.ctol);
  add_check(out.checks, "T = B A_F", out.reconstruction_residual, iw.ctol);
  const CMatrix xt = out.X * t;
  add_check(out.checks, "X T = T* X", rel_residual(xt, ts * out.X), iw.ctol);
  add_check(out.checks, "X T PSD", psd_defect(xt), iw.ctol);

  const double norm_x = op_norm(out.X);
  const CMatrix afit = out.A_F * t;
  if (norm_x > 0.0) {
    const LoewnerResult ord =
        loewner_leq(hermitian_part(afit) / norm_x, hermitian_part(ts * t), iw.ctol);
    add_flag(out.checks, "T*T >= A_F T / ||X||", ord.ordered);
  }

  // The reversed inequality through relations needs ker A_F inside ker T* + mul T.
  const Subspace ker_af = Subspace::kernel_of(out.A_F);
  const Subspace ker_ts = Subspace::kernel_of(ts);
  if (ker_ts.contains(ker_af, iw.ctol)) {
    const ReverseCertificate rev = reverse_solve(rel_from_matrix(t), rel_from_matrix(out.A_F), iw.ctol);
    add_flag(out.checks, "reverse_solve feasible", rev.feasible);
    if (rev.feasible && norm_x > 0.0) {
      const double target = 1.0 / norm_x;
      const double short_by = std::isinf(rev.eta_star) ? 0.0 : std::max(0.0, target - rev.eta_star);
      add_check(out.checks, "eta* >= 1 / ||X||", short_by / target, iw.ctol);
    }
  }

  const CMatrix x_half = psd_power(out.X, 0.5, tol);
  const CMatrix x_mhalf = psd_power(out.X, -0.5, tol);
  const CMatrix s0 = x_half * t * x_mhalf;
  out.diagnostics["A0"] = out.A_F;
  out.diagnostics["S0"] = s0;
  out.diagnostics["S_F"] = s0;
  out.diagnostics["E_F"] = hermitian_part(x_half * s0 * x_half);
  add_check(out.checks, "S0 PSD", psd_defect(s0), iw.ctol);
  add_check(out.checks, "E_F = A_F", rel_residual(out.diagnostics["E_F"], out.A_F), iw.ctol);
  return out;
}

QuasiAffinity quasiaffine_decide(const CMatrix& t, const CMatrix& s, double tol) {
  detail::require_square_matrix(t, "quasiaffine_decide: T must be square");
  detail::require_same_shape(t, s, "quasiaffine_decide: T and S must have the same size");
  const Index n = t.rows();
  QuasiAffinity out;
  if (rel_residual(t, s) <= tol) {
    out.affine = true;
    out.G = identity(n);
    out.rank = n;
    return out;
  }
  const IntertwinerSpace space = sylvester_intertwiners(t, s);
  out.G = space.max_rank_element;
  out.rank = space.max_rank;
  // Injective with dense range is invertible in finite dimension.
  out.affine = space.max_rank == n;
  return out;
}

QuasiSimilarity quasisimilar_decide(const CMatrix& t, const CMatrix& s, double tol) {
  const QuasiAffinity direct = quasiaffine_decide(t, s, tol);
  const CMatrix ts = t.adjoint();
  const QuasiAffinity adj = quasiaffine_decide(ts, s, tol);
  QuasiSimilarity out;
  out.G1 = direct.G;
  out.G2 = adj.G.adjoint();
  add_flag(out.checks, "T quasi-affine to S", direct.affine);
  add_flag(out.checks, "T* quasi-affine to S", adj.affine);
  out.spectral_distance = hausdorff(eigenvalues(t), eigenvalues(s));
  out.similar_pair = direct.affine && adj.affine;
  if (!out.similar_pair) return out;

  const double cond = std::max(condition_number(out.G1), condition_number(out.G2));
  const double ctol = tol * cond * cond;
  add_check(out.checks, "G2 S = T G2", rel_residual(out.G2 * s, t * out.G2), ctol);
  out.adjoint_package = inclusionnfs_package(t, adj.G, s, tol);
  out.direct_package = tba_package(t, out.G1, s, tol);
  add_check(out.checks, "adjoint package reconstructs T", out.adjoint_package->reconstruction_residual,
            ctol);
  add_check(out.checks, "direct package reconstructs T", out.direct_package->reconstruction_residual,
            ctol);
  add_check(out.checks, "sigma(T) = sigma(S)", out.spectral_distance, 1e-7 * (1.0 + op_norm(s)));
  return out;
}

BoundedSReport bounded_S_checks(const CMatrix& t, const CMatrix& g, const CMatrix& s, double tol) {
  const Intertwiner iw = check_intertwiner(t, g, s, tol, "bounded_S_checks");
  const double ctol = iw.ctol;
  const CMatrix ts = t.adjoint();
  const CMatrix g_inv_s = iw.g_inv.adjoint();
  BoundedSReport out;

  const CMatrix similar = g * t * iw.g_inv;
  const CMatrix similar_adj = g_inv_s * ts * g.adjoint();
  add_check(out.checks, "G T G^{-1} = G^{-*} T* G*", rel_residual(similar, similar_adj), ctol);
  add_check(out.checks, "G^{-*} T* G* PSD", psd_defect(similar_adj), ctol);

  const CMatrix x = hermitian_part(g.adjoint() * g);
  const CMatrix x_half = psd_power(x, 0.5, tol);
  const CMatrix x_mhalf = psd_power(x, -0.5, tol);
  const CMatrix normal = x_half * t * x_mhalf;
  const CMatrix normal_adj = x_mhalf * ts * x_half;
  add_check(out.checks, "X^{1/2} T X^{-1/2} = X^{-1/2} T* X^{1/2}", rel_residual(normal, normal_adj),
            ctol);
  add_check(out.checks, "X^{-1/2} T* X^{1/2} PSD", psd_defect(normal_adj), ctol);

  // With G = U X^{1/2}, G^{-*} = U X^{-1/2} and G* = X^{1/2} U*.
  const PolarParts pol = polar(g);
  add_check(out.checks, "G^{-*} T* G* = U (X^{-1/2} T* X^{1/2}) U*",
            rel_residual(similar_adj, pol.unitary_factor * normal_adj * pol.unitary_factor.adjoint()),
            ctol);

  const CMatrix tsx = ts * x;
  add_check(out.checks, "T* X = X T", rel_residual(tsx, x * t), ctol);
  add_check(out.checks, "T* X PSD", psd_defect(tsx), ctol);

  const CMatrix a = hermitian_part(g.adjoint() * s * g);
  const CMatrix at = a * t;
  add_check(out.checks, "A T = G* S^2 G", rel_residual(at, g.adjoint() * s * s * g), ctol);
  add_check(out.checks, "A T PSD", psd_defect(at), ctol);
  const double lambda = op_norm(x);
  if (lambda > 0.0) {
    const LoewnerResult ord = loewner_leq(hermitian_part(at) / lambda, hermitian_part(ts * t), ctol);
    add_flag(out.checks, "T*T >= A T / ||X||", ord.ordered);
  }

  const QuasiAffinity adj = quasiaffine_decide(ts, s, tol);
  out.joint_form = adj.affine;
  if (adj.affine) {
    const CMatrix x1 = hermitian_part(adj.G.adjoint() * adj.G);
    const CMatrix x1_half = psd_power(x1, 0.5, tol);
    const CMatrix x1_mhalf = psd_power(x1, -0.5, tol);
    const double c1 = condition_number(adj.G);
    const double jtol = std::max(ctol, tol * c1 * c1);
    const CMatrix joint = x1_half * ts * x1_mhalf;
    add_check(out.checks, "X1^{1/2} T* X1^{-1/2} = X1^{-1/2} T X1^{1/2}",
              rel_residual(joint, x1_mhalf * t * x1_half), jtol);
    add_check(out.checks, "X1^{1/2} T* X1^{-1/2} PSD", psd_defect(joint), jtol);
    add_check(out.checks, "X1 T* PSD", psd_defect(x1 * ts), jtol);
  }
  return out;
}

}  // namespace psdfactor
