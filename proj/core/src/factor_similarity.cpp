#include <cmath>

#include "factor_detail.hpp"

namespace psdfactor {

using detail::psd_defect;
using detail::rel_residual;

SimilarityDecision psd_similarity_decide(const CMatrix& t, double tol) {
  detail::require_square_matrix(t, "psd_similarity_decide: T must be square");
  const Index n = t.rows();
  SimilarityDecision out;
  const double nrm = op_norm(t);
  if (nrm == 0.0) {
    out.accept = true;
    out.G = identity(n);
    out.S = zeros(n, n);
    out.cond_G = 1.0;
    return out;
  }
  const SpectrumInfo sp = spectrum(t);
  add_flag(out.checks, "diagonalizable", sp.diagonalizable);
  double worst_imag = 0.0;
  double worst_negative = 0.0;
  for (Index i = 0; i < n; ++i) {
    worst_imag = std::max(worst_imag, std::abs(sp.eigenvalues(i).imag()));
    worst_negative = std::max(worst_negative, -sp.eigenvalues(i).real());
  }
  add_check(out.checks, "spectrum real", worst_imag / nrm, tol);
  add_check(out.checks, "spectrum nonnegative", worst_negative / nrm, tol);
  out.accept = sp.diagonalizable && worst_imag <= tol * nrm && worst_negative <= tol * nrm;
  if (!out.accept) return out;

  out.G = sp.eigenvectors;
  out.S = zeros(n, n);
  for (Index i = 0; i < n; ++i) out.S(i, i) = std::max(0.0, sp.eigenvalues(i).real());
  out.cond_G = sp.eigvec_condition;
  const double resid = op_norm(out.G * out.S - t * out.G);
  add_check(out.checks, "T G = G S", resid / (out.cond_G * nrm), tol);
  return out;
}

WSimilarForms wsimilar_forms(const CMatrix& t, double tol) {
  const SimilarityDecision d = psd_similarity_decide(t, tol);
  if (!d.accept) {
    throw Error(ErrorCode::NotScalarNonneg,
                "wsimilar_forms: T is not diagonalizable with nonnegative real spectrum");
  }
  const Index n = t.rows();
  WSimilarForms out;
  out.cond_G = d.cond_G;
  // The eigenvector matrix V satisfies T V = V D, so G = V^{-1} gives G T = D G.
  out.G = d.G.inverse();
  out.X = hermitian_part(out.G.adjoint() * out.G);
  const CMatrix x_inv = hermitian_part(out.X.inverse());
  const CMatrix x_half = psd_power(out.X, 0.5, tol);
  const CMatrix x_mhalf = psd_power(out.X, -0.5, tol);
  const CMatrix ts = t.adjoint();

  out.S = x_half * t * x_mhalf;
  out.B1 = out.X * t;
  out.X1 = x_inv;
  out.B2 = x_inv * ts;
  out.X2 = out.X;
  out.W = x_inv;
  out.Z = out.X;

  const double ctol = tol * out.cond_G * out.cond_G;
  add_check(out.checks, "G T = S0 G", rel_residual(out.G * t, d.S * out.G), ctol);
  add_check(out.checks, "X T = T* X", rel_residual(out.X * t, ts * out.X), ctol);
  add_check(out.checks, "X PSD invertible", psd_defect(out.X), ctol);
  add_check(out.checks, "X^{1/2} T X^{-1/2} = X^{-1/2} T* X^{1/2}",
            rel_residual(out.S, x_mhalf * ts * x_half), ctol);
  add_check(out.checks, "S PSD", psd_defect(out.S), ctol);
  add_check(out.checks, "T = X1 B1", rel_residual(out.X1 * out.B1, t), ctol);
  add_check(out.checks, "B1 PSD", psd_defect(out.B1), ctol);
  add_check(out.checks, "T* = X2 B2", rel_residual(out.X2 * out.B2, ts), ctol);
  add_check(out.checks, "B2 PSD", psd_defect(out.B2), ctol);
  add_check(out.checks, "T W PSD", psd_defect(t * out.W), ctol);
  add_check(out.checks, "Z T PSD", psd_defect(out.Z * t), ctol);
  add_check(out.checks, "W Z = I", rel_residual(out.W * out.Z, identity(n)), ctol);

  const Subspace ran_t = Subspace::range_of(t);
  const Subspace ker_t = Subspace::kernel_of(t);
  const bool rank_sum = ran_t.dim() + ker_t.dim() == n;
  const bool trivial_meet = intersect(ran_t, ker_t).is_zero();
  out.plusdot_ok = rank_sum && trivial_meet;
  add_flag(out.checks, "dim ran T + dim ker T = n", rank_sum);
  add_flag(out.checks, "ran T meets ker T trivially", trivial_meet);
  return out;
}

LdeuxCertificate ldeux_certify(const CMatrix& t, const std::optional<CMatrix>& y_hint, double tol) {
  detail::require_square_matrix(t, "ldeux_certify: T must be square");
  LdeuxCertificate out;
  if (y_hint) {
    const CMatrix& y = *y_hint;
    detail::require_same_shape(t, y, "ldeux_certify: Y must match T");
    const CMatrix tsy = t.adjoint() * y;
    add_check(out.checks, "Y PSD", psd_defect(y), tol);
    add_check(out.checks, "T*Y = Y T", rel_residual(tsy, y * t), tol);
    add_check(out.checks, "T*Y selfadjoint", rel_residual(tsy, tsy.adjoint()), tol);
    if (is_hermitian(tsy, tol)) {
      const LoewnerResult ord = loewner_leq(hermitian_part(t.adjoint() * t), hermitian_part(tsy), tol);
      add_flag(out.checks, "T*T <= T*Y", ord.ordered);
    }
    out.B = y;
    out.Y = y;
    try {
      const SebCertificate seb = seb_solve(t, y, tol);
      if (!seb.feasible) return out;
      out.A = seb.X;
      out.residual = rel_residual(out.A * out.B, t);
      add_check(out.checks, "A B = T", out.residual, tol);
      out.in_class = out.residual <= tol;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::HypothesisFailed) throw;
      add_flag(out.checks, "T*Y Hermitian PSD", false);
    }
    return out;
  }

  const SimilarityDecision d = psd_similarity_decide(t, tol);
  add_flag(out.checks, "similar to a nonnegative diagonal", d.accept);
  if (!d.accept) return out;
  const CMatrix& v = d.G;
  const CMatrix v_inv = v.inverse();
  out.A = hermitian_part(v * v.adjoint());
  out.B = hermitian_part(v_inv.adjoint() * d.S * v_inv);
  out.Y = op_norm(out.A) * out.B;
  out.residual = rel_residual(out.A * out.B, t);
  const double ctol = tol * d.cond_G * d.cond_G;
  add_check(out.checks, "A B = T", out.residual, ctol);
  add_check(out.checks, "A PSD", psd_defect(out.A), ctol);
  add_check(out.checks, "B PSD", psd_defect(out.B), ctol);
  const CMatrix tsy = t.adjoint() * out.Y;
  add_check(out.checks, "T*Y = Y T", rel_residual(tsy, out.Y * t), ctol);
  const LoewnerResult ord =
      loewner_leq(hermitian_part(t.adjoint() * t), hermitian_part(tsy), ctol);
  add_flag(out.checks, "T*T <= T*Y", ord.ordered);
  out.in_class = out.residual <= ctol;
  return out;
}

PresimilarResult presimilar_S(const CMatrix& a, const CMatrix& b, double tol) {
  detail::require_same_shape(a, b, "presimilar_S: A and B must have the same shape");
  detail::require_square_matrix(a, "presimilar_S: A must be square");
  if (!is_psd(a, kDefaultTol)) throw Error(ErrorCode::NotPSD, "presimilar_S: A is not PSD");
  if (!is_psd(b, kDefaultTol)) throw Error(ErrorCode::NotPSD, "presimilar_S: B is not PSD");
  PresimilarResult out;
  const CMatrix a_half = psd_power(a, 0.5);
  out.S = hermitian_part(a_half * b * a_half);
  const CMatrix t = a * b;
  add_check(out.checks, "T A^{1/2} = A^{1/2} S", rel_residual(t * a_half, a_half * out.S), tol);
  add_check(out.checks, "S PSD", psd_defect(out.S), tol);
  const CVector st = eigenvalues(t);
  const CVector ss = hermitian_eig(out.S).eigenvalues.cast<Complex>();
  out.hausdorff_distance = hausdorff(st, ss);
  out.spectra_match = out.hausdorff_distance <= tol;
  add_check(out.checks, "sigma(AB) = sigma(S)", out.hausdorff_distance, tol);
  return out;
}

SpectraSwap spectra_swap(const CMatrix& a, const CMatrix& b, double tol) {
  if (a.cols() != b.rows() || b.cols() != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "spectra_swap: factors are not composable both ways");
  }
  auto with_zero = [](const CVector& v) {
    CVector out(v.size() + 1);
    out << v, Complex(0.0);
    return out;
  };
  SpectraSwap out;
  out.distance = hausdorff(with_zero(eigenvalues(a * b)), with_zero(eigenvalues(b * a)));
  out.match = out.distance <= tol;
  return out;
}

bool spectra_swap_check(const CMatrix& a, const CMatrix& b, double tol) {
  return spectra_swap(a, b, tol).match;
}

PowerChain power_chain(const CMatrix& a, const CMatrix& b, int n_max) {
  detail::require_same_shape(a, b, "power_chain: A and B must have the same shape");
  detail::require_square_matrix(a, "power_chain: A must be square");
  if (!is_psd(a) || !is_psd(b)) throw Error(ErrorCode::NotPSD, "power_chain: A and B must be PSD");
  PowerChain out;
  const CMatrix a_half = psd_power(a, 0.5);
  const CMatrix t = a * b;
  const double tn = op_norm(t);
  CMatrix s = hermitian_part(b);
  CMatrix power = t;
  double scale = tn;
  for (int k = 0; k <= n_max; ++k) {
    if (k > 0) {
      const CMatrix half = a_half * s;
      s = hermitian_part(half.adjoint() * half);
      power = power * power;
      scale = scale * scale;
    }
    out.S_seq.push_back(s);
    out.residuals.push_back(op_norm(power - a * s) / (scale > 0.0 ? scale : 1.0));
    const double sn = op_norm(s);
    out.psd_margins.push_back(sn > 0.0 ? min_eigenvalue(s) / sn : 0.0);
  }
  return out;
}

}  // namespace psdfactor
