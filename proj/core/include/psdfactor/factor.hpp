#pragma once

// Decide-and-certify solvers for factorizations into nonnegative selfadjoint
// factors. Infeasible inputs yield certificates with feasible == false; a
// violated theorem hypothesis throws Error(HypothesisFailed).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psdfactor/linrel.hpp"
#include "psdfactor/numkernel.hpp"

namespace psdfactor {

/// One verified identity or inequality: value compared against tol.
struct Check {
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  bool pass = false;
};

using CheckList = std::vector<Check>;

bool all_pass(const CheckList& checks);
void add_check(CheckList& checks, std::string name, double value, double tol);
/// Records a boolean condition as value 0 (holds) or 1 (fails) at tol 0.
void add_flag(CheckList& checks, std::string name, bool holds);

// ---------------------------------------------------------------------------
// Range inclusion and the Sebestyen inequality.

struct DouglasResult {
  bool feasible = false;
  CMatrix Y;
  double c = 0.0;  // minimal constant, = ||Y||
  CheckList checks;
};

/// Y B = T with Y minimal: feasible iff ker B is inside ker T.
DouglasResult douglas_solve(const CMatrix& t, const CMatrix& b, double tol = kDefaultTol);

struct SebCertificate {
  bool feasible = false;
  double lambda_star = 0.0;
  CMatrix X;
  CMatrix G0;
  double residual_xb_t = 0.0;
  double norm_X = 0.0;
  CheckList checks;
};

/// T*T <= lambda T*B versus X B = T with X >= 0. Requires T*B Hermitian PSD.
SebCertificate seb_solve(const CMatrix& t, const CMatrix& b, double tol = kDefaultTol);

struct SebRelCertificate {
  bool feasible = false;
  double lambda_star = 0.0;
  CMatrix X;
  CMatrix G0;
  LinRel B0;               // B restricted to dom T*B
  bool equality_mode = false;  // dom T inside dom B0
  CheckList checks;
};

/// Relation version: closed relations T, B : H -> K with mul B inside
/// ker (T_s)* and T*B selfadjoint.
SebRelCertificate seb_relation_solve(const LinRel& t, const LinRel& b, double tol = kDefaultTol);

struct ReverseCertificate {
  bool feasible = false;
  double eta_star = 0.0;  // +inf when the dual problem has lambda* = 0
  LinRel Y;               // relation K -> K with Y^{-1} bounded PSD
  CMatrix Y_inverse;      // the bounded PSD operator X = Y^{-1}
  LinRel B0;              // B* restricted in range to ran B*T, a relation K -> H
  bool range_condition = false;  // ran T* inside ran B0-bar
  double dual_lambda_star = 0.0;
  CheckList checks;
};

/// T*T >= eta B0-bar T versus T inside Y B0* with Y^{-1} bounded PSD, solved
/// through the dual problem on S = (T*)^{-1}, A = (B*)^{-1}.
ReverseCertificate reverse_solve(const LinRel& t, const LinRel& b, double tol = kDefaultTol);

// ---------------------------------------------------------------------------
// Similarity to nonnegative operators.

struct SimilarityDecision {
  bool accept = false;
  CMatrix G;  // eigenvector matrix, T G = G S
  CMatrix S;  // real nonnegative diagonal
  double cond_G = 0.0;
  CheckList checks;
};

SimilarityDecision psd_similarity_decide(const CMatrix& t, double tol = kDefaultTol);

struct WSimilarForms {
  CMatrix G;  // intertwiner with G T = S G
  CMatrix X;
  CMatrix S;
  CMatrix X1, B1, X2, B2, W, Z;
  bool plusdot_ok = false;
  double cond_G = 0.0;
  CheckList checks;
};

/// Throws NotScalarNonneg unless T is diagonalizable with spectrum in [0, inf).
WSimilarForms wsimilar_forms(const CMatrix& t, double tol = kDefaultTol);

struct LdeuxCertificate {
  bool in_class = false;
  CMatrix A;
  CMatrix B;
  CMatrix Y;
  double residual = 0.0;
  CheckList checks;
};

/// T = A B with A bounded PSD and B PSD, certified by the Y = Y* >= 0 test.
LdeuxCertificate ldeux_certify(const CMatrix& t, const std::optional<CMatrix>& y_hint = std::nullopt,
                               double tol = kDefaultTol);

struct PresimilarResult {
  CMatrix S;
  bool spectra_match = false;
  double hausdorff_distance = 0.0;
  CheckList checks;
};

PresimilarResult presimilar_S(const CMatrix& a, const CMatrix& b, double tol = 1e-7);

struct SpectraSwap {
  bool match = false;
  double distance = 0.0;
};

/// sigma(AB) u {0} against sigma(BA) u {0}.
SpectraSwap spectra_swap(const CMatrix& a, const CMatrix& b, double tol = 1e-7);
bool spectra_swap_check(const CMatrix& a, const CMatrix& b, double tol = 1e-7);

// ---------------------------------------------------------------------------
// Quasi-affinity packages.

enum class PackageSide { AdjointSide, DirectSide };

struct QAPackage {
  PackageSide direction = PackageSide::AdjointSide;
  CMatrix G;
  CMatrix S;
  CMatrix A;    // G*G on the adjoint side, (G*G)^{-1} = B on the direct side
  CMatrix B_F;  // adjoint side only
  CMatrix A_F;  // direct side only
  CMatrix X;    // direct side: G*G with X T = T* X >= 0
  std::map<std::string, CMatrix> diagnostics;
  double reconstruction_residual = 0.0;
  CheckList checks;
};

/// T* intertwined by G (G T* = S G): A = G*G, B_F = G^{-1} S G^{-*}, A B_F = T.
QAPackage inclusionnfs_package(const CMatrix& t, const CMatrix& g, const CMatrix& s,
                               double tol = kDefaultTol);
/// T intertwined by G (G T = S G): B = (G*G)^{-1}, A_F = G*SG, T = B A_F.
QAPackage tba_package(const CMatrix& t, const CMatrix& g, const CMatrix& s,
                      double tol = kDefaultTol);

struct QuasiAffinity {
  bool affine = false;
  CMatrix G;
  Index rank = 0;
};

/// Searches for an invertible G with G T = S G.
QuasiAffinity quasiaffine_decide(const CMatrix& t, const CMatrix& s, double tol = kDefaultTol);

struct QuasiSimilarity {
  bool similar_pair = false;
  CMatrix G1;  // G1 T = S G1
  CMatrix G2;  // G2 S = T G2
  std::optional<QAPackage> adjoint_package;
  std::optional<QAPackage> direct_package;
  double spectral_distance = 0.0;
  CheckList checks;
};

QuasiSimilarity quasisimilar_decide(const CMatrix& t, const CMatrix& s, double tol = kDefaultTol);

struct BoundedSReport {
  bool joint_form = false;  // T* also intertwined with S
  CheckList checks;
};

BoundedSReport bounded_S_checks(const CMatrix& t, const CMatrix& g, const CMatrix& s,
                                double tol = kDefaultTol);

struct PowerChain {
  std::vector<CMatrix> S_seq;     // S_0 = B, S_n = S_{n-1} A S_{n-1}
  std::vector<double> residuals;  // ||T^{2^n} - A S_n|| / ||T||^{2^n}
  std::vector<double> psd_margins;
};

PowerChain power_chain(const CMatrix& a, const CMatrix& b, int n_max);

}  // namespace psdfactor
