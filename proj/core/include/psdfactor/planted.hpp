#pragma once

// Planted instances with known answers, built from seeded draws.

#include <psdfactor/diagmodel.hpp>
#include <psdfactor/factor.hpp>
#include <psdfactor/random.hpp>

namespace psdfactor::planted {

using psdfactor::CMatrix;
using psdfactor::Index;
using psdfactor::LinRel;
using psdfactor::Rng;
using psdfactor::Subspace;

/// T = X B with X, B PSD, rotated by a unitary W: T = (W X W*)(W B).
struct PlantedSeb {
  CMatrix T;
  CMatrix B;
  CMatrix X;  // planted solution, X B = T
};
PlantedSeb planted_seb(Rng& rng, Index n);

/// A pair whose T*B is PSD but with T nonzero on ker B, so no X exists.
struct PlantedInfeasible {
  CMatrix T;
  CMatrix B;
};
PlantedInfeasible planted_seb_infeasible(Rng& rng, Index n);

/// Relations T, B : C^n -> C^(n+k) with nontrivial mul parts inside
/// ker (T_s)*, T*B selfadjoint, and a planted X with X B0 inside T when feasible.
struct PlantedRelations {
  LinRel T;
  LinRel B;
  CMatrix X;  // zero when infeasible
  bool feasible = true;
};
PlantedRelations planted_relations(Rng& rng, Index n, Index k, bool feasible);

/// Invertible T = X^{-1} B with B invertible and X PSD invertible; Y = X^{-1}.
struct PlantedReverse {
  CMatrix T;
  CMatrix B;
  CMatrix Y;
};
PlantedReverse planted_reverse(Rng& rng, Index n);

/// T = G D G^{-1} with integer eigenvalues 0..5 and cond(G) drawn in [1, max_cond].
struct PlantedScalar {
  CMatrix T;
  CMatrix G;  // T G = G D
  CMatrix D;
  double cond_G = 1.0;
};
PlantedScalar planted_scalar(Rng& rng, Index n, double max_cond);

/// Non-diagonalizable (a Jordan block of size >= 2) or with a negative eigenvalue.
CMatrix planted_non_scalar(Rng& rng, Index n, bool jordan, double max_cond);

/// Random symbol families for the diagonal model.
psdfactor::DiagSymbol random_symbol(Rng& rng, int head, psdfactor::Rational power, bool allow_zero);

}  // namespace psdfactor::planted
