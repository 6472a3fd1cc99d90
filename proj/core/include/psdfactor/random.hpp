#pragma once

// Seeded generators for test instances. All draws go through one engine so a
// seed fixes the whole instance.

#include <cstdint>
#include <random>

#include "psdfactor/linrel.hpp"
#include "psdfactor/numkernel.hpp"

namespace psdfactor {

/// Mixes a master seed and a trial index into an independent 64-bit seed.
std::uint64_t splitmix64(std::uint64_t master, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal();
  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);  // inclusive
  Complex complex_normal();

  CMatrix gaussian(Index rows, Index cols);
  CMatrix unitary(Index n);
  CMatrix hermitian(Index n);
  /// V diag(d) V* with d uniform in [lo, hi] and the last n - rank entries zero.
  CMatrix psd(Index n, Index rank, double lo = 0.1, double hi = 2.0);
  CMatrix psd(Index n) { return psd(n, n); }
  /// U diag(s) W* with singular values spread geometrically in [1, cond].
  CMatrix with_condition(Index n, double cond);
  CMatrix of_rank(Index rows, Index cols, Index rank);
  /// Unitary times a complex diagonal: a normal matrix.
  CMatrix normal_matrix(Index n);

  /// Random subspace of dimension k in C^n.
  Subspace subspace(Index n, Index k);
  /// Relation C^n -> C^m whose graph is a random dim-dimensional subspace.
  LinRel relation(Index n, Index m, Index dim);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace psdfactor
