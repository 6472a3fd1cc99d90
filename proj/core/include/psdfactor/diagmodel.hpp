#pragma once

// Diagonal operators and relations on l2 given by extended symbols: a finite
// head of entries followed by a tail c * n^p with rational p. Indices are
// 1-based. Each entry is a linear relation in C^1, so a symbol is read as the
// diagonal relation it describes.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "psdfactor/linrel.hpp"
#include "psdfactor/numkernel.hpp"

namespace psdfactor {

using Rational = boost::rational<std::int64_t>;

/// One entry as a relation in C^1.
struct DiagValue {
  enum class Kind {
    Finite,    // graph of multiplication by `value`
    Infinite,  // {0} x C
    Null,      // {(0, 0)}
    Full,      // C x C
  };
  Kind kind = Kind::Finite;
  Complex value{0.0, 0.0};

  static DiagValue finite(Complex v) { return {Kind::Finite, v}; }
  static DiagValue infinite() { return {Kind::Infinite, {}}; }
  static DiagValue null() { return {Kind::Null, {}}; }
  static DiagValue full() { return {Kind::Full, {}}; }

  bool is_finite() const { return kind == Kind::Finite; }
  bool is_infinite() const { return kind == Kind::Infinite; }
  bool is_zero() const { return kind == Kind::Finite && value == Complex(0.0); }
};

bool operator==(const DiagValue& a, const DiagValue& b);

DiagValue value_adjoint(const DiagValue& v);
DiagValue value_inverse(const DiagValue& v);
/// s o t: first t, then s.
DiagValue value_compose(const DiagValue& s, const DiagValue& t);

struct DiagSymbol {
  std::vector<DiagValue> head;
  Complex tail_coeff{0.0, 0.0};
  Rational tail_power{0};

  std::int64_t head_length() const { return static_cast<std::int64_t>(head.size()); }
  /// Entry at 1-based index n.
  DiagValue at(std::int64_t n) const;
  /// Same symbol with the head extended to length h by evaluating the tail.
  DiagSymbol with_head(std::int64_t h) const;
};

using DiagRel = DiagSymbol;

bool operator==(const DiagSymbol& a, const DiagSymbol& b);

/// Tail-only symbol c * n^p.
DiagSymbol diag_power(Complex coeff, Rational power);
/// Named families: "one", "n", "sqrt_n", "inv_n", "n^p/q" (or "n^p").
DiagSymbol diag_named(const std::string& name);

DiagSymbol diag_adjoint(const DiagSymbol& d);
/// Throws Unrepresentable when the tail is zero (infinitely many infinite entries).
DiagSymbol diag_inverse(const DiagSymbol& d);
/// s o t, entrywise relation composition.
DiagSymbol diag_compose(const DiagSymbol& s, const DiagSymbol& t);

bool diag_is_selfadjoint(const DiagSymbol& d);
bool diag_is_nonneg(const DiagSymbol& d);
/// Every entry finite and the tail power at most 0 (or a zero tail).
bool diag_is_bounded(const DiagSymbol& d);

struct DiagOrder {
  bool leq = false;
  std::int64_t crossover = 1;  // the tail comparison holds from this index on
};

/// Entrywise order with infinity on top. Throws NotNonneg unless both are
/// nonnegative selfadjoint.
DiagOrder diag_order(const DiagSymbol& lo, const DiagSymbol& hi);
bool diag_order_leq(const DiagSymbol& lo, const DiagSymbol& hi);

struct DiagSebResult {
  bool feasible = false;
  double lambda_star = 0.0;  // +inf when infeasible
  std::int64_t attained_at = 0;  // index of the supremum, 0 if approached only
  DiagSymbol X;                  // x(n) = t(n) / b(n), bounded PSD
  bool b_unbounded = false;
  bool x_bounded = false;
};

/// T*T <= lambda T*B entrywise. Requires T and B finite with conj(t) b real
/// >= 0 everywhere; B may still be unbounded through its tail.
DiagSebResult diag_seb_solve(const DiagSymbol& t, const DiagSymbol& b);

struct DiagReverseResult {
  bool feasible = false;
  bool kernel_condition = false;  // b(n) = 0 only where t(n) = 0
  double eta_star = 0.0;          // +inf when no index constrains eta
  std::int64_t attained_at = 0;
  DiagSymbol Y;  // conj(t) / conj(b), infinite where t is 0 or infinite
};

/// T*T >= eta B0 T entrywise. Requires B finite and conj(b) t real >= 0.
/// Throws Unrepresentable when Y would need infinitely many infinite entries.
DiagReverseResult diag_reverse_solve(const DiagSymbol& t, const DiagSymbol& b);

/// Diagonal block for 1-based indices first..last. Throws Unrepresentable if
/// an entry in range is not finite.
CMatrix diag_truncate_matrix(const DiagSymbol& d, std::int64_t first, std::int64_t last);
/// Diagonal relation on indices first..last.
LinRel diag_truncate_relation(const DiagSymbol& d, std::int64_t first, std::int64_t last);
/// N x N matrix when entries 1..N are all finite, otherwise the relation.
std::variant<CMatrix, LinRel> diag_truncate(const DiagSymbol& d, std::int64_t n);

}  // namespace psdfactor
