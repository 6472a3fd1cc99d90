#include "psdfactor/diagmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <regex>

namespace psdfactor {

namespace {

using Kind = DiagValue::Kind;

constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative slack for realness and sign tests on exactly computed products.
constexpr double kRealSlack = 1e-12;

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

Complex tail_value(Complex coeff, const Rational& power, std::int64_t n) {
  if (coeff == Complex(0.0)) return {0.0, 0.0};
  if (power == Rational(0)) return coeff;
  return coeff * std::pow(static_cast<double>(n), to_double(power));
}

DiagSymbol normalized(DiagSymbol d) {
  if (d.tail_coeff == Complex(0.0)) d.tail_power = 0;
  return d;
}

bool real_nonneg(Complex z, double scale) {
  const double slack = kRealSlack * scale;
  return std::abs(z.imag()) <= slack && z.real() >= -slack;
}

bool value_nonneg(const DiagValue& v) {
  if (v.kind == Kind::Infinite) return true;
  if (v.kind != Kind::Finite) return false;
  return real_nonneg(v.value, std::abs(v.value));
}

// Real part of a nonnegative finite entry, for ordering.
double nonneg_real(const DiagValue& v) { return v.value.real(); }

}  // namespace

bool operator==(const DiagValue& a, const DiagValue& b) {
  if (a.kind != b.kind) return false;
  return a.kind != Kind::Finite || a.value == b.value;
}

DiagValue value_adjoint(const DiagValue& v) {
  switch (v.kind) {
    case Kind::Finite:
      return DiagValue::finite(std::conj(v.value));
    case Kind::Infinite:
      return DiagValue::infinite();
    case Kind::Null:
      return DiagValue::full();
    case Kind::Full:
      return DiagValue::null();
  }
  return v;
}

DiagValue value_inverse(const DiagValue& v) {
  switch (v.kind) {
    case Kind::Finite:
      if (v.value == Complex(0.0)) return DiagValue::infinite();
      return DiagValue::finite(Complex(1.0) / v.value);
    case Kind::Infinite:
      return DiagValue::finite(0.0);
    case Kind::Null:
    case Kind::Full:
      return v;
  }
  return v;
}

DiagValue value_compose(const DiagValue& s, const DiagValue& t) {
  if (s.kind == Kind::Finite && t.kind == Kind::Finite) return DiagValue::finite(s.value * t.value);
  auto dom_full = [](const DiagValue& v) { return v.kind == Kind::Finite || v.kind == Kind::Full; };
  auto mul_full = [](const DiagValue& v) { return v.kind == Kind::Infinite || v.kind == Kind::Full; };
  auto ker_full = [](const DiagValue& v) { return v.is_zero() || v.kind == Kind::Full; };
  auto ran_full = [](const DiagValue& v) {
    return (v.kind == Kind::Finite && v.value != Complex(0.0)) || v.kind == Kind::Infinite ||
           v.kind == Kind::Full;
  };
  // dom(s o t) is dom t when dom s is everything, else ker t; mul(s o t) is
  // ran s when mul t is everything, else mul s.
  const bool dom = dom_full(s) ? dom_full(t) : ker_full(t);
  const bool mul = mul_full(t) ? ran_full(s) : mul_full(s);
  if (dom && mul) return DiagValue::full();
  if (!dom && mul) return DiagValue::infinite();
  if (!dom && !mul) return DiagValue::null();
  // A single-valued everywhere-defined outcome with a non-finite factor is the zero map.
  return DiagValue::finite(0.0);
}

DiagValue DiagSymbol::at(std::int64_t n) const {
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "DiagSymbol::at: indices start at 1");
  if (n <= head_length()) return head[static_cast<std::size_t>(n - 1)];
  return DiagValue::finite(tail_value(tail_coeff, tail_power, n));
}

DiagSymbol DiagSymbol::with_head(std::int64_t h) const {
  DiagSymbol out = *this;
  for (std::int64_t n = head_length() + 1; n <= h; ++n) out.head.push_back(at(n));
  return out;
}

bool operator==(const DiagSymbol& a, const DiagSymbol& b) {
  const std::int64_t h = std::max(a.head_length(), b.head_length());
  const DiagSymbol na = normalized(a.with_head(h));
  const DiagSymbol nb = normalized(b.with_head(h));
  return na.head == nb.head && na.tail_coeff == nb.tail_coeff && na.tail_power == nb.tail_power;
}

DiagSymbol diag_power(Complex coeff, Rational power) {
  DiagSymbol d;
  d.tail_coeff = coeff;
  d.tail_power = power;
  return normalized(d);
}

DiagSymbol diag_named(const std::string& name) {
  if (name == "one") return diag_power(1.0, 0);
  if (name == "n") return diag_power(1.0, 1);
  if (name == "sqrt_n") return diag_power(1.0, Rational(1, 2));
  if (name == "inv_n") return diag_power(1.0, -1);
  static const std::regex pattern(R"(n\^(-?\d+)(?:/(\d+))?)");
  std::smatch m;
  if (std::regex_match(name, m, pattern)) {
    const std::int64_t num = std::stoll(m[1].str());
    const std::int64_t den = m[2].matched ? std::stoll(m[2].str()) : 1;
    if (den == 0) throw Error(ErrorCode::ParseError, "diag_named: zero denominator in '" + name + "'");
    return diag_power(1.0, Rational(num, den));
  }
  throw Error(ErrorCode::ParseError, "diag_named: unknown symbol '" + name + "'");
}

DiagSymbol diag_adjoint(const DiagSymbol& d) {
  DiagSymbol out;
  for (const DiagValue& v : d.head) out.head.push_back(value_adjoint(v));
  out.tail_coeff = std::conj(d.tail_coeff);
  out.tail_power = d.tail_power;
  return normalized(out);
}

DiagSymbol diag_inverse(const DiagSymbol& d) {
  if (d.tail_coeff == Complex(0.0)) {
    throw Error(ErrorCode::Unrepresentable, "diag_inverse: a zero tail inverts to infinitely many infinite entries");
  }
  DiagSymbol out;
  for (const DiagValue& v : d.head) out.head.push_back(value_inverse(v));
  out.tail_coeff = Complex(1.0) / d.tail_coeff;
  out.tail_power = -d.tail_power;
  return out;
}

DiagSymbol diag_compose(const DiagSymbol& s, const DiagSymbol& t) {
  const std::int64_t h = std::max(s.head_length(), t.head_length());
  const DiagSymbol ss = s.with_head(h);
  const DiagSymbol tt = t.with_head(h);
  DiagSymbol out;
  for (std::int64_t i = 0; i < h; ++i) {
    out.head.push_back(value_compose(ss.head[static_cast<std::size_t>(i)], tt.head[static_cast<std::size_t>(i)]));
  }
  out.tail_coeff = s.tail_coeff * t.tail_coeff;
  out.tail_power = s.tail_power + t.tail_power;
  return normalized(out);
}

bool diag_is_selfadjoint(const DiagSymbol& d) {
  for (const DiagValue& v : d.head) {
    if (v.kind == Kind::Null || v.kind == Kind::Full) return false;
    if (v.kind == Kind::Finite && std::abs(v.value.imag()) > kRealSlack * std::abs(v.value)) return false;
  }
  return std::abs(d.tail_coeff.imag()) <= kRealSlack * std::abs(d.tail_coeff);
}

bool diag_is_nonneg(const DiagSymbol& d) {
  if (!std::all_of(d.head.begin(), d.head.end(), value_nonneg)) return false;
  return real_nonneg(d.tail_coeff, std::abs(d.tail_coeff));
}

bool diag_is_bounded(const DiagSymbol& d) {
  for (const DiagValue& v : d.head) {
    if (v.kind != Kind::Finite) return false;
  }
  return d.tail_coeff == Complex(0.0) || d.tail_power <= Rational(0);
}

DiagOrder diag_order(const DiagSymbol& lo, const DiagSymbol& hi) {
  if (!diag_is_nonneg(lo) || !diag_is_nonneg(hi)) {
    throw Error(ErrorCode::NotNonneg, "diag_order: symbols must be nonnegative selfadjoint");
  }
  DiagOrder out;
  const std::int64_t h = std::max(lo.head_length(), hi.head_length());
  bool head_ok = true;
  for (std::int64_t n = 1; n <= h; ++n) {
    const DiagValue a = lo.at(n);
    const DiagValue b = hi.at(n);
    if (b.kind == Kind::Infinite) continue;
    if (a.kind == Kind::Infinite) {
      head_ok = false;
      break;
    }
    const double x = nonneg_real(a);
    const double y = nonneg_real(b);
    if (x > y + kRealSlack * std::max(x, y)) {
      head_ok = false;
      break;
    }
  }

  const double c1 = lo.tail_coeff.real();
  const double c2 = hi.tail_coeff.real();
  auto tail_holds = [&](std::int64_t n) {
    const double x = tail_value(c1, lo.tail_power, n).real();
    const double y = tail_value(c2, hi.tail_power, n).real();
    return x <= y + kRealSlack * std::max(x, y);
  };
  bool tail_ok = false;
  if (c1 == 0.0) {
    out.crossover = 1;
    tail_ok = true;
  } else if (c2 == 0.0 || lo.tail_power > hi.tail_power) {
    tail_ok = false;
  } else if (lo.tail_power == hi.tail_power) {
    tail_ok = c1 <= c2 + kRealSlack * std::max(c1, c2);
    out.crossover = 1;
  } else {
    // c1 n^p1 <= c2 n^p2 iff n^(p2 - p1) >= c1 / c2, monotone in n.
    const double gap = to_double(hi.tail_power - lo.tail_power);
    const double x = std::pow(c1 / c2, 1.0 / gap);
    auto n0 = static_cast<std::int64_t>(std::max(1.0, std::ceil(x)));
    while (n0 > 1 && tail_holds(n0 - 1)) --n0;
    while (!tail_holds(n0)) ++n0;
    out.crossover = n0;
    tail_ok = n0 <= h + 1;
  }
  out.leq = head_ok && tail_ok;
  return out;
}

bool diag_order_leq(const DiagSymbol& lo, const DiagSymbol& hi) { return diag_order(lo, hi).leq; }

DiagSebResult diag_seb_solve(const DiagSymbol& t, const DiagSymbol& b) {
  const std::int64_t h = std::max(t.head_length(), b.head_length());
  DiagSebResult out;
  bool feasible = true;
  double sup = 0.0;
  std::int64_t arg = 0;
  DiagSymbol x;
  for (std::int64_t n = 1; n <= h; ++n) {
    const DiagValue tv = t.at(n);
    const DiagValue bv = b.at(n);
    if (tv.kind != Kind::Finite) {
      throw Error(ErrorCode::HypothesisFailed, "diag_seb_solve: T must have finite entries");
    }
    if (bv.kind == Kind::Null || bv.kind == Kind::Full) {
      throw Error(ErrorCode::HypothesisFailed, "diag_seb_solve: B entries must be values or infinity");
    }
    if (bv.kind == Kind::Infinite) {
      // conj(t) o inf is {(0, 0)} when t = 0 and {0} x C otherwise; neither is selfadjoint.
      throw Error(ErrorCode::HypothesisFailed, "diag_seb_solve: T*B is not selfadjoint at an infinite entry of B");
    }
    const Complex prod = std::conj(tv.value) * bv.value;
    if (!real_nonneg(prod, std::abs(tv.value) * std::abs(bv.value))) {
      throw Error(ErrorCode::HypothesisFailed, "diag_seb_solve: T*B is not nonnegative selfadjoint");
    }
    if (tv.value == Complex(0.0)) {
      x.head.push_back(DiagValue::finite(0.0));
      continue;
    }
    if (bv.value == Complex(0.0)) {
      feasible = false;
      x.head.push_back(DiagValue::finite(0.0));
      continue;
    }
    const double ratio = std::abs(tv.value) / std::abs(bv.value);
    if (ratio > sup) {
      sup = ratio;
      arg = n;
    }
    x.head.push_back(DiagValue::finite(tv.value / bv.value));
  }

  const Complex ct = t.tail_coeff;
  const Complex cb = b.tail_coeff;
  if (ct != Complex(0.0)) {
    if (!real_nonneg(std::conj(ct) * cb, std::abs(ct) * std::abs(cb))) {
      throw Error(ErrorCode::HypothesisFailed, "diag_seb_solve: T*B is not nonnegative selfadjoint");
    }
    if (cb == Complex(0.0) || t.tail_power > b.tail_power) {
      feasible = false;
    } else {
      // |ct/cb| n^(pt - pb) is nonincreasing in n, so its sup over n > h sits at h + 1.
      const double ratio = std::abs(ct) / std::abs(cb) *
                           std::pow(static_cast<double>(h + 1), to_double(t.tail_power - b.tail_power));
      if (ratio > sup) {
        sup = ratio;
        arg = h + 1;
      }
      x.tail_coeff = ct / cb;
      x.tail_power = t.tail_power - b.tail_power;
    }
  }

  out.b_unbounded = !diag_is_bounded(b);
  if (!feasible) {
    out.lambda_star = kInf;
    return out;
  }
  out.feasible = true;
  out.lambda_star = sup;
  out.attained_at = arg;
  out.X = normalized(x);
  out.x_bounded = diag_is_bounded(out.X);
  return out;
}

DiagReverseResult diag_reverse_solve(const DiagSymbol& t, const DiagSymbol& b) {
  const std::int64_t h = std::max(t.head_length(), b.head_length());
  DiagReverseResult out;
  bool kernel_ok = true;
  double inf = kInf;
  std::int64_t arg = 0;
  DiagSymbol y;
  for (std::int64_t n = 1; n <= h; ++n) {
    const DiagValue tv = t.at(n);
    const DiagValue bv = b.at(n);
    if (bv.kind != Kind::Finite) {
      throw Error(ErrorCode::HypothesisFailed, "diag_reverse_solve: B must have finite entries");
    }
    if (tv.kind == Kind::Null || tv.kind == Kind::Full) {
      throw Error(ErrorCode::HypothesisFailed, "diag_reverse_solve: T entries must be values or infinity");
    }
    if (tv.kind == Kind::Infinite) {
      if (bv.value == Complex(0.0)) {
        throw Error(ErrorCode::HypothesisFailed, "diag_reverse_solve: B*T is not nonnegative selfadjoint");
      }
      y.head.push_back(DiagValue::infinite());
      continue;
    }
    const Complex prod = std::conj(bv.value) * tv.value;
    if (!real_nonneg(prod, std::abs(tv.value) * std::abs(bv.value))) {
      throw Error(ErrorCode::HypothesisFailed, "diag_reverse_solve: B*T is not nonnegative selfadjoint");
    }
    if (tv.value == Complex(0.0)) {
      y.head.push_back(DiagValue::infinite());
      continue;
    }
    if (bv.value == Complex(0.0)) {
      kernel_ok = false;
      y.head.push_back(DiagValue::infinite());
      continue;
    }
    const double ratio = std::abs(tv.value) / std::abs(bv.value);
    if (ratio < inf) {
      inf = ratio;
      arg = n;
    }
    y.head.push_back(DiagValue::finite(std::conj(tv.value) / std::conj(bv.value)));
  }

  const Complex ct = t.tail_coeff;
  const Complex cb = b.tail_coeff;
  if (ct == Complex(0.0)) {
    throw Error(ErrorCode::Unrepresentable,
                "diag_reverse_solve: a zero tail of T makes Y infinite on infinitely many indices");
  }
  if (!real_nonneg(std::conj(cb) * ct, std::abs(ct) * std::abs(cb))) {
    throw Error(ErrorCode::HypothesisFailed, "diag_reverse_solve: B*T is not nonnegative selfadjoint");
  }
  if (cb == Complex(0.0)) {
    kernel_ok = false;
  } else if (t.tail_power < b.tail_power) {
    inf = 0.0;
    arg = 0;
  } else {
    // |ct/cb| n^(pt - pb) is nondecreasing in n, so its inf over n > h sits at h + 1.
    const double ratio = std::abs(ct) / std::abs(cb) *
                         std::pow(static_cast<double>(h + 1), to_double(t.tail_power - b.tail_power));
    if (ratio < inf) {
      inf = ratio;
      arg = h + 1;
    }
    y.tail_coeff = std::conj(ct) / std::conj(cb);
    y.tail_power = t.tail_power - b.tail_power;
  }

  out.kernel_condition = kernel_ok;
  out.eta_star = kernel_ok ? inf : 0.0;
  out.feasible = kernel_ok && inf > 0.0;
  if (!out.feasible) return out;
  out.attained_at = arg;
  out.Y = normalized(y);
  return out;
}

CMatrix diag_truncate_matrix(const DiagSymbol& d, std::int64_t first, std::int64_t last) {
  const Index k = std::max<Index>(0, last - first + 1);
  CMatrix out = zeros(k, k);
  for (Index i = 0; i < k; ++i) {
    const DiagValue v = d.at(first + i);
    if (v.kind != Kind::Finite) {
      throw Error(ErrorCode::Unrepresentable, "diag_truncate_matrix: entry is not a finite value");
    }
    out(i, i) = v.value;
  }
  return out;
}

LinRel diag_truncate_relation(const DiagSymbol& d, std::int64_t first, std::int64_t last) {
  const Index k = std::max<Index>(0, last - first + 1);
  std::vector<CVector> cols;
  for (Index i = 0; i < k; ++i) {
    const DiagValue v = d.at(first + i);
    CVector x = CVector::Zero(2 * k);
    CVector y = CVector::Zero(2 * k);
    switch (v.kind) {
      case Kind::Finite:
        x(i) = 1.0;
        x(k + i) = v.value;
        cols.push_back(x / x.norm());
        break;
      case Kind::Infinite:
        y(k + i) = 1.0;
        cols.push_back(y);
        break;
      case Kind::Full:
        x(i) = 1.0;
        y(k + i) = 1.0;
        cols.push_back(x);
        cols.push_back(y);
        break;
      case Kind::Null:
        break;
    }
  }
  CMatrix basis(2 * k, static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) basis.col(static_cast<Index>(j)) = cols[j];
  return LinRel(k, k, Subspace(2 * k, basis));
}

std::variant<CMatrix, LinRel> diag_truncate(const DiagSymbol& d, std::int64_t n) {
  for (std::int64_t i = 1; i <= std::min(n, d.head_length()); ++i) {
    if (d.at(i).kind != Kind::Finite) return diag_truncate_relation(d, 1, n);
  }
  return diag_truncate_matrix(d, 1, n);
}

}  // namespace psdfactor
