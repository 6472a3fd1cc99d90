#include "psdfactor/planted.hpp"

#include <cmath>

namespace psdfactor::planted {

using psdfactor::Complex;
using psdfactor::identity;
using psdfactor::null_space;
using psdfactor::zeros;

PlantedSeb planted_seb(Rng& rng, Index n) {
  const Index rx = rng.uniform_int(1, static_cast<int>(n));
  const Index rb = rng.uniform_int(1, static_cast<int>(n));
  const CMatrix x = rng.psd(n, rx);
  const CMatrix b = rng.psd(n, rb);
  const CMatrix w = rng.unitary(n);
  PlantedSeb out;
  out.X = w * x * w.adjoint();
  out.B = w * b;
  out.T = out.X * out.B;
  return out;
}

PlantedInfeasible planted_seb_infeasible(Rng& rng, Index n) {
  const Index rx = rng.uniform_int(1, static_cast<int>(n));
  const Index rb = rng.uniform_int(1, static_cast<int>(n) - 1);
  const CMatrix x = rng.psd(n, rx);
  const CMatrix b = rng.psd(n, rb);
  const CMatrix w = rng.unitary(n);
  const CMatrix kb = null_space(b);
  const CMatrix p = kb * kb.adjoint();
  PlantedInfeasible out;
  out.B = w * b;
  out.T = w * x * b + w * p * rng.gaussian(n, n) * p;
  return out;
}

PlantedRelations planted_relations(Rng& rng, Index n, Index k, bool feasible) {
  const Index m = n + k;
  const CMatrix u = rng.unitary(m);
  const CMatrix r = u.leftCols(n);
  const CMatrix mul_space = u.rightCols(k);

  const Index rb = feasible ? rng.uniform_int(1, static_cast<int>(n)) : rng.uniform_int(1, static_cast<int>(n) - 1);
  const CMatrix pb = rng.psd(n, rb);
  const CMatrix x = rng.psd(n, rng.uniform_int(1, static_cast<int>(n)));
  CMatrix ts_core = x * pb;
  if (!feasible) {
    const CMatrix kb = null_space(pb);
    const CMatrix p = kb * kb.adjoint();
    ts_core += p * rng.gaussian(n, n) * p;
  }
  const CMatrix bs = r * pb;
  const CMatrix ts = r * ts_core;

  const Index d = feasible ? rng.uniform_int(1, static_cast<int>(n)) : n;
  const CMatrix dom = rng.subspace(n, d).basis();
  auto mul_part = [&](Index dim) {
    const CMatrix c = rng.gaussian(k, dim);
    return CMatrix(mul_space * c);
  };
  const CMatrix mul_t = mul_part(rng.uniform_int(1, static_cast<int>(k)));
  const CMatrix mul_b = mul_part(rng.uniform_int(1, static_cast<int>(k)));

  auto build = [&](const CMatrix& op, const CMatrix& mul) {
    CMatrix xs(n, dom.cols() + mul.cols());
    CMatrix ys(m, dom.cols() + mul.cols());
    xs << dom, zeros(n, mul.cols());
    ys << op * dom, mul;
    return LinRel::span(xs, ys);
  };
  PlantedRelations out;
  out.feasible = feasible;
  out.T = build(ts, mul_t);
  out.B = build(bs, mul_b);
  out.X = feasible ? CMatrix(r * x * r.adjoint()) : zeros(m, m);
  return out;
}

PlantedReverse planted_reverse(Rng& rng, Index n) {
  const CMatrix b = rng.with_condition(n, rng.uniform(1.0, 10.0));
  const CMatrix x = rng.psd(n);
  PlantedReverse out;
  out.B = b;
  out.Y = x.inverse();
  out.T = out.Y * b;
  return out;
}

PlantedScalar planted_scalar(Rng& rng, Index n, double max_cond) {
  PlantedScalar out;
  out.cond_G = std::exp(rng.uniform(0.0, std::log(max_cond)));
  out.G = rng.with_condition(n, out.cond_G);
  out.D = zeros(n, n);
  for (Index i = 0; i < n; ++i) out.D(i, i) = static_cast<double>(rng.uniform_int(0, 5));
  out.T = out.G * out.D * out.G.inverse();
  return out;
}

CMatrix planted_non_scalar(Rng& rng, Index n, bool jordan, double max_cond) {
  CMatrix d = zeros(n, n);
  for (Index i = 0; i < n; ++i) d(i, i) = static_cast<double>(rng.uniform_int(0, 5));
  if (jordan) {
    const Index size = (n >= 3 && rng.uniform_int(0, 1) == 1) ? 3 : 2;
    const double mu = static_cast<double>(rng.uniform_int(0, 5));
    for (Index i = 0; i < size; ++i) {
      d(i, i) = mu;
      if (i + 1 < size) d(i, i + 1) = rng.uniform(0.5, 2.0);
    }
  } else {
    d(n - 1, n - 1) = -static_cast<double>(rng.uniform_int(1, 5));
  }
  const CMatrix g = rng.with_condition(n, std::exp(rng.uniform(0.0, std::log(max_cond))));
  return g * d * g.inverse();
}

psdfactor::DiagSymbol random_symbol(Rng& rng, int head, psdfactor::Rational power, bool allow_zero) {
  psdfactor::DiagSymbol s;
  for (int i = 0; i < head; ++i) {
    const bool zero = allow_zero && rng.uniform(0.0, 1.0) < 0.2;
    s.head.push_back(psdfactor::DiagValue::finite(zero ? 0.0 : rng.uniform(0.2, 5.0)));
  }
  s.tail_coeff = Complex(rng.uniform(0.5, 3.0), 0.0);
  s.tail_power = power;
  return s;
}

}  // namespace psdfactor::planted
