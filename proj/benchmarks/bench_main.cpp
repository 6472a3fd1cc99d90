#include <benchmark/benchmark.h>

#include <psdfactor/diagmodel.hpp>
#include <psdfactor/factor.hpp>
#include <psdfactor/planted.hpp>

using namespace psdfactor;

namespace {

void BM_SebSolve(benchmark::State& state) {
  Rng rng(1);
  const auto p = planted::planted_seb(rng, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(seb_solve(p.T, p.B));
}
BENCHMARK(BM_SebSolve)->Arg(4)->Arg(8)->Arg(32)->Arg(128);

void BM_SebRelationSolve(benchmark::State& state) {
  Rng rng(2);
  const auto p = planted::planted_relations(rng, state.range(0), 2, true);
  for (auto _ : state) benchmark::DoNotOptimize(seb_relation_solve(p.T, p.B));
}
BENCHMARK(BM_SebRelationSolve)->Arg(4)->Arg(16)->Arg(64);

void BM_ReverseSolve(benchmark::State& state) {
  Rng rng(3);
  const auto p = planted::planted_reverse(rng, state.range(0));
  const LinRel t = rel_from_matrix(p.T);
  const LinRel b = rel_from_matrix(p.B);
  for (auto _ : state) benchmark::DoNotOptimize(reverse_solve(t, b));
}
BENCHMARK(BM_ReverseSolve)->Arg(4)->Arg(16)->Arg(64);

void BM_RelCompose(benchmark::State& state) {
  Rng rng(4);
  const Index n = state.range(0);
  const LinRel s = rng.relation(n, n, n);
  const LinRel t = rng.relation(n, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(rel_compose(s, t));
}
BENCHMARK(BM_RelCompose)->Arg(4)->Arg(16)->Arg(64);

void BM_RelAdjoint(benchmark::State& state) {
  Rng rng(5);
  const Index n = state.range(0);
  const LinRel t = rng.relation(n, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(rel_adjoint(t));
}
BENCHMARK(BM_RelAdjoint)->Arg(4)->Arg(16)->Arg(64);

void BM_WSimilarForms(benchmark::State& state) {
  Rng rng(6);
  const auto p = planted::planted_scalar(rng, state.range(0), 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(wsimilar_forms(p.T));
}
BENCHMARK(BM_WSimilarForms)->Arg(4)->Arg(16)->Arg(64);

void BM_SpectraSwap(benchmark::State& state) {
  Rng rng(7);
  const Index n = state.range(0);
  const CMatrix a = rng.psd(n, n / 2 + 1);
  const CMatrix b = rng.psd(n, n / 2 + 1);
  for (auto _ : state) benchmark::DoNotOptimize(spectra_swap(a, b));
}
BENCHMARK(BM_SpectraSwap)->Arg(8)->Arg(32)->Arg(128);

void BM_DiagSebSolve(benchmark::State& state) {
  Rng rng(8);
  const DiagSymbol t = planted::random_symbol(rng, static_cast<int>(state.range(0)), Rational(1, 2), false);
  const DiagSymbol b = planted::random_symbol(rng, static_cast<int>(state.range(0)), Rational(1), false);
  for (auto _ : state) benchmark::DoNotOptimize(diag_seb_solve(t, b));
}
BENCHMARK(BM_DiagSebSolve)->Arg(0)->Arg(16)->Arg(256);

void BM_DiagTruncate(benchmark::State& state) {
  const DiagSymbol t = diag_named("sqrt_n");
  for (auto _ : state) benchmark::DoNotOptimize(diag_truncate(t, state.range(0)));
}
BENCHMARK(BM_DiagTruncate)->Arg(64)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
