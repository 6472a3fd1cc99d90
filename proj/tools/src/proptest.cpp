#include "psdfactor/cli/proptest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include <psdfactor/planted.hpp>
#include <psdfactor/random.hpp>

namespace psdfactor::cli {

namespace {

struct TrialOutcome {
  Json info = Json::object();
  CheckList checks;
};

using TrialFn = std::function<TrialOutcome(Rng&, double)>;

Index draw_dim(Rng& rng, int lo = 2, int hi = 8) { return rng.uniform_int(lo, hi); }

void append(CheckList& into, const std::string& prefix, const CheckList& from) {
  for (Check c : from) {
    c.name = prefix + c.name;
    into.push_back(std::move(c));
  }
}

TrialOutcome seb_roundtrip(Rng& rng, double tol) {
  TrialOutcome out;
  const Index n = draw_dim(rng);
  const auto p = planted::planted_seb(rng, n);
  const SebCertificate c = seb_solve(p.T, p.B, tol);
  out.info["n"] = n;
  out.info["lambda_star"] = number(c.lambda_star);
  add_flag(out.checks, "feasible", c.feasible);
  add_check(out.checks, "xb_minus_t", frobenius(c.X * p.B - p.T) / (1.0 + frobenius(p.T)), tol);
  add_check(out.checks, "norm_x_over_lambda", std::max(0.0, op_norm(c.X) - c.lambda_star), tol);
  add_flag(out.checks, "ker_x_equals_ker_t_adjoint",
           approx_equal(Subspace::kernel_of(c.X), Subspace::kernel_of(p.T.adjoint())));
  return out;
}

TrialOutcome seb_feasibility(Rng& rng, double tol) {
  TrialOutcome out;
  const Index n = draw_dim(rng);
  const bool planted_feasible = rng.uniform_int(0, 1) == 1;
  CMatrix t;
  CMatrix b;
  if (planted_feasible) {
    const auto p = planted::planted_seb(rng, n);
    t = p.T;
    b = p.B;
  } else {
    const auto p = planted::planted_seb_infeasible(rng, n);
    t = p.T;
    b = p.B;
  }
  const SebCertificate c = seb_solve(t, b, tol);
  out.info["n"] = n;
  out.info["planted_feasible"] = planted_feasible;
  add_flag(out.checks, "verdict_matches_planted", c.feasible == planted_feasible);
  if (c.feasible) append(out.checks, "certificate.", c.checks);
  return out;
}

TrialOutcome relation_seb(Rng& rng, double tol) {
  TrialOutcome out;
  const Index n = draw_dim(rng, 2, 6);
  const Index k = draw_dim(rng, 1, 3);
  const bool planted_feasible = rng.uniform_int(0, 1) == 1;
  const auto p = planted::planted_relations(rng, n, k, planted_feasible);
  const SebRelCertificate c = seb_relation_solve(p.T, p.B, tol);
  out.info["n"] = n;
  out.info["k"] = k;
  out.info["planted_feasible"] = planted_feasible;
  add_flag(out.checks, "verdict_matches_planted", c.feasible == planted_feasible);
  if (c.feasible) append(out.checks, "certificate.", c.checks);
  return out;
}

TrialOutcome reverse_duality(Rng& rng, double tol) {
  TrialOutcome out;
  const Index n = draw_dim(rng);
  const auto p = planted::planted_reverse(rng, n);
  const LinRel t = rel_from_matrix(p.T);
  const LinRel b = rel_from_matrix(p.B);
  const ReverseCertificate r = reverse_solve(t, b, tol);
  const SebRelCertificate dual =
      seb_relation_solve(rel_inverse(rel_adjoint(t)), rel_inverse(rel_adjoint(b)), tol);
  out.info["n"] = n;
  out.info["eta_star"] = number(r.eta_star);
  add_flag(out.checks, "feasible", r.feasible);
  add_check(out.checks, "eta_times_dual_lambda_minus_one", std::abs(r.eta_star * dual.lambda_star - 1.0), tol);
  return out;
}

TrialOutcome wsimilar(Rng& rng, double tol) {
  TrialOutcome out;
  const Index n = draw_dim(rng);
  const auto p = planted::planted_scalar(rng, n, 1e4);
  const WSimilarForms w = wsimilar_forms(p.T, tol);
  out.info["n"] = n;
  out.info["cond_G"] = number(w.cond_G);
  add_flag(out.checks, "plusdot_rank_identity", w.plusdot_ok);
  append(out.checks, "", w.checks);
  return out;
}

TrialOutcome wsimilar_reject(Rng& rng, double tol) {
  TrialOutcome out;
  const Index n = draw_dim(rng);
  const bool jordan = rng.uniform_int(0, 1) == 1;
  const CMatrix t = planted::planted_non_scalar(rng, n, jordan, 100.0);
  out.info["n"] = n;
  out.info["jordan"] = jordan;
  add_flag(out.checks, "rejected", !psd_similarity_decide(t, tol).accept);
  return out;
}

TrialOutcome spectra(Rng& rng, double tol) {
  TrialOutcome out;
  const Index n = draw_dim(rng);
  const CMatrix a = rng.psd(n, rng.uniform_int(1, static_cast<int>(n)));
  const CMatrix b = rng.psd(n, rng.uniform_int(1, static_cast<int>(n)));
  const double spectral_tol = std::max(tol, 1e-7);
  const SpectraSwap swap = spectra_swap(a, b, spectral_tol);
  const PresimilarResult pre = presimilar_S(a, b, spectral_tol);
  out.info["n"] = n;
  add_check(out.checks, "swap_hausdorff", swap.distance, spectral_tol);
  add_check(out.checks, "presimilar_hausdorff", pre.hausdorff_distance, spectral_tol);
  return out;
}

TrialOutcome relation_algebra(Rng& rng, double) {
  TrialOutcome out;
  const Index n = draw_dim(rng, 1, 5);
  const Index m = draw_dim(rng, 1, 5);
  const Index dim = rng.uniform_int(0, static_cast<int>(n + m));
  const LinRel t = rng.relation(n, m, dim);
  out.info["n"] = n;
  out.info["m"] = m;
  out.info["graph_dim"] = dim;
  add_check(out.checks, "involution", rel_distance(rel_adjoint(rel_adjoint(t)), t), kSubspaceTol);
  add_check(out.checks, "inverse_adjoint_commute",
            rel_distance(rel_adjoint(rel_inverse(t)), rel_inverse(rel_adjoint(t))), kSubspaceTol);
  return out;
}

TrialOutcome diag_duality(Rng& rng, double tol) {
  TrialOutcome out;
  static const std::vector<Rational> powers = {Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 2),
                                               Rational(1)};
  auto draw_power = [&] { return powers[static_cast<std::size_t>(rng.uniform_int(0, 4))]; };
  const DiagSymbol t = planted::random_symbol(rng, rng.uniform_int(0, 6), draw_power(), false);
  const DiagSymbol b = planted::random_symbol(rng, rng.uniform_int(0, 6), draw_power(), false);
  const DiagReverseResult r = diag_reverse_solve(t, b);
  const DiagSebResult dual = diag_seb_solve(diag_inverse(diag_adjoint(t)), diag_inverse(diag_adjoint(b)));
  out.info["t"] = to_json(t);
  out.info["b"] = to_json(b);
  out.info["eta_star"] = number(r.eta_star);
  if (std::isfinite(r.eta_star) && std::isfinite(dual.lambda_star) && r.eta_star > 0.0) {
    add_check(out.checks, "eta_times_dual_lambda_minus_one", std::abs(r.eta_star * dual.lambda_star - 1.0), tol);
  } else {
    add_flag(out.checks, "degenerate_pair_consistent", r.eta_star == 0.0 ? !std::isfinite(dual.lambda_star)
                                                                         : dual.lambda_star == 0.0);
  }
  return out;
}

const std::vector<std::pair<std::string, TrialFn>>& registry() {
  static const std::vector<std::pair<std::string, TrialFn>> suites = {
      {"seb_roundtrip", seb_roundtrip},     {"seb_feasibility", seb_feasibility},
      {"relation_seb", relation_seb},       {"reverse_duality", reverse_duality},
      {"wsimilar", wsimilar},               {"wsimilar_reject", wsimilar_reject},
      {"spectra", spectra},                 {"relation_algebra", relation_algebra},
      {"diag_duality", diag_duality},
  };
  return suites;
}

Json run_trial(const TrialFn& fn, int index, std::uint64_t seed, double tol) {
  Json record{{"index", index}, {"seed", seed}};
  try {
    Rng rng(seed);
    TrialOutcome outcome = fn(rng, tol);
    record["pass"] = all_pass(outcome.checks);
    record["info"] = std::move(outcome.info);
    record["checks"] = to_json(outcome.checks);
  } catch (const Error& e) {
    record["pass"] = false;
    record["error"] = Json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
  }
  return record;
}

}  // namespace

std::vector<std::string> proptest_suites() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

Json run_proptest(const std::string& suite, int trials, std::uint64_t seed, double tol, int threads) {
  const auto& suites = registry();
  const auto it = std::find_if(suites.begin(), suites.end(), [&](const auto& s) { return s.first == suite; });
  if (it == suites.end()) {
    std::string known;
    for (const auto& s : suites) known += (known.empty() ? "" : ", ") + s.first;
    throw Error(ErrorCode::ParseError, "at /suite: unknown suite \"" + suite + "\" (known: " + known + ")");
  }
  const TrialFn& fn = it->second;

  std::vector<Json> records(static_cast<std::size_t>(trials));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < trials; i = next.fetch_add(1))
      records[static_cast<std::size_t>(i)] =
          run_trial(fn, i, splitmix64(seed, static_cast<std::uint64_t>(i)), tol);
  };
  const int workers = std::clamp(threads, 1, trials);
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  int passed = 0;
  Json trial_list = Json::array();
  for (auto& r : records) {
    if (r["pass"].get<bool>()) ++passed;
    trial_list.push_back(std::move(r));
  }
  return Json{{"verdict", Json{{"suite", suite},
                               {"trials", trials},
                               {"passed", passed},
                               {"failed", trials - passed},
                               {"all_pass", passed == trials}}},
              {"trials", std::move(trial_list)}};
}

}  // namespace psdfactor::cli
