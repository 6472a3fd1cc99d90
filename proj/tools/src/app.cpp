#include "psdfactor/cli/app.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>

#include "psdfactor/cli/proptest.hpp"

namespace psdfactor::cli {

namespace {

const std::vector<std::string> kCommands = {"seb", "reverse", "factor", "wsimilar",
                                            "intertwine", "rel", "diag", "proptest"};

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

std::string slash(const std::string& key) { return "/" + key; }

CMatrix read_matrix(const Json& in, const std::string& key) {
  return matrix_from_json(field(in, key, ""), slash(key));
}

/// A relation field; a plain matrix is read as its graph.
LinRel read_relation(const Json& in, const std::string& key) {
  const Json& j = field(in, key, "");
  if (is_relation_payload(j)) return relation_from_json(j, slash(key));
  return rel_from_matrix(matrix_from_json(j, slash(key)));
}

DiagSymbol read_symbol(const Json& in, const std::string& key) {
  return symbol_from_json(field(in, key, ""), slash(key));
}

std::string read_op(const Json& in, const std::string& fallback) {
  if (!in.contains("op")) return fallback;
  if (!in["op"].is_string()) malformed("at /op: expected a string");
  return in["op"].get<std::string>();
}

[[noreturn]] void unknown_op(const std::string& command, const std::string& op) {
  malformed("at /op: unknown " + command + " operation \"" + op + "\"");
}

std::int64_t read_count(const Json& in, const std::string& key, std::int64_t lo) {
  const Json& j = field(in, key, "");
  if (!j.is_number_integer() || j.get<std::int64_t>() < lo)
    malformed("at /" + key + ": expected an integer >= " + std::to_string(lo));
  return j.get<std::int64_t>();
}

Json package_json(const QAPackage& p, double tol) {
  Json diagnostics = Json::object();
  for (const auto& [name, m] : p.diagnostics) diagnostics[name] = to_json(m);
  return Json{{"direction", p.direction == PackageSide::AdjointSide ? "adjoint" : "direct"},
              {"G", to_json(p.G)},
              {"S", to_json(p.S)},
              {"A", to_json(p.A)},
              {"B_F", to_json(p.B_F)},
              {"A_F", to_json(p.A_F)},
              {"X", to_json(p.X)},
              {"diagnostics", std::move(diagnostics)},
              {"reconstruction_residual", claim(p.reconstruction_residual, tol)},
              {"checks", to_json(p.checks)}};
}

// ---------------------------------------------------------------------------
// Commands. Each returns the report body for a completed run.

Json cmd_seb(const JobSpec& job) {
  const Json& in = job.inputs;
  const double tol = job.tol;
  if (is_relation_payload(field(in, "T", "")) || is_relation_payload(field(in, "B", ""))) {
    const auto c = seb_relation_solve(read_relation(in, "T"), read_relation(in, "B"), tol);
    return Json{{"verdict", Json{{"feasible", c.feasible},
                                 {"lambda_star", claim(c.lambda_star, tol)},
                                 {"equality_mode", c.equality_mode}}},
                {"certificate", Json{{"X", to_json(c.X)}, {"G0", to_json(c.G0)}, {"B0", to_json(c.B0)}}},
                {"checks", to_json(c.checks)}};
  }
  const auto c = seb_solve(read_matrix(in, "T"), read_matrix(in, "B"), tol);
  return Json{{"verdict", Json{{"feasible", c.feasible}, {"lambda_star", claim(c.lambda_star, tol)}}},
              {"certificate", Json{{"X", to_json(c.X)}, {"G0", to_json(c.G0)}}},
              {"residuals", Json{{"xb_minus_t", claim(c.residual_xb_t, tol)},
                                 {"norm_x", claim(c.norm_X, tol)}}},
              {"checks", to_json(c.checks)}};
}

Json cmd_reverse(const JobSpec& job) {
  const double tol = job.tol;
  const auto c = reverse_solve(read_relation(job.inputs, "T"), read_relation(job.inputs, "B"), tol);
  return Json{{"verdict", Json{{"feasible", c.feasible},
                               {"eta_star", claim(c.eta_star, tol)},
                               {"range_condition", c.range_condition},
                               {"dual_lambda_star", claim(c.dual_lambda_star, tol)}}},
              {"certificate",
               Json{{"Y", to_json(c.Y)}, {"Y_inverse", to_json(c.Y_inverse)}, {"B0", to_json(c.B0)}}},
              {"checks", to_json(c.checks)}};
}

Json cmd_factor(const JobSpec& job) {
  const Json& in = job.inputs;
  const double tol = job.tol;
  const std::string op = read_op(in, "ldeux");
  if (op == "douglas") {
    const auto r = douglas_solve(read_matrix(in, "T"), read_matrix(in, "B"), tol);
    return Json{{"verdict", Json{{"feasible", r.feasible}, {"c", claim(r.c, tol)}}},
                {"certificate", Json{{"Y", to_json(r.Y)}}},
                {"checks", to_json(r.checks)}};
  }
  if (op == "ldeux") {
    std::optional<CMatrix> hint;
    if (in.contains("Y_hint")) hint = read_matrix(in, "Y_hint");
    const auto r = ldeux_certify(read_matrix(in, "T"), hint, tol);
    return Json{{"verdict", Json{{"in_class", r.in_class}, {"residual", claim(r.residual, tol)}}},
                {"certificate", Json{{"A", to_json(r.A)}, {"B", to_json(r.B)}, {"Y", to_json(r.Y)}}},
                {"checks", to_json(r.checks)}};
  }
  if (op == "similarity") {
    const auto r = psd_similarity_decide(read_matrix(in, "T"), tol);
    return Json{{"verdict", Json{{"accept", r.accept}, {"cond_G", number(r.cond_G)}}},
                {"certificate", Json{{"G", to_json(r.G)}, {"S", to_json(r.S)}}},
                {"checks", to_json(r.checks)}};
  }
  if (op == "presimilar") {
    const auto r = presimilar_S(read_matrix(in, "A"), read_matrix(in, "B"), tol);
    return Json{{"verdict", Json{{"spectra_match", r.spectra_match},
                                 {"hausdorff_distance", claim(r.hausdorff_distance, tol)}}},
                {"certificate", Json{{"S", to_json(r.S)}}},
                {"checks", to_json(r.checks)}};
  }
  if (op == "spectra_swap") {
    const auto r = spectra_swap(read_matrix(in, "A"), read_matrix(in, "B"), tol);
    return Json{{"verdict", Json{{"match", r.match}, {"distance", claim(r.distance, tol)}}}};
  }
  if (op == "power_chain") {
    const auto n_max = static_cast<int>(read_count(in, "n_max", 0));
    const auto r = power_chain(read_matrix(in, "A"), read_matrix(in, "B"), n_max);
    Json seq = Json::array();
    Json residuals = Json::array();
    Json margins = Json::array();
    for (const auto& s : r.S_seq) seq.push_back(to_json(s));
    for (double v : r.residuals) residuals.push_back(claim(v, tol));
    for (double v : r.psd_margins) margins.push_back(claim(v, tol));
    return Json{{"certificate", Json{{"S_seq", std::move(seq)}}},
                {"residuals", Json{{"power_identity", std::move(residuals)}, {"psd_margin", std::move(margins)}}}};
  }
  unknown_op("factor", op);
}

Json cmd_wsimilar(const JobSpec& job) {
  const double tol = job.tol;
  const auto w = wsimilar_forms(read_matrix(job.inputs, "T"), tol);
  return Json{{"verdict", Json{{"plusdot_ok", w.plusdot_ok}, {"cond_G", number(w.cond_G)},
                               {"all_checks_pass", all_pass(w.checks)}}},
              {"certificate", Json{{"G", to_json(w.G)},
                                   {"X", to_json(w.X)},
                                   {"S", to_json(w.S)},
                                   {"X1", to_json(w.X1)},
                                   {"B1", to_json(w.B1)},
                                   {"X2", to_json(w.X2)},
                                   {"B2", to_json(w.B2)},
                                   {"W", to_json(w.W)},
                                   {"Z", to_json(w.Z)}}},
              {"checks", to_json(w.checks)}};
}

Json cmd_intertwine(const JobSpec& job) {
  const Json& in = job.inputs;
  const double tol = job.tol;
  const std::string op = read_op(in, "quasisimilar");
  if (op == "quasiaffine") {
    const auto r = quasiaffine_decide(read_matrix(in, "T"), read_matrix(in, "S"), tol);
    return Json{{"verdict", Json{{"affine", r.affine}, {"rank", r.rank}}},
                {"certificate", Json{{"G", to_json(r.G)}}}};
  }
  if (op == "quasisimilar") {
    const auto r = quasisimilar_decide(read_matrix(in, "T"), read_matrix(in, "S"), tol);
    Json cert{{"G1", to_json(r.G1)}, {"G2", to_json(r.G2)}};
    if (r.adjoint_package) cert["adjoint_package"] = package_json(*r.adjoint_package, tol);
    if (r.direct_package) cert["direct_package"] = package_json(*r.direct_package, tol);
    return Json{{"verdict", Json{{"similar_pair", r.similar_pair},
                                 {"spectral_distance", claim(r.spectral_distance, tol)}}},
                {"certificate", std::move(cert)},
                {"checks", to_json(r.checks)}};
  }
  if (op == "inclusionnfs" || op == "tba") {
    const CMatrix t = read_matrix(in, "T");
    const CMatrix g = read_matrix(in, "G");
    const CMatrix s = read_matrix(in, "S");
    const QAPackage p = op == "tba" ? tba_package(t, g, s, tol) : inclusionnfs_package(t, g, s, tol);
    return Json{{"verdict", Json{{"all_checks_pass", all_pass(p.checks)}}}, {"certificate", package_json(p, tol)}};
  }
  if (op == "bounded_s") {
    const auto r = bounded_S_checks(read_matrix(in, "T"), read_matrix(in, "G"), read_matrix(in, "S"), tol);
    return Json{{"verdict", Json{{"joint_form", r.joint_form}}}, {"checks", to_json(r.checks)}};
  }
  unknown_op("intertwine", op);
}

Json cmd_rel(const JobSpec& job) {
  const Json& in = job.inputs;
  const double tol = job.tol;
  const std::string op = read_op(in, "parts");
  using Unary = std::function<LinRel(const LinRel&)>;
  const std::map<std::string, Unary> unary = {
      {"adjoint", rel_adjoint},
      {"inverse", rel_inverse},
      {"closure", rel_closure},
      {"operator_part", rel_operator_part},
      {"mul_part", rel_mul_part},
      {"moore_penrose", rel_moore_penrose},
      {"sqrt", [tol](const LinRel& t) { return rel_sqrt(t, tol); }},
  };
  if (const auto it = unary.find(op); it != unary.end())
    return Json{{"result", to_json(it->second(read_relation(in, "T")))}};
  if (op == "parts") {
    const RelParts p = rel_parts(read_relation(in, "T"));
    return Json{{"result", Json{{"dom", to_json(p.dom)},
                                {"ran", to_json(p.ran)},
                                {"ker", to_json(p.ker)},
                                {"mul", to_json(p.mul)},
                                {"operator_part", to_json(p.operator_part_matrix)}}}};
  }
  if (op == "compose")
    return Json{{"result", to_json(rel_compose(read_relation(in, "S"), read_relation(in, "T")))}};
  if (op == "classify") {
    const RelClass c = rel_classify(read_relation(in, "T"), tol);
    return Json{{"verdict", Json{{"symmetric", c.symmetric},
                                 {"nonnegative", c.nonnegative},
                                 {"selfadjoint", c.selfadjoint}}}};
  }
  if (op == "resolvent") return Json{{"result", to_json(rel_resolvent(read_relation(in, "T"), tol))}};
  if (op == "order") {
    const LoewnerResult r = rel_order(read_relation(in, "lo"), read_relation(in, "hi"), tol);
    return Json{{"verdict", Json{{"leq", r.ordered}, {"margin", claim(r.margin, tol)}}}};
  }
  if (op == "compare") {
    const LinRel a = read_relation(in, "A");
    const LinRel b = read_relation(in, "B");
    return Json{{"verdict", Json{{"distance", claim(rel_distance(a, b), kSubspaceTol)},
                                 {"equal", rel_equal(a, b)},
                                 {"A_contains_B", rel_contains(a, b)},
                                 {"B_contains_A", rel_contains(b, a)}}}};
  }
  unknown_op("rel", op);
}

Json cmd_diag(const JobSpec& job) {
  const Json& in = job.inputs;
  const double tol = job.tol;
  const std::string op = read_op(in, "seb");
  if (op == "seb") {
    const auto r = diag_seb_solve(read_symbol(in, "t"), read_symbol(in, "b"));
    return Json{{"verdict", Json{{"feasible", r.feasible},
                                 {"lambda_star", claim(r.lambda_star, tol)},
                                 {"attained_at", r.attained_at},
                                 {"b_unbounded", r.b_unbounded},
                                 {"x_bounded", r.x_bounded}}},
                {"certificate", Json{{"X", to_json(r.X)}}}};
  }
  if (op == "reverse") {
    const auto r = diag_reverse_solve(read_symbol(in, "t"), read_symbol(in, "b"));
    return Json{{"verdict", Json{{"feasible", r.feasible},
                                 {"kernel_condition", r.kernel_condition},
                                 {"eta_star", claim(r.eta_star, tol)},
                                 {"attained_at", r.attained_at}}},
                {"certificate", Json{{"Y", to_json(r.Y)}}}};
  }
  if (op == "adjoint") return Json{{"result", to_json(diag_adjoint(read_symbol(in, "t")))}};
  if (op == "inverse") return Json{{"result", to_json(diag_inverse(read_symbol(in, "t")))}};
  if (op == "compose")
    return Json{{"result", to_json(diag_compose(read_symbol(in, "s"), read_symbol(in, "t")))}};
  if (op == "classify") {
    const DiagSymbol t = read_symbol(in, "t");
    return Json{{"verdict", Json{{"selfadjoint", diag_is_selfadjoint(t)},
                                 {"nonneg", diag_is_nonneg(t)},
                                 {"bounded", diag_is_bounded(t)}}}};
  }
  if (op == "order") {
    const DiagOrder r = diag_order(read_symbol(in, "lo"), read_symbol(in, "hi"));
    return Json{{"verdict", Json{{"leq", r.leq}, {"crossover", r.crossover}}}};
  }
  if (op == "entry") {
    const DiagSymbol t = read_symbol(in, "t");
    return Json{{"result", to_json(t.at(read_count(in, "index", 1)))}};
  }
  if (op == "truncate") {
    const auto truncated = diag_truncate(read_symbol(in, "t"), read_count(in, "N", 1));
    if (const auto* m = std::get_if<CMatrix>(&truncated)) return Json{{"result", to_json(*m)}};
    return Json{{"result", to_json(std::get<LinRel>(truncated))}};
  }
  unknown_op("diag", op);
}

Json cmd_proptest(const JobSpec& job) {
  const Json& suite = field(job.inputs, "suite", "");
  if (!suite.is_string()) malformed("at /suite: expected a string");
  return run_proptest(suite.get<std::string>(), job.trials, job.seed, job.tol, job.threads);
}

Json dispatch(const JobSpec& job) {
  if (job.command == "seb") return cmd_seb(job);
  if (job.command == "reverse") return cmd_reverse(job);
  if (job.command == "factor") return cmd_factor(job);
  if (job.command == "wsimilar") return cmd_wsimilar(job);
  if (job.command == "intertwine") return cmd_intertwine(job);
  if (job.command == "rel") return cmd_rel(job);
  if (job.command == "diag") return cmd_diag(job);
  if (job.command == "proptest") return cmd_proptest(job);
  malformed("at /command: unknown command \"" + job.command + "\"");
}

Json header(const std::string& command, double tol, std::uint64_t seed) {
  return Json{{"command", command}, {"tol", tol}, {"seed", seed}};
}

RunResult failure(Json report, int code, const std::string& error_code, const std::string& message) {
  report["status"] = code == kHypothesisFailure ? "hypothesis_failure"
                     : code == kMalformedInput  ? "malformed_input"
                                                : "numerical_failure";
  report["exit_code"] = code;
  report["error"] = Json{{"code", error_code}, {"message", message}};
  return {code, std::move(report)};
}

double parse_tol(const Json& j, const std::string& where) {
  if (!j.is_number() || !(j.get<double>() > 0.0) || !std::isfinite(j.get<double>()))
    malformed(where + ": tolerance must be a positive finite number");
  return j.get<double>();
}

}  // namespace

double default_tol() {
  const char* env = std::getenv("PSDFACTOR_TOL");
  if (env == nullptr || *env == '\0') return kDefaultTol;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
    malformed(std::string("PSDFACTOR_TOL: cannot read \"") + env + "\" as a positive tolerance");
  return v;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NotSquare:
      return kMalformedInput;
    case ErrorCode::NoConvergence:
      return kNumericalFailure;
    default:
      return kHypothesisFailure;
  }
}

JobSpec job_from_document(const Json& doc, const Overrides& over) {
  if (!doc.is_object()) malformed("at /: the job document must be an object");
  JobSpec job;
  job.inputs = doc;
  if (doc.contains("command") && !doc["command"].is_string()) malformed("at /command: expected a string");
  const std::string doc_command = doc.value("command", std::string());
  if (over.command && !doc_command.empty() && *over.command != doc_command)
    malformed("at /command: document names \"" + doc_command + "\" but the command line names \"" +
              *over.command + "\"");
  job.command = over.command ? *over.command : doc_command;
  if (job.command.empty()) malformed("at /command: missing field");
  if (std::find(kCommands.begin(), kCommands.end(), job.command) == kCommands.end())
    malformed("at /command: unknown command \"" + job.command + "\"");

  if (over.tol) {
    job.tol = parse_tol(Json(*over.tol), "--tol");
  } else if (doc.contains("tol")) {
    job.tol = parse_tol(doc["tol"], "at /tol");
  } else {
    job.tol = default_tol();
  }
  if (over.seed) {
    job.seed = *over.seed;
  } else if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) malformed("at /seed: expected an unsigned 64-bit integer");
    job.seed = doc["seed"].get<std::uint64_t>();
  }
  if (over.trials) {
    job.trials = *over.trials;
  } else if (doc.contains("trials")) {
    if (!doc["trials"].is_number_integer()) malformed("at /trials: expected an integer");
    job.trials = doc["trials"].get<int>();
  }
  if (job.trials < 1) malformed("at /trials: expected at least one trial");
  if (over.suite) job.inputs["suite"] = *over.suite;
  job.threads = std::max(1, over.threads);
  return job;
}

RunResult run(const JobSpec& job) {
  const auto start = std::chrono::steady_clock::now();
  Json report = header(job.command, job.tol, job.seed);
  RunResult result;
  try {
    Json body = dispatch(job);
    report["status"] = "completed";
    report["exit_code"] = static_cast<int>(kCompleted);
    for (auto& [key, value] : body.items()) report[key] = std::move(value);
    result = {kCompleted, std::move(report)};
  } catch (const Error& e) {
    result = failure(std::move(report), exit_code_for(e.code()), std::string(to_string(e.code())), e.what());
  } catch (const nlohmann::json::exception& e) {
    result = failure(std::move(report), kMalformedInput, "ParseError", e.what());
  }
  stamp_wall_clock(result.report,
                   std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return result;
}

RunResult run_text(const std::string& text, const Overrides& over) {
  const std::string command = over.command.value_or("");
  JobSpec job;
  try {
    job = job_from_document(parse_document(text), over);
  } catch (const Error& e) {
    return failure(header(command, over.tol.value_or(kDefaultTol), over.seed.value_or(0)),
                   exit_code_for(e.code()), std::string(to_string(e.code())), e.what());
  }
  return run(job);
}

void stamp_wall_clock(Json& report, double seconds) {
  report["timing"] = Json{{"wall_clock_s", seconds}};
}

Json without_timing(const Json& report) {
  Json copy = report;
  copy.erase("timing");
  return copy;
}

}  // namespace psdfactor::cli
