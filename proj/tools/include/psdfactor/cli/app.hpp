#pragma once

// Batch front-end: one job document in, one report document out.

#include <cstdint>
#include <optional>
#include <string>

#include "psdfactor/cli/wire.hpp"

namespace psdfactor::cli {

enum ExitCode : int {
  kCompleted = 0,
  kNumericalFailure = 1,
  kHypothesisFailure = 2,
  kMalformedInput = 3,
};

struct JobSpec {
  std::string command;  // seb, reverse, factor, wsimilar, intertwine, rel, diag, proptest
  Json inputs = Json::object();
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  int trials = 100;
  int threads = 1;  // proptest workers; never changes the report
};

/// Values given on the command line; each one overrides the document.
struct Overrides {
  std::optional<std::string> command;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<std::string> suite;
  int threads = 1;
};

struct RunResult {
  int exit_code = kCompleted;
  Json report;
};

/// PSDFACTOR_TOL when set, otherwise 1e-8. Throws ParseError on a malformed value.
double default_tol();

int exit_code_for(ErrorCode code);

/// Builds a JobSpec from a parsed document plus overrides.
JobSpec job_from_document(const Json& doc, const Overrides& over);

/// Dispatches to the named engine. Errors become a report with an "error"
/// block and the matching exit code.
RunResult run(const JobSpec& job);

/// Parse, build and run in one step; malformed text yields exit code 3.
RunResult run_text(const std::string& text, const Overrides& over);

/// Adds the "timing" block.
void stamp_wall_clock(Json& report, double seconds);
/// The report without its "timing" block, for run-to-run comparison.
Json without_timing(const Json& report);

}  // namespace psdfactor::cli
