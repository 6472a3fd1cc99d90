#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "psdfactor/cli/app.hpp"
#include "psdfactor/cli/proptest.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw psdfactor::Error(psdfactor::ErrorCode::ParseError, "cannot open input file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace psdfactor::cli;

  CLI::App app{"Factorization into nonnegative selfadjoint factors: batch engines and property tests"};
  std::string command;
  std::string in_path;
  std::string out_path;
  double tol = 0.0;
  std::uint64_t seed = 0;
  int trials = 0;
  std::string suite;
  int threads = 1;
  bool no_timing = false;
  bool list_suites = false;

  app.add_option("command", command, "seb | reverse | factor | wsimilar | intertwine | rel | diag | proptest");
  app.add_option("--in", in_path, "job document, or - for stdin");
  app.add_option("--out", out_path, "report path (default stdout)");
  auto* tol_opt = app.add_option("--tol", tol, "tolerance (default PSDFACTOR_TOL or 1e-8)");
  auto* seed_opt = app.add_option("--seed", seed, "master seed");
  auto* trials_opt = app.add_option("--trials", trials, "proptest trial count");
  auto* suite_opt = app.add_option("--suite", suite, "proptest suite");
  app.add_option("--threads", threads, "proptest worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--no-timing", no_timing, "omit the wall-clock block");
  app.add_flag("--list-suites", list_suites, "print proptest suite names and exit");
  CLI11_PARSE(app, argc, argv);

  if (list_suites) {
    for (const auto& name : proptest_suites()) std::cout << name << "\n";
    return kCompleted;
  }

  Overrides over;
  if (!command.empty()) over.command = command;
  if (*tol_opt) over.tol = tol;
  if (*seed_opt) over.seed = seed;
  if (*trials_opt) over.trials = trials;
  if (*suite_opt) over.suite = suite;
  over.threads = threads;

  RunResult result;
  try {
    result = run_text(in_path.empty() ? std::string("{}") : read_input(in_path), over);
  } catch (const psdfactor::Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e.code());
  }
  if (no_timing) result.report = without_timing(result.report);
  if (result.report.contains("error"))
    std::cerr << result.report["error"]["message"].get<std::string>() << "\n";

  const std::string text = write_json(result.report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open output file " << out_path << "\n";
      return kMalformedInput;
    }
    out << text;
  }
  return result.exit_code;
}
