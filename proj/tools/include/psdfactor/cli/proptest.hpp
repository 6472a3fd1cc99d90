#pragma once

// Seeded property-test campaigns. Trial i draws from Rng(splitmix64(seed, i));
// results are assembled in trial order, so the report does not depend on the
// number of worker threads.

#include <string>
#include <vector>

#include "psdfactor/cli/wire.hpp"

namespace psdfactor::cli {

std::vector<std::string> proptest_suites();

/// Returns {"verdict", "trials"}. Throws ParseError for an unknown suite.
Json run_proptest(const std::string& suite, int trials, std::uint64_t seed, double tol, int threads);

}  // namespace psdfactor::cli
