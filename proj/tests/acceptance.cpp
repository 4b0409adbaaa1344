// Acceptance suite: runs every built-in statistical claim at full scale
// (seed 42) and prints one verdict line per criterion. The same battery
// backs the CLI's `reproduce-all` subcommand.

#include <doctest.h>

#include <cstdio>

#include "evstat/claims.hpp"

TEST_CASE("acceptance criteria") {
  evstat::ClaimOptions options;
  options.seed = 42;
  options.threads = 0;

  auto results = evstat::run_all_claims(options);
  REQUIRE(results.size() == static_cast<std::size_t>(evstat::num_claims));

  int passed = 0;
  for (const auto& r : results) {
    std::printf("criterion %2d [%s] %s\n    measured: %s\n    required: %s\n    runtime:  %.2f s\n",
                r.id, r.passed ? "PASS" : "FAIL", r.name.c_str(), r.measured.c_str(),
                r.required.c_str(), r.seconds);
    std::fflush(stdout);
    if (r.passed) ++passed;
  }
  std::printf("criteria passed: %d/%d\n", passed, evstat::num_claims);

  for (const auto& r : results) {
    INFO("criterion ", r.id, ": ", r.name, " | measured ", r.measured, " | required ",
         r.required);
    CHECK(r.passed);
  }
}
