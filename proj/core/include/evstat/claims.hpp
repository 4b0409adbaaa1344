#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evstat/report.hpp"

namespace evstat {

/// One verified statistical claim.
struct ClaimResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string measured;  // human-readable measured values
  std::string required;  // the bound the measurement is held to
  double seconds = 0.0;  // runtime metadata, not serialized
};

struct ClaimOptions {
  std::uint64_t seed = 42;
  unsigned threads = 0;  // 0 = all hardware threads
};

/// Runs one claim check (ids 1..11). Claim 11 (determinism) re-runs the
/// whole battery twice and byte-compares the serialized summaries, so it
/// costs as much as all the others together.
ClaimResult run_claim(int id, const ClaimOptions& options);

/// All claims in order. The battery is executed twice; the second pass
/// feeds the determinism claim, whose verdict is appended as id 11.
std::vector<ClaimResult> run_all_claims(const ClaimOptions& options);

/// Summary table (one row per claim) for serialization.
ExperimentReport claims_report(const std::vector<ClaimResult>& results,
                               const ClaimOptions& options);

inline constexpr int num_claims = 11;

}  // namespace evstat
