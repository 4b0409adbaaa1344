#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evstat/random.hpp"
#include "evstat/report.hpp"

namespace evstat {

enum class MechanismKind { chain_reaction, galton_watson, pref_attach };

std::string_view mechanism_name(MechanismKind k);
MechanismKind mechanism_from_name(std::string_view name);

/// Parameters of the three power-law generating mechanisms.
struct MechanismConfig {
  MechanismKind kind = MechanismKind::chain_reaction;
  double beta = 0.5;           // chain reaction: growth rate per unit time
  double gamma = 1.0;          // chain reaction: termination rate per unit time
  double offspring_mean = 1.0; // Galton-Watson Poisson offspring mean, (0, 1.2]
  std::size_t nodes = 100000;  // preferential attachment network size
  std::size_t edges_per_node = 1;

  void validate() const;  // throws config_error

  /// Tail index the mechanism is expected to generate (gamma/beta for the
  /// chain reaction, 1/2 for critical Galton-Watson totals, 2 for linear
  /// preferential attachment). Unset (NaN) for non-critical Galton-Watson.
  double predicted_tail_index() const;
};

/// Growth size after runtime t: ceil(e^{beta t}), with beta*t clamped at
/// the overflow guard.
inline constexpr double chain_reaction_max_exponent = 700.0;
double chain_reaction_size(double beta, double t);

/// One chain-reaction sample: runtime t ~ Exponential(gamma), size
/// ceil(e^{beta t}). The size's tail index is gamma/beta.
double chain_reaction_sample(double beta, double gamma, RandomSource& rng);

struct ChainReactionBatch {
  std::vector<double> values;
  std::uint64_t capped = 0;  // draws clamped by the overflow guard
};

ChainReactionBatch chain_reaction_batch(double beta, double gamma, std::size_t n,
                                        const RandomSource& rng, unsigned threads = 0);

/// Node budget per Galton-Watson tree.
inline constexpr std::uint64_t gw_progeny_cap = 10'000'000;

struct ProgenyResult {
  std::uint64_t total = 0;  // total nodes including the root (cap when capped)
  bool capped = false;
};

/// Total progeny of a Galton-Watson tree with Poisson(offspring_mean)
/// offspring, simulated generation by generation until extinction or the
/// cap. offspring_mean in (0, 1.2].
ProgenyResult gw_total_progeny(double offspring_mean, RandomSource& rng);

struct ProgenyBatch {
  std::vector<double> totals;  // uncapped runs only, in sample order
  std::uint64_t capped = 0;
};

ProgenyBatch gw_progeny_batch(double offspring_mean, std::size_t n, const RandomSource& rng,
                              unsigned threads = 0);

/// Final degree sequence of a linear preferential-attachment network:
/// seed clique on m+1 nodes, then one node per step bringing m edges to
/// distinct existing nodes chosen proportionally to current degree.
std::vector<std::uint32_t> pref_attach_degrees(std::size_t nodes, std::size_t m,
                                               RandomSource& rng);

/// Hill depth exponent favored by each mechanism's discreteness/truncation
/// profile: shallow (n^0.5) for the chain reaction whose integer sizes get
/// coarse near the top, deep (n^0.7) for Galton-Watson where excluding
/// capped runs truncates the extreme order statistics, n^0.6 in between
/// for pooled attachment degrees.
double mechanism_designated_exponent(MechanismKind kind);
std::size_t mechanism_designated_k(MechanismKind kind, std::size_t n);

/// Raw mechanism output: the generated values (pooled degrees for
/// pref_attach, sizes/totals otherwise, capped runs excluded), exportable
/// as a single-column CSV for external analysis.
struct MechanismSamples {
  std::vector<double> values;
  std::uint64_t capped = 0;
  double median_top2_rel_gap = 0.0;  // pref_attach only, NaN otherwise
};

MechanismSamples mechanism_samples(const MechanismConfig& config, std::size_t samples,
                                   const RandomSource& rng, unsigned threads = 0);

/// Generates samples from the configured mechanism and estimates the tail
/// index at three Hill depths (k = n^0.5, n^0.6, n^0.7), marking the
/// designated one. For pref_attach, `samples` counts network replicates
/// and degrees are pooled. Capped-sample accounting and reliability
/// warnings land in the report summary.
ExperimentReport mechanism_tail_report(const MechanismConfig& config, std::size_t samples,
                                       const RandomSource& rng, unsigned threads = 0);

/// Same report built from pre-generated samples.
ExperimentReport mechanism_tail_report(const MechanismConfig& config, std::size_t samples,
                                       const MechanismSamples& generated);

}  // namespace evstat
