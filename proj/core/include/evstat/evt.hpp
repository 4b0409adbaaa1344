#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "evstat/dist.hpp"
#include "evstat/random.hpp"

namespace evstat {

/// The k largest values in descending order; duplicates are retained.
std::vector<double> top_k(std::span<const double> samples, std::size_t k);

/// Median top-two spacing per ensemble size and the log-log scaling slope.
struct SpacingReport {
  DistSpec dist;
  std::vector<std::size_t> ensemble_sizes;
  std::size_t replicates = 0;
  std::vector<double> median_spacing;         // one per ensemble size
  std::vector<double> median_spacing_stderr;  // bootstrap, one per size
  double slope = 0.0;
  double slope_stderr = 0.0;
};

inline constexpr std::size_t spacing_bootstrap_resamples = 200;

/// For each N: the median over replicates of X_(1) - X_(2) among N draws;
/// then the least-squares slope of ln(median) vs ln(N). Standard errors
/// come from 200 bootstrap resamples of the replicate spacings.
///
/// Replicate (i, r) draws from stream base+1 + i*replicates + r, where
/// base is rng.stream(); results do not depend on `threads`.
SpacingReport spacing_experiment(const DistSpec& dist, std::span<const std::size_t> ensemble_sizes,
                                 std::size_t replicates, const RandomSource& rng,
                                 unsigned threads = 0);

struct TailEstimate {
  double alpha_hat = 0.0;
  std::size_t k_used = 0;
  std::size_t n = 0;
};

/// Hill tail-index estimator from the k+1 largest order statistics:
/// alpha_hat = k / sum_{i=1..k} ln(X_(i) / X_(k+1)). Requires positive
/// samples and 2 <= k < n.
TailEstimate hill_estimator(std::span<const double> samples, std::size_t k);

/// Von Mises hazard ratio x f(x) / (1 - F(x)). Tends to alpha for members
/// of the Frechet domain of attraction; diverges from any positive limit
/// otherwise.
double mda_hazard_ratio(const DistSpec& spec, double x);

/// Ratio threshold defining "the maximum is essentially the whole sum".
inline constexpr double big_jump_ratio = 0.9;
inline constexpr std::uint64_t big_jump_min_events = 30;

struct BigJumpResult {
  double frequency = 0.0;        // conditional P(max/sum > 0.9)
  std::uint64_t events = 0;      // replicates above the threshold
  double threshold_value = 0.0;  // empirical quantile of the sum
};

/// Estimates P(max/sum > 0.9 | sum > s) where s is the empirical
/// `threshold_quantile` of the sum of `n_summands` draws. Throws
/// insufficient_data_error when fewer than 30 replicates land above s.
double single_big_jump(const DistSpec& dist, std::size_t n_summands, double threshold_quantile,
                       std::size_t replicates, const RandomSource& rng, unsigned threads = 0);

/// Same estimate with the conditioning details attached.
BigJumpResult single_big_jump_detail(const DistSpec& dist, std::size_t n_summands,
                                     double threshold_quantile, std::size_t replicates,
                                     const RandomSource& rng, unsigned threads = 0);

/// How much of the summed magnitudes 2^{X_i} escapes the largest term when
/// the exponents X are drawn i.i.d. from a heavy-tailed family.
struct DominanceGrowthRow {
  std::size_t ensemble_size = 0;
  double median_log2_fraction = 0.0;
  double median_log2_fraction_stderr = 0.0;  // bootstrap (200 resamples)
};

/// Per ensemble size N: median over replicates of the log2 dominance
/// fraction of N exponent draws. exponent_dist must be pareto or frechet.
std::vector<DominanceGrowthRow> dominance_growth(const DistSpec& exponent_dist,
                                                 std::span<const std::size_t> ensemble_sizes,
                                                 std::size_t replicates, const RandomSource& rng,
                                                 unsigned threads = 0);

}  // namespace evstat
