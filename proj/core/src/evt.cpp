#include "evstat/evt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "evstat/errors.hpp"
#include "evstat/logdim.hpp"
#include "evstat/parallel.hpp"
#include "evstat/stats.hpp"

namespace evstat {

std::vector<double> top_k(std::span<const double> samples, std::size_t k) {
  if (k > samples.size()) throw std::invalid_argument("top_k: k exceeds sample size");
  std::vector<double> out(samples.begin(), samples.end());
  std::partial_sort(out.begin(), out.begin() + k, out.end(), std::greater<>());
  out.resize(k);
  return out;
}

namespace {

// Largest and second-largest of a streamed batch.
struct Top2 {
  double first = -std::numeric_limits<double>::infinity();
  double second = -std::numeric_limits<double>::infinity();
  void offer(double x) noexcept {
    if (x > second) {
      if (x > first) {
        second = first;
        first = x;
      } else {
        second = x;
      }
    }
  }
};

double top2_spacing(const DistSpec& dist, std::size_t n, RandomSource& rng) {
  TailSample batch = sample(dist, n, rng);
  Top2 t;
  for (double v : batch.values) t.offer(v);
  return t.first - t.second;
}

}  // namespace

SpacingReport spacing_experiment(const DistSpec& dist, std::span<const std::size_t> ensemble_sizes,
                                 std::size_t replicates, const RandomSource& rng,
                                 unsigned threads) {
  dist.validate();
  if (ensemble_sizes.empty()) throw std::invalid_argument("spacing_experiment: no ensemble sizes");
  for (std::size_t i = 0; i < ensemble_sizes.size(); ++i) {
    if (ensemble_sizes[i] < 2)
      throw std::invalid_argument("spacing_experiment: ensemble sizes must be >= 2");
    if (i > 0 && ensemble_sizes[i] <= ensemble_sizes[i - 1])
      throw std::invalid_argument("spacing_experiment: ensemble sizes must be strictly increasing");
  }
  if (replicates < 1) throw std::invalid_argument("spacing_experiment: replicates must be >= 1");

  std::size_t n_sizes = ensemble_sizes.size();
  std::vector<std::vector<double>> spacings(n_sizes, std::vector<double>(replicates));
  std::uint64_t base = rng.stream() + 1;
  parallel_for(static_cast<std::uint64_t>(n_sizes) * replicates, threads, [&](std::uint64_t j) {
    std::size_t i = static_cast<std::size_t>(j / replicates);
    std::size_t r = static_cast<std::size_t>(j % replicates);
    RandomSource local = rng.at_stream(base + j);
    spacings[i][r] = top2_spacing(dist, ensemble_sizes[i], local);
  });

  SpacingReport report;
  report.dist = dist;
  report.ensemble_sizes.assign(ensemble_sizes.begin(), ensemble_sizes.end());
  report.replicates = replicates;
  report.median_spacing.resize(n_sizes);
  for (std::size_t i = 0; i < n_sizes; ++i) report.median_spacing[i] = median(spacings[i]);

  std::vector<double> log_n(n_sizes), log_med(n_sizes);
  for (std::size_t i = 0; i < n_sizes; ++i) {
    log_n[i] = std::log(static_cast<double>(ensemble_sizes[i]));
    log_med[i] = std::log(report.median_spacing[i]);
  }
  report.slope = ols_fit(log_n, log_med).slope;

  // Bootstrap: resample replicate spacings per size, refit the slope.
  RandomSource boot = rng.at_stream(base + static_cast<std::uint64_t>(n_sizes) * replicates);
  std::vector<std::vector<double>> boot_medians(n_sizes,
                                                std::vector<double>(spacing_bootstrap_resamples));
  std::vector<double> slopes(spacing_bootstrap_resamples);
  std::vector<double> buf(replicates), log_b(n_sizes);
  for (std::size_t b = 0; b < spacing_bootstrap_resamples; ++b) {
    for (std::size_t i = 0; i < n_sizes; ++i) {
      for (std::size_t r = 0; r < replicates; ++r) buf[r] = spacings[i][boot.next_below(replicates)];
      boot_medians[i][b] = median(buf);
      log_b[i] = std::log(boot_medians[i][b]);
    }
    slopes[b] = ols_fit(log_n, log_b).slope;
  }
  auto sample_sd = [](std::span<const double> xs) {
    double mean = 0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
  };
  report.slope_stderr = sample_sd(slopes);
  report.median_spacing_stderr.resize(n_sizes);
  for (std::size_t i = 0; i < n_sizes; ++i)
    report.median_spacing_stderr[i] = sample_sd(boot_medians[i]);
  return report;
}

TailEstimate hill_estimator(std::span<const double> samples, std::size_t k) {
  std::size_t n = samples.size();
  if (k < 2 || k >= n) throw std::invalid_argument("hill_estimator: need 2 <= k < n");
  for (double v : samples) {
    if (!(v > 0.0)) throw std::domain_error("hill_estimator: samples must be positive");
  }
  std::vector<double> top(samples.begin(), samples.end());
  std::partial_sort(top.begin(), top.begin() + (k + 1), top.end(), std::greater<>());
  double pivot = std::log(top[k]);
  KahanSum sum;
  for (std::size_t i = 0; i < k; ++i) sum.add(std::log(top[i]) - pivot);
  TailEstimate est;
  est.alpha_hat = static_cast<double>(k) / sum.value();
  est.k_used = k;
  est.n = n;
  return est;
}

double mda_hazard_ratio(const DistSpec& spec, double x) {
  spec.validate();
  return x * spec.pdf(x) / spec.survival(x);
}

double single_big_jump(const DistSpec& dist, std::size_t n_summands, double threshold_quantile,
                       std::size_t replicates, const RandomSource& rng, unsigned threads) {
  return single_big_jump_detail(dist, n_summands, threshold_quantile, replicates, rng, threads)
      .frequency;
}

BigJumpResult single_big_jump_detail(const DistSpec& dist, std::size_t n_summands,
                                     double threshold_quantile, std::size_t replicates,
                                     const RandomSource& rng, unsigned threads) {
  dist.validate();
  if (n_summands < 1) throw std::invalid_argument("single_big_jump: need at least one summand");
  if (!(threshold_quantile > 0.0 && threshold_quantile < 1.0))
    throw std::invalid_argument("single_big_jump: threshold quantile outside (0,1)");
  if (replicates < 2) throw std::invalid_argument("single_big_jump: need replicates >= 2");

  std::vector<double> sums(replicates), maxes(replicates);
  std::uint64_t base = rng.stream() + 1;
  parallel_for(replicates, threads, [&](std::uint64_t r) {
    RandomSource local = rng.at_stream(base + r);
    TailSample batch = sample(dist, n_summands, local);
    KahanSum s;
    double m = -std::numeric_limits<double>::infinity();
    for (double v : batch.values) {
      s.add(v);
      m = std::max(m, v);
    }
    sums[r] = s.value();
    maxes[r] = m;
  });

  double threshold = order_quantile(sums, threshold_quantile);
  std::uint64_t events = 0, hits = 0;
  for (std::size_t r = 0; r < replicates; ++r) {
    if (sums[r] > threshold) {
      ++events;
      if (maxes[r] / sums[r] > big_jump_ratio) ++hits;
    }
  }
  if (events < big_jump_min_events)
    throw insufficient_data_error("single_big_jump: only " + std::to_string(events) +
                                      " conditioning events above the threshold quantile (need " +
                                      std::to_string(big_jump_min_events) + ")",
                                  events, big_jump_min_events);
  BigJumpResult result;
  result.frequency = static_cast<double>(hits) / static_cast<double>(events);
  result.events = events;
  result.threshold_value = threshold;
  return result;
}

std::vector<DominanceGrowthRow> dominance_growth(const DistSpec& exponent_dist,
                                                 std::span<const std::size_t> ensemble_sizes,
                                                 std::size_t replicates, const RandomSource& rng,
                                                 unsigned threads) {
  exponent_dist.validate();
  if (exponent_dist.family != Family::pareto && exponent_dist.family != Family::frechet)
    throw config_error("dominance_growth: exponent family must be pareto or frechet");
  if (ensemble_sizes.empty()) throw std::invalid_argument("dominance_growth: no ensemble sizes");
  for (std::size_t n : ensemble_sizes) {
    if (n < 2) throw std::invalid_argument("dominance_growth: ensemble sizes must be >= 2");
  }
  if (replicates < 2) throw std::invalid_argument("dominance_growth: need replicates >= 2");

  std::size_t n_sizes = ensemble_sizes.size();
  std::vector<std::vector<double>> fractions(n_sizes, std::vector<double>(replicates));
  std::uint64_t base = rng.stream() + 1;
  parallel_for(static_cast<std::uint64_t>(n_sizes) * replicates, threads, [&](std::uint64_t j) {
    std::size_t i = static_cast<std::size_t>(j / replicates);
    std::size_t r = static_cast<std::size_t>(j % replicates);
    RandomSource local = rng.at_stream(base + j);
    TailSample batch = sample(exponent_dist, ensemble_sizes[i], local);
    std::sort(batch.values.begin(), batch.values.end(), std::greater<>());
    fractions[i][r] = dominance_fraction(batch.values).log2_value();
  });

  std::uint64_t boot_base = base + static_cast<std::uint64_t>(n_sizes) * replicates;
  std::vector<DominanceGrowthRow> out(n_sizes);
  for (std::size_t i = 0; i < n_sizes; ++i) {
    out[i].ensemble_size = ensemble_sizes[i];
    out[i].median_log2_fraction = median(fractions[i]);
    RandomSource boot = rng.at_stream(boot_base + i);
    out[i].median_log2_fraction_stderr = bootstrap_median_stderr(fractions[i], 200, boot);
  }
  return out;
}

}  // namespace evstat
