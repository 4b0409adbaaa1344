#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "evstat/random.hpp"

namespace evstat {

/// Compensated (Kahan) accumulator.
class KahanSum {
public:
  void add(double x) noexcept {
    double y = x - carry_;
    double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const noexcept { return sum_; }

private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Median with the usual midpoint rule for even sizes. Copies its input.
double median(std::vector<double> values);

/// Order-statistic quantile: the ceil(q*n)-th smallest value (1-based),
/// clamped to the sample range. q in (0, 1).
double order_quantile(std::vector<double> values, double q);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares of y against x.
LinearFit ols_fit(std::span<const double> x, std::span<const double> y);

/// Standard normal quantile (inverse CDF), Wichura's AS 241 PPND16
/// rational approximation, accurate to ~1e-16 relative. p in (0, 1).
double normal_quantile(double p);

/// Standard normal CDF.
double normal_cdf(double x);

/// Kolmogorov-Smirnov statistic of a sample against CDF values evaluated
/// at the sorted sample points. `cdf_at_sorted[i]` = F(x_(i)), ascending.
double ks_statistic(std::span<const double> cdf_at_sorted);

/// Bootstrap standard error of the median (resampling with replacement).
double bootstrap_median_stderr(std::span<const double> values, std::size_t resamples,
                               RandomSource& rng);

/// Default Hill order-statistic count: n^0.8 capped at n/10, at least 2.
std::size_t hill_default_k(std::size_t n);

}  // namespace evstat
