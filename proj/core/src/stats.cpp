#include "evstat/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evstat {

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  std::size_t n = values.size();
  std::size_t mid = n / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  double hi = values[mid];
  if (n % 2 == 1) return hi;
  double lo = *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lo + hi);
}

double order_quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("order_quantile: empty input");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("order_quantile: q outside (0,1)");
  std::size_t n = values.size();
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  std::nth_element(values.begin(), values.begin() + (rank - 1), values.end());
  return values[rank - 1];
}

LinearFit ols_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("ols_fit: need two same-length series of size >= 2");
  double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("ols_fit: degenerate abscissa");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

// Wichura (1988), algorithm AS 241, PPND16.
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p outside (0,1)");
  double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    double r = 0.180625 - q * q;
    double num = (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                       6.7265770927008700853e4) *
                          r +
                      4.5921953931549871457e4) *
                         r +
                     1.3731693765509461125e4) *
                        r +
                    1.9715909503065514427e3) *
                       r +
                   1.3314166789178437745e2) *
                      r +
                  3.3871328727963666080e0);
    double den = (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                       3.9307895800092710610e4) *
                          r +
                      2.1213794301586595867e4) *
                         r +
                     5.3941960214247511077e3) *
                        r +
                    6.8718700749205790830e2) *
                       r +
                   4.2313330701600911252e1) *
                      r +
                  1.0);
    return q * num / den;
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    double num = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                       2.41780725177450611770e-1) *
                          r +
                      1.27045825245236838258e0) *
                         r +
                     3.64784832476320460504e0) *
                        r +
                    5.76949722146069140550e0) *
                       r +
                   4.63033784615654529590e0) *
                      r +
                  1.42343711074968357734e0);
    double den = (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                       1.51986665636164571966e-2) *
                          r +
                      1.48103976427480074590e-1) *
                         r +
                     6.89767334985100004550e-1) *
                        r +
                    1.67638483018380384940e0) *
                       r +
                   2.05319162663775882187e0) *
                      r +
                  1.0);
    value = num / den;
  } else {
    r -= 5.0;
    double num = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                       1.24266094738807843860e-3) *
                          r +
                      2.65321895265761230930e-2) *
                         r +
                     2.96560571828504891230e-1) *
                        r +
                    1.78482653991729133580e0) *
                       r +
                   5.46378491116411436990e0) *
                      r +
                  6.65790464350110377720e0);
    double den = (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                       1.84631831751005468180e-5) *
                          r +
                      7.86869131145613259100e-4) *
                         r +
                     1.48753612908506148525e-2) *
                        r +
                    1.36929880922735805310e-1) *
                       r +
                   5.99832206555887937690e-1) *
                      r +
                  1.0);
    value = num / den;
  }
  return (q < 0.0) ? -value : value;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_statistic(std::span<const double> cdf_at_sorted) {
  if (cdf_at_sorted.empty()) throw std::invalid_argument("ks_statistic: empty input");
  double n = static_cast<double>(cdf_at_sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < cdf_at_sorted.size(); ++i) {
    double lo = cdf_at_sorted[i] - static_cast<double>(i) / n;
    double hi = static_cast<double>(i + 1) / n - cdf_at_sorted[i];
    d = std::max({d, lo, hi});
  }
  return d;
}

double bootstrap_median_stderr(std::span<const double> values, std::size_t resamples,
                               RandomSource& rng) {
  if (values.size() < 2 || resamples < 2)
    throw std::invalid_argument("bootstrap_median_stderr: need >=2 values and resamples");
  std::vector<double> meds(resamples);
  std::vector<double> buf(values.size());
  for (std::size_t b = 0; b < resamples; ++b) {
    for (std::size_t i = 0; i < values.size(); ++i)
      buf[i] = values[rng.next_below(values.size())];
    meds[b] = median(buf);
  }
  double mean = 0.0;
  for (double m : meds) mean += m;
  mean /= static_cast<double>(resamples);
  double ss = 0.0;
  for (double m : meds) ss += (m - mean) * (m - mean);
  return std::sqrt(ss / static_cast<double>(resamples - 1));
}

std::size_t hill_default_k(std::size_t n) {
  if (n < 20) return 2;
  auto k = static_cast<std::size_t>(std::pow(static_cast<double>(n), 0.8));
  k = std::min(k, n / 10);
  return std::max<std::size_t>(k, 2);
}

}  // namespace evstat
