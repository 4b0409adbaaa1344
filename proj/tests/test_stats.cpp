#include <doctest.h>

#include <cmath>
#include <vector>

#include "evstat/stats.hpp"
#include "helpers.hpp"

using namespace evstat;
using evstat::test::rel_err;

TEST_CASE("median: odd, even, singleton") {
  CHECK(median({5.0}) == 5.0);
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 3.0, 2.0}) == doctest::Approx(2.5));
  CHECK_THROWS_AS(median({}), std::invalid_argument);
}

TEST_CASE("order_quantile picks the ceil-rank order statistic") {
  std::vector<double> v = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  CHECK(order_quantile(v, 0.5) == 50.0);
  CHECK(order_quantile(v, 0.95) == 100.0);
  CHECK(order_quantile(v, 0.05) == 10.0);
  CHECK_THROWS_AS(order_quantile(v, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(order_quantile(v, 1.0), std::invalid_argument);
}

TEST_CASE("ols_fit recovers an exact line") {
  std::vector<double> x = {1, 2, 3, 4};
  std::vector<double> y = {3.5, 5.5, 7.5, 9.5};  // slope 2, intercept 1.5
  LinearFit fit = ols_fit(x, y);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(1.5).epsilon(1e-12));
  CHECK_THROWS_AS(ols_fit(std::vector<double>{1.0}, std::vector<double>{1.0}),
                  std::invalid_argument);
}

TEST_CASE("normal_quantile matches reference values") {
  // Reference values computed with an independent high-precision
  // implementation of the standard normal inverse CDF.
  struct Case {
    double p, z;
  };
  const Case cases[] = {
      {1e-10, -6.3613409024040557},  {1e-4, -3.7190164854556804},
      {0.001, -3.0902323061678132},  {0.025, -1.9599639845400545},
      {0.1, -1.2815515655446004},    {0.3, -0.52440051270804089},
      {0.5, 0.0},                    {0.7, 0.52440051270804067},
      {0.9, 1.2815515655446004},     {0.975, 1.959963984540054},
      {0.999, 3.0902323061678132},   {0.9999999999, 6.3613408896974217},
  };
  for (const auto& c : cases) {
    double z = normal_quantile(c.p);
    if (c.z == 0.0)
      CHECK(std::fabs(z) < 1e-15);
    else
      CHECK(rel_err(z, c.z) < 1e-13);
  }
  CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
}

TEST_CASE("normal_quantile and normal_cdf invert each other") {
  for (double p : {0.001, 0.1, 0.25, 0.5, 0.75, 0.9, 0.999}) {
    CHECK(std::fabs(normal_cdf(normal_quantile(p)) - p) < 1e-13);
  }
}

TEST_CASE("ks_statistic of a perfectly calibrated sample is 1/(2n)") {
  const std::size_t n = 100;
  std::vector<double> cdf(n);
  for (std::size_t i = 0; i < n; ++i)
    cdf[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  CHECK(ks_statistic(cdf) == doctest::Approx(0.5 / n).epsilon(1e-12));
}

TEST_CASE("hill_default_k follows n^0.8 capped at n/10") {
  CHECK(hill_default_k(1000000) == 63095);
  CHECK(hill_default_k(100) == 10);
  CHECK(hill_default_k(10) == 2);
}

TEST_CASE("bootstrap_median_stderr scales like the theoretical rate") {
  RandomSource rng(11, 0);
  std::vector<double> values(400);
  for (auto& v : values) v = rng.next_unit();
  RandomSource boot(11, 1);
  double se = bootstrap_median_stderr(values, 200, boot);
  // Uniform(0,1) median stderr ~ 1/(2 sqrt(n)) = 0.025.
  CHECK(se > 0.01);
  CHECK(se < 0.05);
}
