#include <doctest.h>

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <random>
#include <vector>

#include "evstat/logdim.hpp"
#include "evstat/random.hpp"
#include "helpers.hpp"

using namespace evstat;
using evstat::test::rel_err;

TEST_CASE("logdim_sum small closed forms") {
  std::vector<LogDim> v = {LogDim::from_log2(3.0), LogDim::from_log2(3.0)};
  CHECK(logdim_sum(v).log2_value() == doctest::Approx(4.0).epsilon(1e-14));  // 8 + 8 = 16

  std::vector<LogDim> w = {LogDim::from_log2(5.0), LogDim::from_log2(4.0),
                           LogDim::from_log2(3.0)};
  CHECK(logdim_sum(w).log2_value() ==
        doctest::Approx(5.807354922057604).epsilon(1e-13));  // log2(56)
}

TEST_CASE("logdim_sum absorbs addends below relative precision") {
  std::vector<LogDim> v = {LogDim::from_log2(1e12), LogDim::from_log2(0.0)};
  CHECK(logdim_sum(v).log2_value() == 1e12);
}

TEST_CASE("logdim_sum of nothing is the zero magnitude") {
  CHECK(logdim_sum({}).is_zero());
  std::vector<LogDim> zeros = {LogDim::zero(), LogDim::zero()};
  CHECK(logdim_sum(zeros).is_zero());
}

TEST_CASE("logdim_sum ignores zero elements among finite ones") {
  std::vector<LogDim> v = {LogDim::zero(), LogDim::from_log2(2.0), LogDim::zero()};
  CHECK(logdim_sum(v).log2_value() == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("logdim_sum agrees with direct summation below 2^50") {
  RandomSource rng(123, 0);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng.next_below(20);
    std::vector<LogDim> dims;
    double direct = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double e = rng.next_unit() * 49.0;
      dims.push_back(LogDim::from_log2(e));
      direct += std::exp2(e);
    }
    CHECK(rel_err(logdim_sum(dims).log2_value(), std::log2(direct)) < 1e-12);
  }
}

TEST_CASE("logdim_sum is permutation-invariant to 1e-12") {
  RandomSource rng(124, 0);
  std::mt19937_64 shuffler(9);
  std::vector<LogDim> dims;
  for (int i = 0; i < 100; ++i) dims.push_back(LogDim::from_log2(rng.next_unit() * 2000.0 - 1000.0));
  double reference = logdim_sum(dims).log2_value();
  for (int s = 0; s < 20; ++s) {
    std::shuffle(dims.begin(), dims.end(), shuffler);
    CHECK(rel_err(logdim_sum(dims).log2_value(), reference) < 1e-12);
  }
}

TEST_CASE("dominance_fraction closed forms") {
  std::vector<double> xs = {10.0, 7.0, 5.0};  // (128 + 32) / 1024
  CHECK(dominance_fraction(xs).log2_value() ==
        doctest::Approx(-2.678071905112638).epsilon(1e-13));

  std::vector<double> tie = {4.0, 4.0};
  CHECK(dominance_fraction(tie).log2_value() == 0.0);  // exact
}

TEST_CASE("dominance_fraction argument checks") {
  std::vector<double> one = {1.0};
  CHECK_THROWS_AS(dominance_fraction(one), std::invalid_argument);
  std::vector<double> unsorted = {1.0, 3.0, 2.0};
  CHECK_THROWS_AS(dominance_fraction(unsorted), std::invalid_argument);
}

TEST_CASE("dominance_fraction never exceeds the analytic bound") {
  RandomSource rng(125, 0);
  for (int trial = 0; trial < 2000; ++trial) {
    std::size_t n = 2 + rng.next_below(200);
    std::vector<double> xs(n);
    double scale = std::exp2(rng.next_unit() * 24.0 - 4.0);
    double offset = (rng.next_unit() - 0.5) * 1e9;
    bool ties = rng.next_below(3) == 0;
    for (auto& x : xs)
      x = offset + scale * (ties ? static_cast<double>(rng.next_below(3)) : rng.next_unit());
    std::sort(xs.begin(), xs.end(), std::greater<>());
    double frac = dominance_fraction(xs).log2_value();
    double bound = (xs[1] - xs[0]) + std::log2(static_cast<double>(n - 1));
    CHECK(frac <= bound);
  }
}

TEST_CASE("LogDim ordering agrees with a 100-digit magnitude oracle") {
  using big = boost::multiprecision::cpp_bin_float_100;
  RandomSource rng(126, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    double ea = rng.next_unit() * 60.0 - 30.0;
    double eb = rng.next_unit() * 60.0 - 30.0;
    if (rng.next_below(8) == 0) eb = ea;  // force ties sometimes
    LogDim a = LogDim::from_log2(ea);
    LogDim b = LogDim::from_log2(eb);
    big ma = boost::multiprecision::pow(big(2), big(ea));
    big mb = boost::multiprecision::pow(big(2), big(eb));
    CHECK((a < b) == (ma < mb));
    CHECK((a == b) == (ma == mb));
    CHECK((a > b) == (ma > mb));
  }
}

TEST_CASE("LogDim zero marker and magnitudes") {
  CHECK(LogDim::zero().is_zero());
  CHECK(LogDim::from_magnitude(0.0).is_zero());
  CHECK(LogDim::from_magnitude(1024.0).log2_value() == 10.0);
  CHECK(LogDim::from_log2(10.0).magnitude() == 1024.0);
  CHECK(LogDim::zero() < LogDim::from_log2(-1e308));
  CHECK_THROWS_AS(LogDim::from_magnitude(-1.0), std::domain_error);
}

TEST_CASE("nat_to_log2 rebases natural logs") {
  CHECK(nat_to_log2(0.0).log2_value() == 0.0);
  CHECK(nat_to_log2(std::log(2.0)).log2_value() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rel_err(nat_to_log2(-1e34).log2_value(), -1.4426950408889634e34) < 1e-15);
}

TEST_CASE("extremal_amplitude_log2 equal-split model") {
  CHECK(extremal_amplitude_log2(1.0, 1.0, 2).log2_value() == -1.0);

  LogDim century = extremal_amplitude_log2(300.0, 100.0 * seconds_per_year, 2);
  CHECK(century.log2_value() == doctest::Approx(-9.4608e11).epsilon(1e-12));
  CHECK(century.log2_value() >= -1.05e12);
  CHECK(century.log2_value() <= -0.9e12);

  // The post-measurement amplitude still towers over the tunnel amplitude.
  CHECK(century > nat_to_log2(-1e34));

  CHECK_THROWS_AS(extremal_amplitude_log2(0.0, 1.0, 2), std::domain_error);
  CHECK_THROWS_AS(extremal_amplitude_log2(1.0, -1.0, 2), std::domain_error);
  CHECK_THROWS_AS(extremal_amplitude_log2(1.0, 1.0, 1), std::domain_error);
}
