#include "evstat/random.hpp"

#include <cmath>
#include <stdexcept>

namespace evstat {

double RandomSource::exponential(double rate) {
  if (!(rate > 0.0)) throw std::domain_error("exponential: rate must be positive");
  return -std::log(next_unit_open()) / rate;
}

std::uint64_t RandomSource::poisson(double mean) {
  if (!(mean >= 0.0)) throw std::domain_error("poisson: mean must be nonnegative");
  if (mean == 0.0) return 0;
  // Knuth's product method; fine for the small means used here.
  double limit = std::exp(-mean);
  std::uint64_t k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= next_unit_open();
  } while (p > limit);
  return k - 1;
}

}  // namespace evstat
