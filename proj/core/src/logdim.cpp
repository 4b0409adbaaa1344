#include "evstat/logdim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "evstat/stats.hpp"

namespace evstat {

LogDim LogDim::from_magnitude(double magnitude) {
  if (!(magnitude >= 0.0) || !std::isfinite(magnitude))
    throw std::domain_error("LogDim: magnitude must be finite and nonnegative");
  if (magnitude == 0.0) return zero();
  return from_log2(std::log2(magnitude));
}

double LogDim::magnitude() const { return std::exp2(log2_); }

LogDim logdim_sum(std::span<const LogDim> values) {
  double anchor = -std::numeric_limits<double>::infinity();
  for (LogDim v : values) anchor = std::max(anchor, v.log2_value());
  if (values.empty() || anchor == -std::numeric_limits<double>::infinity()) return LogDim::zero();

  KahanSum sum;
  for (LogDim v : values) {
    if (v.is_zero()) continue;
    sum.add(std::exp2(v.log2_value() - anchor));
  }
  return LogDim::from_log2(anchor + std::log2(sum.value()));
}

LogDim dominance_fraction(std::span<const double> exponents_descending) {
  std::size_t n = exponents_descending.size();
  if (n < 2) throw std::invalid_argument("dominance_fraction: need at least two exponents");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(exponents_descending[i] >= exponents_descending[i + 1]))
      throw std::invalid_argument("dominance_fraction: input not sorted descending");
  }
  if (!std::isfinite(exponents_descending[0]) || !std::isfinite(exponents_descending[n - 1]))
    throw std::invalid_argument("dominance_fraction: exponents must be finite");

  // Anchor at X_2, the largest term of the non-leading sum. Every addend is
  // then <= 1, and compensated summation keeps the total <= N-1, which
  // preserves the log2(N-1) + X_2 - X_1 bound in floating point.
  double x1 = exponents_descending[0];
  double x2 = exponents_descending[1];
  KahanSum sum;
  for (std::size_t i = 1; i < n; ++i) sum.add(std::exp2(exponents_descending[i] - x2));
  return LogDim::from_log2((x2 - x1) + std::log2(sum.value()));
}

LogDim nat_to_log2(double ln_value) {
  return LogDim::from_log2(ln_value / std::numbers::ln2);
}

LogDim extremal_amplitude_log2(double rate_per_second, double lifetime_seconds,
                               std::uint64_t branches_per_event) {
  if (!(rate_per_second > 0.0)) throw std::domain_error("extremal_amplitude_log2: rate <= 0");
  if (!(lifetime_seconds > 0.0)) throw std::domain_error("extremal_amplitude_log2: lifetime <= 0");
  if (branches_per_event < 2)
    throw std::domain_error("extremal_amplitude_log2: need at least two branches per event");
  double bits_per_event = std::log2(static_cast<double>(branches_per_event));
  return LogDim::from_log2(-rate_per_second * lifetime_seconds * bits_per_event);
}

}  // namespace evstat
