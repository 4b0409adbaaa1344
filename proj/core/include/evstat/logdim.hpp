#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <span>

namespace evstat {

/// A nonnegative magnitude stored as its base-2 logarithm.
///
/// Quantities like 2^(10^12) never exist outside the log domain; only the
/// exponent is materialized, carried at double precision. Magnitude zero is
/// the distinguished -infinity marker. Ordering LogDim values orders the
/// magnitudes they stand for.
class LogDim {
public:
  /// Magnitude zero.
  constexpr LogDim() noexcept : log2_(-std::numeric_limits<double>::infinity()) {}

  static constexpr LogDim from_log2(double log2_value) noexcept {
    LogDim d;
    d.log2_ = log2_value;
    return d;
  }

  static constexpr LogDim zero() noexcept { return LogDim(); }

  /// Exact conversion from an ordinary magnitude (m >= 0).
  static LogDim from_magnitude(double magnitude);

  constexpr double log2_value() const noexcept { return log2_; }
  constexpr bool is_zero() const noexcept {
    return log2_ == -std::numeric_limits<double>::infinity();
  }

  /// The plain value 2^log2_value; overflows to +inf beyond double range.
  double magnitude() const;

  friend constexpr auto operator<=>(LogDim a, LogDim b) noexcept {
    return a.log2_ <=> b.log2_;
  }
  friend constexpr bool operator==(LogDim a, LogDim b) noexcept { return a.log2_ == b.log2_; }

private:
  double log2_;
};

/// log2 of the sum of magnitudes, accumulation anchored at the largest
/// element. Empty input (or all zeros) sums to magnitude zero.
LogDim logdim_sum(std::span<const LogDim> values);

/// Fraction of the summed magnitudes 2^{X_i} lying outside the leading
/// term: log2[(sum_{i>=2} 2^{X_i}) / 2^{X_1}] for exponents sorted in
/// descending order. Never exceeds log2(N-1) + X_2 - X_1.
LogDim dominance_fraction(std::span<const double> exponents_descending);

/// Rebase a natural-log magnitude: log2_value = ln_value / ln 2.
LogDim nat_to_log2(double ln_value);

/// Amplitude remaining in one branch after rate*lifetime equal-amplitude
/// splits into `branches_per_event` parts each:
/// log2 = -rate * lifetime * log2(branches_per_event).
LogDim extremal_amplitude_log2(double rate_per_second, double lifetime_seconds,
                               std::uint64_t branches_per_event);

/// 365-day year, the convention used for lifetime conversions.
inline constexpr double seconds_per_year = 365.0 * 86400.0;

}  // namespace evstat
