#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "evstat/logdim.hpp"
#include "evstat/random.hpp"

namespace evstat {

enum class Family { pareto, frechet, exp_powerlaw, log_normal };

std::string_view family_name(Family f);
Family family_from_name(std::string_view name);

/// A parameterized distribution from one of the four supported families.
///
///   pareto        support [1, inf),  F(x) = 1 - x^-alpha
///   frechet       support (0, inf),  F(x) = exp(-x^-alpha)
///   exp_powerlaw  support (1, inf),  F(z) = exp(-beta (ln z)^-alpha)
///   log_normal    support (0, inf),  ln X ~ Normal(mu, sigma)
///
/// Parameters are meaningful exactly for the chosen family; `validate`
/// and `parse` enforce that.
struct DistSpec {
  Family family = Family::pareto;
  double alpha = 1.0;  // pareto, frechet, exp_powerlaw
  double beta = 1.0;   // exp_powerlaw
  double mu = 0.0;     // log_normal
  double sigma = 1.0;  // log_normal

  static DistSpec pareto(double alpha);
  static DistSpec frechet(double alpha);
  static DistSpec exp_powerlaw(double alpha, double beta);
  static DistSpec log_normal(double mu = 0.0, double sigma = 1.0);

  /// Throws config_error when a parameter violates the family invariants.
  void validate() const;

  double support_min() const;

  /// Inverse CDF. u in (0, 1); pareto also accepts u = 0.
  double quantile(double u) const;

  double cdf(double x) const;

  /// 1 - F(x), evaluated without cancellation near F ~ 1.
  double survival(double x) const;

  double pdf(double x) const;

  /// Key-value form, e.g. "family=pareto alpha=2". Exact round trip.
  std::string to_config() const;

  /// Parses a fragment like "family=pareto alpha=2.0". Unknown keys,
  /// missing/duplicate keys, and parameters that do not belong to the
  /// named family are rejected with the offending column.
  static DistSpec parse(std::string_view fragment);

  friend bool operator==(const DistSpec&, const DistSpec&) = default;
};

/// Standard Pareto quantile (1-u)^(-1/alpha) on [1, inf). u in [0, 1).
double pareto_quantile(double u, double alpha);

/// exp(-x^-alpha) for x > 0.
double frechet_cdf(double x, double alpha);

/// exp(-beta (ln z)^-alpha) for z > 1.
double exp_powerlaw_cdf(double z, double alpha, double beta);

/// A batch of i.i.d. draws together with its provenance.
struct TailSample {
  DistSpec spec;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::vector<double> values;
};

/// n i.i.d. draws by inverse-CDF sampling. Deterministic in (seed, stream).
TailSample sample(const DistSpec& spec, std::size_t n, RandomSource& rng);

/// Draws X from `spec` (pareto or frechet only) and returns the magnitudes
/// 2^X directly in log2 form, so no draw can overflow.
std::vector<LogDim> log2_sample(const DistSpec& spec, std::size_t n, RandomSource& rng);

}  // namespace evstat
