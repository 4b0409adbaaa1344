#include "evstat/dist.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>

#include "evstat/errors.hpp"
#include "evstat/report.hpp"
#include "evstat/stats.hpp"

namespace evstat {

namespace {

constexpr double inv_sqrt_2pi = 0.3989422804014326779;

[[noreturn]] void bad_family(std::string_view name) {
  throw config_error("unknown family '" + std::string(name) +
                     "' (expected pareto, frechet, exp_powerlaw or log_normal)");
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::pareto: return "pareto";
    case Family::frechet: return "frechet";
    case Family::exp_powerlaw: return "exp_powerlaw";
    case Family::log_normal: return "log_normal";
  }
  return "?";
}

Family family_from_name(std::string_view name) {
  if (name == "pareto") return Family::pareto;
  if (name == "frechet") return Family::frechet;
  if (name == "exp_powerlaw" || name == "exp-powerlaw") return Family::exp_powerlaw;
  if (name == "log_normal" || name == "lognormal" || name == "log-normal")
    return Family::log_normal;
  bad_family(name);
}

DistSpec DistSpec::pareto(double alpha) { return {Family::pareto, alpha, 1.0, 0.0, 1.0}; }
DistSpec DistSpec::frechet(double alpha) { return {Family::frechet, alpha, 1.0, 0.0, 1.0}; }
DistSpec DistSpec::exp_powerlaw(double alpha, double beta) {
  return {Family::exp_powerlaw, alpha, beta, 0.0, 1.0};
}
DistSpec DistSpec::log_normal(double mu, double sigma) {
  return {Family::log_normal, 1.0, 1.0, mu, sigma};
}

void DistSpec::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw config_error(what);
  };
  switch (family) {
    case Family::pareto:
    case Family::frechet:
      require(std::isfinite(alpha) && alpha > 0, "alpha must be positive and finite");
      break;
    case Family::exp_powerlaw:
      require(std::isfinite(alpha) && alpha > 0, "alpha must be positive and finite");
      require(std::isfinite(beta) && beta > 0, "beta must be positive and finite");
      break;
    case Family::log_normal:
      require(std::isfinite(mu), "mu must be finite");
      require(std::isfinite(sigma) && sigma > 0, "sigma must be positive and finite");
      break;
  }
}

double DistSpec::support_min() const {
  switch (family) {
    case Family::pareto: return 1.0;
    case Family::frechet: return 0.0;
    case Family::exp_powerlaw: return 1.0;
    case Family::log_normal: return 0.0;
  }
  return 0.0;
}

double DistSpec::quantile(double u) const {
  switch (family) {
    case Family::pareto:
      return pareto_quantile(u, alpha);
    case Family::frechet:
      if (!(u > 0.0 && u < 1.0)) throw std::domain_error("quantile: u outside (0,1)");
      return std::exp(-std::log(-std::log(u)) / alpha);
    case Family::exp_powerlaw:
      if (!(u > 0.0 && u < 1.0)) throw std::domain_error("quantile: u outside (0,1)");
      return std::exp(std::exp(-std::log(-std::log(u) / beta) / alpha));
    case Family::log_normal:
      if (!(u > 0.0 && u < 1.0)) throw std::domain_error("quantile: u outside (0,1)");
      return std::exp(mu + sigma * normal_quantile(u));
  }
  return 0.0;
}

double DistSpec::cdf(double x) const {
  switch (family) {
    case Family::pareto:
      if (!(x >= 1.0)) throw std::domain_error("cdf: x below pareto support [1,inf)");
      return -std::expm1(-alpha * std::log(x));
    case Family::frechet:
      return frechet_cdf(x, alpha);
    case Family::exp_powerlaw:
      return exp_powerlaw_cdf(x, alpha, beta);
    case Family::log_normal:
      if (!(x > 0.0)) throw std::domain_error("cdf: x outside log_normal support (0,inf)");
      return normal_cdf((std::log(x) - mu) / sigma);
  }
  return 0.0;
}

double DistSpec::survival(double x) const {
  switch (family) {
    case Family::pareto:
      if (!(x >= 1.0)) throw std::domain_error("survival: x below pareto support");
      return std::exp(-alpha * std::log(x));
    case Family::frechet:
      if (!(x > 0.0)) throw std::domain_error("survival: x outside frechet support");
      return -std::expm1(-std::pow(x, -alpha));
    case Family::exp_powerlaw:
      if (!(x > 1.0)) throw std::domain_error("survival: x outside exp_powerlaw support");
      return -std::expm1(-beta * std::pow(std::log(x), -alpha));
    case Family::log_normal: {
      if (!(x > 0.0)) throw std::domain_error("survival: x outside log_normal support");
      double y = (std::log(x) - mu) / sigma;
      return 0.5 * std::erfc(y / std::numbers::sqrt2);
    }
  }
  return 0.0;
}

double DistSpec::pdf(double x) const {
  switch (family) {
    case Family::pareto:
      if (!(x >= 1.0)) throw std::domain_error("pdf: x below pareto support");
      return alpha * std::pow(x, -alpha - 1.0);
    case Family::frechet:
      if (!(x > 0.0)) throw std::domain_error("pdf: x outside frechet support");
      return alpha * std::pow(x, -alpha - 1.0) * std::exp(-std::pow(x, -alpha));
    case Family::exp_powerlaw: {
      if (!(x > 1.0)) throw std::domain_error("pdf: x outside exp_powerlaw support");
      double lx = std::log(x);
      return alpha * beta * std::pow(lx, -alpha - 1.0) *
             std::exp(-beta * std::pow(lx, -alpha)) / x;
    }
    case Family::log_normal: {
      if (!(x > 0.0)) throw std::domain_error("pdf: x outside log_normal support");
      double y = (std::log(x) - mu) / sigma;
      return inv_sqrt_2pi / (sigma * x) * std::exp(-0.5 * y * y);
    }
  }
  return 0.0;
}

std::string DistSpec::to_config() const {
  std::string out = "family=" + std::string(family_name(family));
  switch (family) {
    case Family::pareto:
    case Family::frechet:
      out += " alpha=" + format_double(alpha);
      break;
    case Family::exp_powerlaw:
      out += " alpha=" + format_double(alpha) + " beta=" + format_double(beta);
      break;
    case Family::log_normal:
      out += " mu=" + format_double(mu) + " sigma=" + format_double(sigma);
      break;
  }
  return out;
}

DistSpec DistSpec::parse(std::string_view fragment) {
  struct Token {
    std::string key;
    std::string value;
    std::size_t column;  // 1-based position of the token start
  };
  std::vector<Token> tokens;
  std::size_t pos = 0;
  while (pos < fragment.size()) {
    if (std::isspace(static_cast<unsigned char>(fragment[pos]))) {
      ++pos;
      continue;
    }
    std::size_t start = pos;
    while (pos < fragment.size() && !std::isspace(static_cast<unsigned char>(fragment[pos])))
      ++pos;
    std::string_view tok = fragment.substr(start, pos - start);
    std::size_t eq = tok.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == tok.size())
      throw config_error("expected key=value, got '" + std::string(tok) + "'", 1, start + 1);
    tokens.push_back({std::string(tok.substr(0, eq)), std::string(tok.substr(eq + 1)), start + 1});
  }
  if (tokens.empty()) throw config_error("empty distribution config", 1, 1);

  DistSpec spec;
  bool have_family = false;
  std::set<std::string> seen;
  std::set<std::string> numeric_keys;

  for (const Token& t : tokens) {
    if (!seen.insert(t.key).second)
      throw config_error("duplicate key '" + t.key + "'", 1, t.column);
    if (t.key == "family") {
      try {
        spec.family = family_from_name(t.value);
      } catch (const config_error& e) {
        throw config_error(e.what(), 1, t.column);
      }
      have_family = true;
      continue;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.value.data(), t.value.data() + t.value.size(), v);
    if (ec != std::errc{} || ptr != t.value.data() + t.value.size())
      throw config_error("value of '" + t.key + "' is not a number: '" + t.value + "'", 1,
                         t.column);
    if (t.key == "alpha")
      spec.alpha = v;
    else if (t.key == "beta")
      spec.beta = v;
    else if (t.key == "mu")
      spec.mu = v;
    else if (t.key == "sigma")
      spec.sigma = v;
    else
      throw config_error("unknown key '" + t.key + "'", 1, t.column);
    numeric_keys.insert(t.key);
  }
  if (!have_family) throw config_error("missing 'family' key", 1, 1);

  std::set<std::string> allowed;
  switch (spec.family) {
    case Family::pareto:
    case Family::frechet: allowed = {"alpha"}; break;
    case Family::exp_powerlaw: allowed = {"alpha", "beta"}; break;
    case Family::log_normal: allowed = {"mu", "sigma"}; break;
  }
  for (const Token& t : tokens) {
    if (t.key != "family" && !allowed.contains(t.key))
      throw config_error("key '" + t.key + "' does not belong to family " +
                             std::string(family_name(spec.family)),
                         1, t.column);
  }
  // alpha is mandatory for the power-law families; log_normal keys default.
  if (allowed.contains("alpha") && !numeric_keys.contains("alpha"))
    throw config_error("family " + std::string(family_name(spec.family)) + " requires alpha", 1,
                       1);
  spec.validate();
  return spec;
}

double pareto_quantile(double u, double alpha) {
  if (!(u >= 0.0 && u < 1.0)) throw std::domain_error("pareto_quantile: u outside [0,1)");
  if (!(alpha > 0.0)) throw std::domain_error("pareto_quantile: alpha must be positive");
  return std::exp(-std::log1p(-u) / alpha);
}

double frechet_cdf(double x, double alpha) {
  if (!(x > 0.0)) throw std::domain_error("frechet_cdf: x must be positive");
  if (!(alpha > 0.0)) throw std::domain_error("frechet_cdf: alpha must be positive");
  return std::exp(-std::pow(x, -alpha));
}

double exp_powerlaw_cdf(double z, double alpha, double beta) {
  if (!(z > 1.0)) throw std::domain_error("exp_powerlaw_cdf: z must exceed 1");
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::domain_error("exp_powerlaw_cdf: alpha and beta must be positive");
  return std::exp(-beta * std::pow(std::log(z), -alpha));
}

namespace {

// Per-family draw kernels. The power-law transforms dominate experiment
// cost, so the common alpha values avoid pow().
template <typename Next>
void fill_pareto(double alpha, std::size_t n, double* out, Next&& next) {
  if (alpha == 1.0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 1.0 / (1.0 - next());
  } else if (alpha == 2.0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 1.0 / std::sqrt(1.0 - next());
  } else if (alpha == 0.5) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 1.0 - next();
      out[i] = 1.0 / (s * s);
    }
  } else {
    double inv = -1.0 / alpha;
    for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(inv * std::log1p(-next()));
  }
}

template <typename Next>
void fill_frechet(double alpha, std::size_t n, double* out, Next&& next) {
  if (alpha == 1.0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = -1.0 / std::log(next());
  } else {
    double inv = -1.0 / alpha;
    for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(inv * std::log(-std::log(next())));
  }
}

}  // namespace

TailSample sample(const DistSpec& spec, std::size_t n, RandomSource& rng) {
  spec.validate();
  if (n < 1) throw config_error("sample: n must be at least 1");
  TailSample out;
  out.spec = spec;
  out.seed = rng.seed();
  out.stream = rng.stream();
  out.values.resize(n);
  auto next = [&rng] { return rng.next_unit_open(); };
  switch (spec.family) {
    case Family::pareto:
      fill_pareto(spec.alpha, n, out.values.data(), next);
      break;
    case Family::frechet:
      fill_frechet(spec.alpha, n, out.values.data(), next);
      break;
    case Family::exp_powerlaw:
      for (std::size_t i = 0; i < n; ++i) out.values[i] = spec.quantile(next());
      break;
    case Family::log_normal:
      for (std::size_t i = 0; i < n; ++i)
        out.values[i] = std::exp(spec.mu + spec.sigma * normal_quantile(next()));
      break;
  }
  return out;
}

std::vector<LogDim> log2_sample(const DistSpec& spec, std::size_t n, RandomSource& rng) {
  spec.validate();
  if (spec.family != Family::pareto && spec.family != Family::frechet)
    throw config_error("log2_sample: exponent family must be pareto or frechet");
  if (n < 1) throw config_error("log2_sample: n must be at least 1");
  std::vector<double> x(n);
  auto next = [&rng] { return rng.next_unit_open(); };
  if (spec.family == Family::pareto)
    fill_pareto(spec.alpha, n, x.data(), next);
  else
    fill_frechet(spec.alpha, n, x.data(), next);
  std::vector<LogDim> out;
  out.reserve(n);
  for (double v : x) out.push_back(LogDim::from_log2(v));
  return out;
}

}  // namespace evstat
