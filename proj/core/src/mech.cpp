#include "evstat/mech.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evstat/errors.hpp"
#include "evstat/evt.hpp"
#include "evstat/parallel.hpp"
#include "evstat/stats.hpp"

namespace evstat {

std::string_view mechanism_name(MechanismKind k) {
  switch (k) {
    case MechanismKind::chain_reaction: return "chain_reaction";
    case MechanismKind::galton_watson: return "galton_watson";
    case MechanismKind::pref_attach: return "pref_attach";
  }
  return "?";
}

MechanismKind mechanism_from_name(std::string_view name) {
  if (name == "chain_reaction" || name == "chain-reaction") return MechanismKind::chain_reaction;
  if (name == "galton_watson" || name == "galton-watson") return MechanismKind::galton_watson;
  if (name == "pref_attach" || name == "pref-attach") return MechanismKind::pref_attach;
  throw config_error("unknown mechanism '" + std::string(name) +
                     "' (expected chain-reaction, galton-watson or pref-attach)");
}

void MechanismConfig::validate() const {
  switch (kind) {
    case MechanismKind::chain_reaction:
      if (!(beta > 0) || !(gamma > 0))
        throw config_error("chain reaction needs beta > 0 and gamma > 0");
      break;
    case MechanismKind::galton_watson:
      if (!(offspring_mean > 0) || offspring_mean > 1.2)
        throw config_error("offspring mean must lie in (0, 1.2]");
      break;
    case MechanismKind::pref_attach:
      if (edges_per_node < 1) throw config_error("edges per node must be >= 1");
      if (nodes < edges_per_node + 1) throw config_error("need nodes >= edges_per_node + 1");
      break;
  }
}

double MechanismConfig::predicted_tail_index() const {
  switch (kind) {
    case MechanismKind::chain_reaction: return gamma / beta;
    case MechanismKind::galton_watson:
      return offspring_mean == 1.0 ? 0.5 : std::numeric_limits<double>::quiet_NaN();
    case MechanismKind::pref_attach: return 2.0;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double chain_reaction_size(double beta, double t) {
  if (!(beta > 0) || !(t >= 0)) throw std::domain_error("chain_reaction_size: beta > 0, t >= 0");
  double exponent = std::min(beta * t, chain_reaction_max_exponent);
  return std::ceil(std::exp(exponent));
}

double chain_reaction_sample(double beta, double gamma, RandomSource& rng) {
  if (!(beta > 0) || !(gamma > 0))
    throw std::domain_error("chain_reaction_sample: beta and gamma must be positive");
  return chain_reaction_size(beta, rng.exponential(gamma));
}

namespace {

// Samples are drawn in fixed-size chunks, one stream per chunk, so batch
// output is identical for every thread count.
constexpr std::uint64_t batch_chunk = 8192;

}  // namespace

ChainReactionBatch chain_reaction_batch(double beta, double gamma, std::size_t n,
                                        const RandomSource& rng, unsigned threads) {
  if (!(beta > 0) || !(gamma > 0))
    throw std::domain_error("chain_reaction_batch: beta and gamma must be positive");
  ChainReactionBatch out;
  out.values.resize(n);
  std::uint64_t chunks = (n + batch_chunk - 1) / batch_chunk;
  std::vector<std::uint64_t> capped(chunks, 0);
  std::uint64_t base = rng.stream() + 1;
  parallel_for(chunks, threads, [&](std::uint64_t c) {
    RandomSource local = rng.at_stream(base + c);
    std::uint64_t lo = c * batch_chunk;
    std::uint64_t hi = std::min<std::uint64_t>(lo + batch_chunk, n);
    for (std::uint64_t i = lo; i < hi; ++i) {
      double t = local.exponential(gamma);
      if (beta * t > chain_reaction_max_exponent) ++capped[c];
      out.values[i] = chain_reaction_size(beta, t);
    }
  });
  for (std::uint64_t c : capped) out.capped += c;
  return out;
}

ProgenyResult gw_total_progeny(double offspring_mean, RandomSource& rng) {
  if (!(offspring_mean > 0) || offspring_mean > 1.2)
    throw std::domain_error("gw_total_progeny: offspring mean must lie in (0, 1.2]");
  std::uint64_t total = 1;
  std::uint64_t pending = 1;
  while (pending > 0) {
    std::uint64_t next = 0;
    for (std::uint64_t i = 0; i < pending; ++i) next += rng.poisson(offspring_mean);
    total += next;
    pending = next;
    if (total >= gw_progeny_cap) return {gw_progeny_cap, true};
  }
  return {total, false};
}

ProgenyBatch gw_progeny_batch(double offspring_mean, std::size_t n, const RandomSource& rng,
                              unsigned threads) {
  std::vector<double> totals(n, 0.0);
  std::vector<std::uint8_t> capped(n, 0);
  std::uint64_t chunks = (n + batch_chunk - 1) / batch_chunk;
  std::uint64_t base = rng.stream() + 1;
  parallel_for(chunks, threads, [&](std::uint64_t c) {
    RandomSource local = rng.at_stream(base + c);
    std::uint64_t lo = c * batch_chunk;
    std::uint64_t hi = std::min<std::uint64_t>(lo + batch_chunk, n);
    for (std::uint64_t i = lo; i < hi; ++i) {
      ProgenyResult res = gw_total_progeny(offspring_mean, local);
      totals[i] = static_cast<double>(res.total);
      capped[i] = res.capped ? 1 : 0;
    }
  });
  ProgenyBatch out;
  out.totals.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (capped[i])
      ++out.capped;
    else
      out.totals.push_back(totals[i]);
  }
  return out;
}

std::vector<std::uint32_t> pref_attach_degrees(std::size_t nodes, std::size_t m,
                                               RandomSource& rng) {
  if (m < 1) throw std::invalid_argument("pref_attach_degrees: m must be >= 1");
  if (nodes < m + 1) throw std::invalid_argument("pref_attach_degrees: need nodes >= m + 1");

  std::vector<std::uint32_t> degree(nodes, 0);
  // One entry per edge endpoint; sampling an entry uniformly is sampling a
  // node proportionally to its degree.
  std::vector<std::uint32_t> endpoints;
  endpoints.reserve(2 * (m * (m + 1) / 2 + m * (nodes - m - 1)));

  // Seed: complete graph on the first m+1 nodes.
  for (std::uint32_t i = 0; i + 1 <= m; ++i) {
    for (std::uint32_t j = i + 1; j <= m; ++j) {
      endpoints.push_back(i);
      endpoints.push_back(j);
      ++degree[i];
      ++degree[j];
    }
  }

  std::vector<std::uint32_t> chosen;
  chosen.reserve(m);
  for (std::size_t v = m + 1; v < nodes; ++v) {
    chosen.clear();
    while (chosen.size() < m) {
      std::uint32_t target = endpoints[rng.next_below(endpoints.size())];
      if (std::find(chosen.begin(), chosen.end(), target) == chosen.end())
        chosen.push_back(target);
    }
    for (std::uint32_t target : chosen) {
      ++degree[target];
      ++degree[v];
      endpoints.push_back(target);
      endpoints.push_back(static_cast<std::uint32_t>(v));
    }
  }
  return degree;
}

double mechanism_designated_exponent(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::chain_reaction: return 0.5;
    case MechanismKind::pref_attach: return 0.6;
    case MechanismKind::galton_watson: return 0.7;
  }
  return 0.6;
}

std::size_t mechanism_designated_k(MechanismKind kind, std::size_t n) {
  auto k = static_cast<std::size_t>(
      std::pow(static_cast<double>(n), mechanism_designated_exponent(kind)));
  return std::clamp<std::size_t>(k, 2, n - 1);
}

MechanismSamples mechanism_samples(const MechanismConfig& config, std::size_t samples,
                                   const RandomSource& rng, unsigned threads) {
  config.validate();
  if (samples < 100) throw config_error("mechanism_samples: need at least 100 samples");
  MechanismSamples out;
  out.median_top2_rel_gap = std::numeric_limits<double>::quiet_NaN();
  switch (config.kind) {
    case MechanismKind::chain_reaction: {
      ChainReactionBatch batch = chain_reaction_batch(config.beta, config.gamma, samples, rng,
                                                      threads);
      out.values = std::move(batch.values);
      out.capped = batch.capped;
      break;
    }
    case MechanismKind::galton_watson: {
      ProgenyBatch batch = gw_progeny_batch(config.offspring_mean, samples, rng, threads);
      out.values = std::move(batch.totals);
      out.capped = batch.capped;
      break;
    }
    case MechanismKind::pref_attach: {
      out.values.resize(samples * config.nodes);
      std::vector<double> rel_gaps(samples);
      std::uint64_t base = rng.stream() + 1;
      parallel_for(samples, threads, [&](std::uint64_t r) {
        RandomSource local = rng.at_stream(base + r);
        std::vector<std::uint32_t> deg = pref_attach_degrees(config.nodes, config.edges_per_node,
                                                             local);
        std::copy(deg.begin(), deg.end(),
                  out.values.begin() + static_cast<std::ptrdiff_t>(r * config.nodes));
        auto top = top_k(std::vector<double>(deg.begin(), deg.end()), 2);
        rel_gaps[r] = (top[0] - top[1]) / top[0];
      });
      out.median_top2_rel_gap = median(rel_gaps);
      break;
    }
  }
  return out;
}

ExperimentReport mechanism_tail_report(const MechanismConfig& config, std::size_t samples,
                                       const RandomSource& rng, unsigned threads) {
  return mechanism_tail_report(config, samples, mechanism_samples(config, samples, rng, threads));
}

ExperimentReport mechanism_tail_report(const MechanismConfig& config, std::size_t samples,
                                       const MechanismSamples& generated) {
  config.validate();

  ExperimentReport report;
  report.experiment = "mechanism";
  report.add_config("kind", std::string(mechanism_name(config.kind)));
  switch (config.kind) {
    case MechanismKind::chain_reaction:
      report.add_config("beta", config.beta);
      report.add_config("gamma", config.gamma);
      report.add_config("samples", static_cast<std::uint64_t>(samples));
      break;
    case MechanismKind::galton_watson:
      report.add_config("offspring_mean", config.offspring_mean);
      report.add_config("samples", static_cast<std::uint64_t>(samples));
      break;
    case MechanismKind::pref_attach:
      report.add_config("nodes", static_cast<std::uint64_t>(config.nodes));
      report.add_config("edges_per_node", static_cast<std::uint64_t>(config.edges_per_node));
      report.add_config("replicates", static_cast<std::uint64_t>(samples));
      break;
  }

  const std::vector<double>& values = generated.values;
  std::uint64_t capped = generated.capped;
  double median_top2_rel_gap = generated.median_top2_rel_gap;

  double predicted = config.predicted_tail_index();
  std::size_t n = values.size();
  report.columns = {"k_used", "alpha_hat", "predicted", "deviation", "designated"};

  double designated_exponent = mechanism_designated_exponent(config.kind);
  double designated_alpha_hat = std::numeric_limits<double>::quiet_NaN();
  for (double expo : {0.5, 0.6, 0.7}) {
    auto k = static_cast<std::size_t>(std::pow(static_cast<double>(n), expo));
    k = std::clamp<std::size_t>(k, 2, n - 1);
    TailEstimate est = hill_estimator(values, k);
    bool designated = expo == designated_exponent;
    if (designated) designated_alpha_hat = est.alpha_hat;
    double deviation = std::isnan(predicted) ? std::numeric_limits<double>::quiet_NaN()
                                             : est.alpha_hat - predicted;
    report.rows.push_back({static_cast<std::uint64_t>(est.k_used), est.alpha_hat, predicted,
                           deviation, static_cast<std::uint64_t>(designated ? 1 : 0)});
  }

  report.add_summary("n_values", std::to_string(n));
  report.add_summary("alpha_hat_designated", designated_alpha_hat);
  report.add_summary("predicted_tail_index", predicted);
  report.add_summary("capped_samples", std::to_string(capped));
  double capped_fraction = static_cast<double>(capped) / static_cast<double>(samples);
  report.add_summary("capped_fraction", capped_fraction);
  if (capped_fraction > 0.10)
    report.add_summary("reliability_warning",
                       "capped fraction exceeds 10%; tail estimate unreliable");
  if (config.kind == MechanismKind::pref_attach) {
    report.add_summary("median_top2_rel_gap", median_top2_rel_gap);
    report.add_summary("top2_gap_note",
                       "top-two degree gap is a nondegenerate fraction of the maximum, "
                       "not a unit step below it");
  }
  return report;
}

}  // namespace evstat
