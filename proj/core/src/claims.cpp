#include "evstat/claims.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <vector>

#include "evstat/dist.hpp"
#include "evstat/evt.hpp"
#include "evstat/logdim.hpp"
#include "evstat/mech.hpp"
#include "evstat/parallel.hpp"
#include "evstat/stats.hpp"
#include "evstat/tree.hpp"

namespace evstat {

namespace {

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

// Stream layout: claim i draws from streams [i * 2^32, (i+1) * 2^32);
// sub-experiments within a claim step by 2^24.
RandomSource claim_root(const ClaimOptions& o, int id, std::uint64_t block = 0) {
  return RandomSource(o.seed,
                      static_cast<std::uint64_t>(id) << 32 | (block << 24));
}

const std::vector<std::size_t> spacing_grid = {100, 1000, 10000, 100000};

ClaimResult claim_spacing_scaling(const ClaimOptions& o) {
  ClaimResult res{1, "spacing scaling: Pareto slope = 1/alpha", false, "", "", 0};
  const double alphas[] = {0.5, 1.0, 2.0};
  bool ok = true;
  std::string measured;
  for (int i = 0; i < 3; ++i) {
    double alpha = alphas[i];
    double tolerance = alpha == 2.0 ? 0.05 : 0.1;
    SpacingReport rep = spacing_experiment(DistSpec::pareto(alpha), spacing_grid, 2000,
                                           claim_root(o, 1, i), o.threads);
    ok = ok && std::fabs(rep.slope - 1.0 / alpha) <= tolerance;
    if (!measured.empty()) measured += ", ";
    measured += fmt("slope(alpha=%g)=%.4f", alpha, rep.slope);
  }
  res.passed = ok;
  res.measured = measured;
  res.required = "|slope - 1/alpha| <= 0.1 (alpha<=1), 0.05 (alpha=2); N=1e2..1e5, R=2000";
  return res;
}

ClaimResult claim_lognormal_contrast(const ClaimOptions& o) {
  ClaimResult res{2, "log-normal contrast: spacing slope stays small", false, "", "", 0};
  SpacingReport rep = spacing_experiment(DistSpec::log_normal(0.0, 1.0), spacing_grid, 2000,
                                         claim_root(o, 2), o.threads);
  res.passed = rep.slope < 0.1;
  res.measured = fmt("slope=%.4f (stderr %.4f)", rep.slope, rep.slope_stderr);
  res.required = "slope < 0.1 on N=1e2..1e5, R=2000";
  return res;
}

ClaimResult claim_dominance_bound(const ClaimOptions& o) {
  ClaimResult res{3, "dominance fraction never exceeds the (N-1) 2^(X2-X1) bound", false, "", "",
                  0};
  RandomSource rng = claim_root(o, 3);
  const int cases = 10000;
  int violations = 0;
  std::vector<double> xs;
  for (int c = 0; c < cases; ++c) {
    std::size_t n = 2 + rng.next_below(999);
    xs.resize(n);
    std::uint64_t pattern = rng.next_below(4);
    double scale = std::exp2(rng.next_unit() * 30.0 - 10.0);
    double offset = (rng.next_unit() - 0.5) * (rng.next_below(2) ? 2.0e12 : 20.0);
    switch (pattern) {
      case 0:  // uniform spread
        for (auto& x : xs) x = offset + scale * rng.next_unit();
        break;
      case 1: {  // heavy-tailed spread
        double alpha = 0.5 + static_cast<double>(rng.next_below(3));
        for (auto& x : xs) x = offset + pareto_quantile(rng.next_unit(), alpha);
        break;
      }
      case 2:  // near-ties
        for (auto& x : xs) x = offset + scale * rng.next_unit() * 1e-9;
        break;
      default:  // exact ties on a tiny value set
        for (auto& x : xs) x = offset + scale * static_cast<double>(rng.next_below(4));
        break;
    }
    std::sort(xs.begin(), xs.end(), std::greater<>());
    double frac = dominance_fraction(xs).log2_value();
    double bound = (xs[1] - xs[0]) + std::log2(static_cast<double>(n - 1));
    if (!(frac <= bound)) ++violations;
  }
  res.passed = violations == 0;
  res.measured = fmt("%d violations in %d random sorted inputs", violations, cases);
  res.required = "0 violations";
  return res;
}

ClaimResult claim_dominance_growth(const ClaimOptions& o) {
  ClaimResult res{4, "dominance growth: exponentiated Pareto(1) median below -N/2", false, "", "",
                  0};
  const std::vector<std::size_t> sizes = {100, 1000, 10000};
  auto rows = dominance_growth(DistSpec::pareto(1.0), sizes, 10000, claim_root(o, 4), o.threads);
  bool ok = true;
  std::string measured;
  for (const auto& row : rows) {
    double threshold = -static_cast<double>(row.ensemble_size) / 2.0;
    ok = ok && row.median_log2_fraction < threshold;
    if (!measured.empty()) measured += ", ";
    measured += fmt("N=%zu: %.1f", row.ensemble_size, row.median_log2_fraction);
  }
  res.passed = ok;
  res.measured = measured;
  res.required = "median log2 fraction < -N/2 for N in {1e2,1e3,1e4}, R=10000";
  return res;
}

ClaimResult claim_mda_diagnostic(const ClaimOptions&) {
  ClaimResult res{5, "MDA hazard ratio: exp-power-law drifts, Pareto constant", false, "", "", 0};
  DistSpec epl = DistSpec::exp_powerlaw(2.0, 1.0);
  double r10 = mda_hazard_ratio(epl, std::exp(10.0));
  double r20 = mda_hazard_ratio(epl, std::exp(20.0));
  bool ok = std::fabs(r10 / 0.19900 - 1.0) <= 0.01 && std::fabs(r20 / 0.0999 - 1.0) <= 0.01;

  DistSpec par = DistSpec::pareto(2.0);
  double lo = 2.0, hi = 2.0;
  for (double x : {1.5, 2.0, 64.0, 1e6, 1e12}) {
    double r = mda_hazard_ratio(par, x);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  bool pareto_constant = std::fabs(lo - 2.0) <= 2e-12 && std::fabs(hi - 2.0) <= 2e-12;
  res.passed = ok && pareto_constant;
  res.measured = fmt("ratio(e^10)=%.5f, ratio(e^20)=%.5f, pareto in [%.15g, %.15g]", r10, r20, lo,
                     hi);
  res.required = "0.19900 and 0.0999 within 1%; Pareto ratio = 2 (double precision)";
  return res;
}

ClaimResult claim_single_big_jump(const ClaimOptions& o) {
  ClaimResult res{6, "single big jump: one summand carries a large Pareto(1) sum", false, "", "",
                  0};
  double freq = single_big_jump(DistSpec::pareto(1.0), 10, 0.999, 1000000, claim_root(o, 6),
                                o.threads);
  res.passed = freq > 0.9;
  res.measured = fmt("P(max/sum > 0.9 | sum tail) = %.4f", freq);
  res.required = "> 0.9 at 10 summands, quantile 0.999, R=1e6";
  return res;
}

ClaimResult claim_mechanism_exponents(const ClaimOptions& o) {
  ClaimResult res{7, "mechanism tail exponents match their growth laws", false, "", "", 0};

  ChainReactionBatch cr = chain_reaction_batch(0.5, 1.0, 1000000, claim_root(o, 7, 0), o.threads);
  double cr_hat =
      hill_estimator(cr.values,
                     mechanism_designated_k(MechanismKind::chain_reaction, cr.values.size()))
          .alpha_hat;
  bool cr_ok = std::fabs(cr_hat - 2.0) <= 0.2;

  const std::size_t gw_runs = 1000000;
  ProgenyBatch gw = gw_progeny_batch(1.0, gw_runs, claim_root(o, 7, 1), o.threads);
  double gw_hat =
      hill_estimator(gw.totals,
                     mechanism_designated_k(MechanismKind::galton_watson, gw.totals.size()))
          .alpha_hat;
  bool gw_ok = std::fabs(gw_hat - 0.5) <= 0.1;

  // Borel point masses P(k) = e^{-k} k^{k-1} / k! at the critical point.
  bool borel_ok = true;
  double max_z = 0.0;
  for (int k = 1; k <= 5; ++k) {
    double logp = -k + (k - 1) * std::log(static_cast<double>(k)) - std::lgamma(k + 1.0);
    double p = std::exp(logp);
    std::uint64_t count = 0;
    for (double t : gw.totals)
      if (t == static_cast<double>(k)) ++count;
    double freq = static_cast<double>(count) / static_cast<double>(gw_runs);
    double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(gw_runs));
    double z = std::fabs(freq - p) / sigma;
    max_z = std::max(max_z, z);
    borel_ok = borel_ok && z <= 3.0;
  }

  MechanismConfig pa;
  pa.kind = MechanismKind::pref_attach;
  pa.nodes = 100000;
  pa.edges_per_node = 1;
  const std::size_t pa_reps = 50;
  std::vector<double> degrees(pa_reps * pa.nodes);
  {
    RandomSource root = claim_root(o, 7, 2);
    std::uint64_t base = root.stream() + 1;
    parallel_for(pa_reps, o.threads, [&](std::uint64_t r) {
      RandomSource local = root.at_stream(base + r);
      auto deg = pref_attach_degrees(pa.nodes, pa.edges_per_node, local);
      std::copy(deg.begin(), deg.end(),
                degrees.begin() + static_cast<std::ptrdiff_t>(r * pa.nodes));
    });
  }
  double pa_hat =
      hill_estimator(degrees, mechanism_designated_k(MechanismKind::pref_attach, degrees.size()))
          .alpha_hat;
  bool pa_ok = std::fabs(pa_hat - 2.0) <= 0.3;

  res.passed = cr_ok && gw_ok && borel_ok && pa_ok;
  res.measured = fmt("chain=%.3f, gw=%.3f (max Borel z=%.2f), pref_attach=%.3f", cr_hat, gw_hat,
                     max_z, pa_hat);
  res.required = "2.0±0.2 (chain b=0.5 g=1), 0.5±0.1 + Borel 3-sigma (gw), 2.0±0.3 (pa)";
  return res;
}

ClaimResult claim_tree_contrast(const ClaimOptions& o) {
  ClaimResult res{8, "tree contrast: final draws dominate, inherited draws do not", false, "", "",
                  0};
  const std::vector<std::uint32_t> gens = {8, 9, 10, 11, 12, 13, 14};
  auto rows = dominance_contrast(2, gens, DistSpec::pareto(1.0), DistSpec::pareto(1.0), 500,
                                 claim_root(o, 8), o.threads);
  std::size_t n_g = gens.size();
  bool final_decreasing = true;
  for (std::size_t i = 0; i + 1 < n_g; ++i)
    final_decreasing =
        final_decreasing && rows[i + 1].median_log2_fraction < rows[i].median_log2_fraction;

  const auto& inh_first = rows[n_g];
  const auto& inh_last = rows[2 * n_g - 1];
  double se = std::sqrt(inh_first.median_log2_fraction_stderr * inh_first.median_log2_fraction_stderr +
                        inh_last.median_log2_fraction_stderr * inh_last.median_log2_fraction_stderr);
  double z = (inh_last.median_log2_fraction - inh_first.median_log2_fraction) / se;
  bool inherited_bounded = z > -3.0;

  res.passed = final_decreasing && inherited_bounded;
  res.measured = fmt("final medians %.0f..%.0f (strictly decreasing: %s), inherited z=%.2f",
                     rows[0].median_log2_fraction, rows[n_g - 1].median_log2_fraction,
                     final_decreasing ? "yes" : "no", z);
  res.required = "final strictly decreasing over G=8..14; inherited decrease within 3 sigma";
  return res;
}

ClaimResult claim_extremum_timing(const ClaimOptions& o) {
  ClaimResult res{9, "extremum timing matches the node-counting prediction", false, "", "", 0};
  const std::vector<std::uint32_t> ns = {1, 2, 3};
  auto points = extremum_timing(2, 16, DistSpec::pareto(1.0), 10000, ns, claim_root(o, 9),
                                o.threads);
  bool ok = true;
  std::string measured;
  for (const auto& p : points) {
    double sigma = std::sqrt(p.predicted * (1.0 - p.predicted) / 10000.0);
    ok = ok && std::fabs(p.frequency - p.predicted) <= 3.0 * sigma;
    if (!measured.empty()) measured += ", ";
    measured += fmt("n=%u: %.4f vs %.4f", p.generations_before_end, p.frequency, p.predicted);
  }
  res.passed = ok;
  res.measured = measured;
  res.required = "within 3 binomial sigma at b=2, G=16, R=1e4, n in {1,2,3}";
  return res;
}

ClaimResult claim_amplitude(const ClaimOptions&) {
  ClaimResult res{10, "branching amplitude dwarfs the tunneling amplitude", false, "", "", 0};
  LogDim amp = extremal_amplitude_log2(300.0, 100.0 * seconds_per_year, 2);
  LogDim tunnel = nat_to_log2(-1e34);
  bool in_band = amp.log2_value() >= -1.05e12 && amp.log2_value() <= -0.9e12;
  bool ordered = amp > tunnel;
  res.passed = in_band && ordered;
  res.measured = fmt("log2 amplitude = %.6g, tunnel log2 = %.6g", amp.log2_value(),
                     tunnel.log2_value());
  res.required = "log2 in [-1.05e12, -0.9e12] and above the e^(-1e34) tunnel amplitude";
  return res;
}

ClaimResult timed(ClaimResult (*check)(const ClaimOptions&), const ClaimOptions& o) {
  auto start = std::chrono::steady_clock::now();
  ClaimResult res = check(o);
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

std::vector<ClaimResult> run_battery(const ClaimOptions& o) {
  return {
      timed(claim_spacing_scaling, o),  timed(claim_lognormal_contrast, o),
      timed(claim_dominance_bound, o),  timed(claim_dominance_growth, o),
      timed(claim_mda_diagnostic, o),   timed(claim_single_big_jump, o),
      timed(claim_mechanism_exponents, o), timed(claim_tree_contrast, o),
      timed(claim_extremum_timing, o),  timed(claim_amplitude, o),
  };
}

ClaimResult claim_determinism(const ClaimOptions& o, const std::vector<ClaimResult>* first_pass) {
  auto start = std::chrono::steady_clock::now();
  ClaimResult res{11, "repeated runs with one seed are byte-identical", false, "", "", 0};
  std::vector<ClaimResult> pass1 = first_pass ? *first_pass : run_battery(o);
  std::vector<ClaimResult> pass2 = run_battery(o);
  std::string csv1 = claims_report(pass1, o).to_string(ReportFormat::csv);
  std::string csv2 = claims_report(pass2, o).to_string(ReportFormat::csv);
  std::string json1 = claims_report(pass1, o).to_string(ReportFormat::json);
  std::string json2 = claims_report(pass2, o).to_string(ReportFormat::json);
  res.passed = csv1 == csv2 && json1 == json2;
  res.measured = res.passed ? "two full passes serialized identically (csv and json)"
                            : "serialized passes differ";
  res.required = "byte-identical reports for identical seeds";
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace

ClaimResult run_claim(int id, const ClaimOptions& options) {
  switch (id) {
    case 1: return timed(claim_spacing_scaling, options);
    case 2: return timed(claim_lognormal_contrast, options);
    case 3: return timed(claim_dominance_bound, options);
    case 4: return timed(claim_dominance_growth, options);
    case 5: return timed(claim_mda_diagnostic, options);
    case 6: return timed(claim_single_big_jump, options);
    case 7: return timed(claim_mechanism_exponents, options);
    case 8: return timed(claim_tree_contrast, options);
    case 9: return timed(claim_extremum_timing, options);
    case 10: return timed(claim_amplitude, options);
    case 11: return claim_determinism(options, nullptr);
  }
  throw std::invalid_argument("run_claim: id must lie in 1.." + std::to_string(num_claims));
}

std::vector<ClaimResult> run_all_claims(const ClaimOptions& options) {
  std::vector<ClaimResult> results = run_battery(options);
  results.push_back(claim_determinism(options, &results));
  return results;
}

ExperimentReport claims_report(const std::vector<ClaimResult>& results,
                               const ClaimOptions& options) {
  ExperimentReport report;
  report.experiment = "reproduce-all";
  report.add_config("seed", options.seed);
  report.columns = {"id", "name", "verdict", "measured", "required"};
  for (const ClaimResult& r : results) {
    report.rows.push_back({static_cast<std::uint64_t>(r.id), r.name,
                           std::string(r.passed ? "PASS" : "FAIL"), r.measured, r.required});
  }
  std::size_t passed = 0;
  for (const ClaimResult& r : results)
    if (r.passed) ++passed;
  report.add_summary("passed", std::to_string(passed) + "/" + std::to_string(results.size()));
  return report;
}

}  // namespace evstat
