// Experiment runner: seeded Monte Carlo experiments on heavy-tailed
// ensembles, branching trees and power-law mechanisms, with CSV/JSON
// reports. Run `evstat --help` for the subcommand list.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <type_traits>
#include <vector>

#include <CLI11.hpp>

#include "evstat/claims.hpp"
#include "evstat/dist.hpp"
#include "evstat/errors.hpp"
#include "evstat/evt.hpp"
#include "evstat/logdim.hpp"
#include "evstat/mech.hpp"
#include "evstat/stats.hpp"
#include "evstat/tree.hpp"
#include "evstat/version.hpp"

namespace {

using namespace evstat;

struct CommonOpts {
  std::uint64_t seed = 42;
  std::string out;
  std::string format = "csv";
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--seed", opts.seed, "random seed")->capture_default_str();
  cmd->add_option("--out", opts.out, "output path (default <experiment>.<format>)");
  cmd->add_option("--format", opts.format, "report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--threads", opts.threads, "worker threads, 0 = all cores")
      ->capture_default_str();
}

struct DistFlags {
  std::string family = "pareto";
  double alpha = 1.0;
  double beta = 1.0;
  double mu = 0.0;
  double sigma = 1.0;
};

void add_dist_flags(CLI::App* cmd, DistFlags& f, const std::string& prefix = "") {
  auto flag = [&prefix](const std::string& name) { return "--" + prefix + name; };
  cmd->add_option(flag("family"), f.family,
                  "distribution family: pareto, frechet, exp-powerlaw, lognormal")
      ->capture_default_str();
  cmd->add_option(flag("alpha"), f.alpha, "tail exponent")->capture_default_str();
  cmd->add_option(flag("beta"), f.beta, "exp-powerlaw scale")->capture_default_str();
  cmd->add_option(flag("mu"), f.mu, "lognormal location")->capture_default_str();
  cmd->add_option(flag("sigma"), f.sigma, "lognormal scale")->capture_default_str();
}

DistSpec to_spec(const DistFlags& f) {
  Family fam = family_from_name(f.family);
  DistSpec spec;
  switch (fam) {
    case Family::pareto: spec = DistSpec::pareto(f.alpha); break;
    case Family::frechet: spec = DistSpec::frechet(f.alpha); break;
    case Family::exp_powerlaw: spec = DistSpec::exp_powerlaw(f.alpha, f.beta); break;
    case Family::log_normal: spec = DistSpec::log_normal(f.mu, f.sigma); break;
  }
  spec.validate();
  return spec;
}

// Echoes only the parameters that exist for the family, as flag-named keys.
void echo_dist(ExperimentReport& report, const DistSpec& spec, const std::string& prefix = "") {
  report.add_config(prefix + "family", std::string(family_name(spec.family)));
  switch (spec.family) {
    case Family::pareto:
    case Family::frechet:
      report.add_config(prefix + "alpha", spec.alpha);
      break;
    case Family::exp_powerlaw:
      report.add_config(prefix + "alpha", spec.alpha);
      report.add_config(prefix + "beta", spec.beta);
      break;
    case Family::log_normal:
      report.add_config(prefix + "mu", spec.mu);
      report.add_config(prefix + "sigma", spec.sigma);
      break;
  }
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string token = text.substr(pos, comma - pos);
    if (token.empty())
      throw config_error(std::string(what) + ": empty element in list '" + text + "'", 1, pos + 1);
    try {
      if constexpr (std::is_floating_point_v<T>)
        out.push_back(std::stod(token));
      else
        out.push_back(static_cast<T>(std::stoull(token)));
    } catch (const std::exception&) {
      throw config_error(std::string(what) + ": '" + token + "' is not a number", 1, pos + 1);
    }
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  if (out.empty()) throw config_error(std::string(what) + ": empty list");
  return out;
}

// Single-column CSV of raw values, written atomically.
void write_value_column(const std::filesystem::path& path, const std::vector<double>& values) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << "value\n";
    for (double v : values) out << format_double(v) << "\n";
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void finish(ExperimentReport& report, const CommonOpts& opts, double seconds) {
  report.wall_seconds = seconds;
  ReportFormat format = report_format_from_name(opts.format);
  std::string path = opts.out.empty()
                         ? report.experiment + "." + std::string(report_format_name(format))
                         : opts.out;
  report.save(path, format);
  std::cout << report.experiment << ": wrote " << path << " (" << report.rows.size() << " rows, "
            << seconds << " s)\n";
}

template <typename Fn>
int run_experiment(Fn&& body, const CommonOpts& opts) {
  auto start = std::chrono::steady_clock::now();
  ExperimentReport report = body();
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  finish(report, opts, seconds);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo experiments on extreme-value statistics of heavy-tailed ensembles"};
  app.set_version_flag("--version", std::string(library_version));
  app.require_subcommand(1);

  int exit_code = 0;
  std::function<int()> action;

  // ---- spacing ----------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("spacing", "top-two spacing scaling across ensemble sizes");
    auto opts = std::make_shared<CommonOpts>();
    auto dist = std::make_shared<DistFlags>();
    auto sizes = std::make_shared<std::string>("100,1000,10000,100000");
    auto replicates = std::make_shared<std::uint64_t>(2000);
    add_common(cmd, *opts);
    add_dist_flags(cmd, *dist);
    cmd->add_option("--sizes", *sizes, "comma-separated ensemble sizes")->capture_default_str();
    cmd->add_option("--replicates", *replicates, "replicates per size")->capture_default_str();
    cmd->callback([&action, opts, dist, sizes, replicates] {
      action = [=] {
        return run_experiment(
            [&] {
              DistSpec spec = to_spec(*dist);
              auto ns = parse_list<std::size_t>(*sizes, "--sizes");
              SpacingReport rep = spacing_experiment(spec, ns, *replicates,
                                                     RandomSource(opts->seed), opts->threads);
              ExperimentReport report;
              report.experiment = "spacing";
              report.add_config("seed", opts->seed);
              echo_dist(report, spec);
              report.add_config("sizes", *sizes);
              report.add_config("replicates", *replicates);
              report.add_config("format", opts->format);
              report.columns = {"N", "median_spacing", "median_spacing_stderr"};
              for (std::size_t i = 0; i < rep.ensemble_sizes.size(); ++i)
                report.rows.push_back({static_cast<std::uint64_t>(rep.ensemble_sizes[i]),
                                       rep.median_spacing[i], rep.median_spacing_stderr[i]});
              report.add_summary("slope", rep.slope);
              report.add_summary("slope_stderr", rep.slope_stderr);
              return report;
            },
            *opts);
      };
    });
  }

  // ---- dominance --------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "dominance", "dominance fraction of exponentiated i.i.d. heavy-tailed ensembles");
    auto opts = std::make_shared<CommonOpts>();
    auto dist = std::make_shared<DistFlags>();
    auto sizes = std::make_shared<std::string>("100,1000,10000");
    auto replicates = std::make_shared<std::uint64_t>(10000);
    add_common(cmd, *opts);
    add_dist_flags(cmd, *dist);
    cmd->add_option("--sizes", *sizes, "comma-separated ensemble sizes")->capture_default_str();
    cmd->add_option("--replicates", *replicates, "replicates per size")->capture_default_str();
    cmd->callback([&action, opts, dist, sizes, replicates] {
      action = [=] {
        return run_experiment(
            [&] {
              DistSpec spec = to_spec(*dist);
              auto ns = parse_list<std::size_t>(*sizes, "--sizes");
              auto rows = dominance_growth(spec, ns, *replicates, RandomSource(opts->seed),
                                           opts->threads);
              ExperimentReport report;
              report.experiment = "dominance";
              report.add_config("seed", opts->seed);
              echo_dist(report, spec);
              report.add_config("sizes", *sizes);
              report.add_config("replicates", *replicates);
              report.add_config("format", opts->format);
              report.columns = {"N", "log2:median_dominance_fraction",
                                "log2:median_dominance_fraction_stderr"};
              for (const auto& row : rows)
                report.rows.push_back({static_cast<std::uint64_t>(row.ensemble_size),
                                       row.median_log2_fraction,
                                       row.median_log2_fraction_stderr});
              return report;
            },
            *opts);
      };
    });
  }

  // ---- mda --------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "mda", "von Mises hazard-ratio diagnostic for Frechet-domain membership");
    auto opts = std::make_shared<CommonOpts>();
    auto dist = std::make_shared<DistFlags>();
    dist->family = "exp-powerlaw";
    dist->alpha = 2.0;
    auto xs = std::make_shared<std::string>();
    auto lnxs = std::make_shared<std::string>("10,20,40");
    add_common(cmd, *opts);
    add_dist_flags(cmd, *dist);
    cmd->add_option("--x", *xs, "comma-separated evaluation points");
    cmd->add_option("--ln-x", *lnxs, "evaluation points given as ln x")->capture_default_str();
    cmd->callback([&action, opts, dist, xs, lnxs] {
      action = [=] {
        return run_experiment(
            [&] {
              DistSpec spec = to_spec(*dist);
              std::vector<double> points;
              bool use_ln = xs->empty();
              if (use_ln)
                for (double l : parse_list<double>(*lnxs, "--ln-x")) points.push_back(std::exp(l));
              else
                points = parse_list<double>(*xs, "--x");
              ExperimentReport report;
              report.experiment = "mda";
              report.add_config("seed", opts->seed);
              echo_dist(report, spec);
              if (use_ln)
                report.add_config("ln-x", *lnxs);
              else
                report.add_config("x", *xs);
              report.add_config("format", opts->format);
              report.columns = {"x", "ln_x", "hazard_ratio"};
              for (double x : points)
                report.rows.push_back({x, std::log(x), mda_hazard_ratio(spec, x)});
              return report;
            },
            *opts);
      };
    });
  }

  // ---- bigjump ----------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "bigjump", "conditional probability that one summand dominates a large sum");
    auto opts = std::make_shared<CommonOpts>();
    auto dist = std::make_shared<DistFlags>();
    auto summands = std::make_shared<std::uint64_t>(10);
    auto quantile = std::make_shared<double>(0.999);
    auto replicates = std::make_shared<std::uint64_t>(1000000);
    add_common(cmd, *opts);
    add_dist_flags(cmd, *dist);
    cmd->add_option("--summands", *summands, "summands per replicate")->capture_default_str();
    cmd->add_option("--quantile", *quantile, "conditioning quantile of the sum")
        ->capture_default_str();
    cmd->add_option("--replicates", *replicates, "number of replicates")->capture_default_str();
    cmd->callback([&action, opts, dist, summands, quantile, replicates] {
      action = [=] {
        return run_experiment(
            [&] {
              DistSpec spec = to_spec(*dist);
              BigJumpResult res = single_big_jump_detail(spec, *summands, *quantile, *replicates,
                                                         RandomSource(opts->seed), opts->threads);
              ExperimentReport report;
              report.experiment = "bigjump";
              report.add_config("seed", opts->seed);
              echo_dist(report, spec);
              report.add_config("summands", *summands);
              report.add_config("quantile", *quantile);
              report.add_config("replicates", *replicates);
              report.add_config("format", opts->format);
              report.columns = {"conditional_frequency", "events", "threshold_value"};
              report.rows.push_back({res.frequency, res.events, res.threshold_value});
              return report;
            },
            *opts);
      };
    });
  }

  // ---- tree-contrast ----------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "tree-contrast", "final-draw vs inherited-draw dominance on branching trees");
    auto opts = std::make_shared<CommonOpts>();
    auto b = std::make_shared<std::uint32_t>(2);
    auto gens = std::make_shared<std::string>("8,9,10,11,12,13,14");
    auto leaf = std::make_shared<std::string>("family=pareto alpha=1");
    auto increment = std::make_shared<std::string>("family=pareto alpha=1");
    auto replicates = std::make_shared<std::uint64_t>(500);
    auto per_replicate = std::make_shared<bool>(false);
    add_common(cmd, *opts);
    cmd->add_option("--b", *b, "branching factor")->capture_default_str();
    cmd->add_option("--generations", *gens, "comma-separated generation depths")
        ->capture_default_str();
    cmd->add_option("--leaf", *leaf, "final-draw leaf distribution (key=value fragment)")
        ->capture_default_str();
    cmd->add_option("--increment", *increment, "inherited increment distribution")
        ->capture_default_str();
    cmd->add_option("--replicates", *replicates, "trees per (mode, G) cell")
        ->capture_default_str();
    cmd->add_option("--per-replicate", *per_replicate,
                    "1 = dump every replicate instead of (mode, G) aggregates")
        ->capture_default_str();
    cmd->callback([&action, opts, b, gens, leaf, increment, replicates, per_replicate] {
      action = [=] {
        return run_experiment(
            [&] {
              DistSpec leaf_spec = DistSpec::parse(*leaf);
              DistSpec inc_spec = DistSpec::parse(*increment);
              auto gs = parse_list<std::uint32_t>(*gens, "--generations");
              auto detail = dominance_contrast_detail(*b, gs, leaf_spec, inc_spec, *replicates,
                                                      RandomSource(opts->seed), opts->threads);
              ExperimentReport report;
              report.experiment = "tree-contrast";
              report.add_config("seed", opts->seed);
              report.add_config("b", static_cast<std::uint64_t>(*b));
              report.add_config("generations", *gens);
              report.add_config("leaf", *leaf);
              report.add_config("increment", *increment);
              report.add_config("replicates", *replicates);
              report.add_config("per-replicate", std::string(*per_replicate ? "1" : "0"));
              report.add_config("format", opts->format);
              auto mode_name = [](DrawModeKind m) {
                return std::string(m == DrawModeKind::final_draw ? "final" : "inherited");
              };
              if (*per_replicate) {
                report.columns = {"mode", "b", "G", "replicate", "rel_gap",
                                  "log2:dominance_fraction"};
                for (std::size_t cell = 0; cell < detail.rows.size(); ++cell) {
                  const auto& row = detail.rows[cell];
                  for (std::size_t r = 0; r < detail.rel_gaps[cell].size(); ++r)
                    report.rows.push_back({mode_name(row.mode),
                                           static_cast<std::uint64_t>(row.branching_factor),
                                           static_cast<std::uint64_t>(row.generations),
                                           static_cast<std::uint64_t>(r),
                                           detail.rel_gaps[cell][r],
                                           detail.log2_fractions[cell][r]});
                }
              } else {
                report.columns = {"mode",           "b",
                                  "G",              "leaf_count",
                                  "median_rel_gap", "log2:median_dominance_fraction",
                                  "log2:median_dominance_fraction_stderr"};
                for (const auto& row : detail.rows)
                  report.rows.push_back(
                      {mode_name(row.mode), static_cast<std::uint64_t>(row.branching_factor),
                       static_cast<std::uint64_t>(row.generations), row.leaf_count,
                       row.median_rel_gap, row.median_log2_fraction,
                       row.median_log2_fraction_stderr});
              }
              return report;
            },
            *opts);
      };
    });
  }

  // ---- timing -----------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "timing", "generation of the extremal draw vs the node-counting prediction");
    auto opts = std::make_shared<CommonOpts>();
    auto b = std::make_shared<std::uint32_t>(2);
    auto g = std::make_shared<std::uint32_t>(16);
    auto dist = std::make_shared<DistFlags>();
    auto replicates = std::make_shared<std::uint64_t>(10000);
    auto ns = std::make_shared<std::string>("1,2,3");
    add_common(cmd, *opts);
    cmd->add_option("--b", *b, "branching factor")->capture_default_str();
    cmd->add_option("--g", *g, "generations")->capture_default_str();
    add_dist_flags(cmd, *dist);
    cmd->add_option("--replicates", *replicates, "replicate trees")->capture_default_str();
    cmd->add_option("--before-end", *ns, "comma-separated n values (generations before the end)")
        ->capture_default_str();
    cmd->callback([&action, opts, b, g, dist, replicates, ns] {
      action = [=] {
        return run_experiment(
            [&] {
              DistSpec spec = to_spec(*dist);
              auto nlist = parse_list<std::uint32_t>(*ns, "--before-end");
              auto points = extremum_timing(*b, *g, spec, *replicates, nlist,
                                            RandomSource(opts->seed), opts->threads);
              ExperimentReport report;
              report.experiment = "timing";
              report.add_config("seed", opts->seed);
              report.add_config("b", static_cast<std::uint64_t>(*b));
              report.add_config("g", static_cast<std::uint64_t>(*g));
              echo_dist(report, spec);
              report.add_config("replicates", *replicates);
              report.add_config("before-end", *ns);
              report.add_config("format", opts->format);
              report.columns = {"n_before_end", "frequency", "predicted_counting",
                                "shorthand_b^-n"};
              for (const auto& p : points)
                report.rows.push_back({static_cast<std::uint64_t>(p.generations_before_end),
                                       p.frequency, p.predicted, p.shorthand});
              return report;
            },
            *opts);
      };
    });
  }

  // ---- mechanism --------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "mechanism", "power-law generating mechanisms and their measured tail exponents");
    auto opts = std::make_shared<CommonOpts>();
    auto kind = std::make_shared<std::string>("chain-reaction");
    auto beta = std::make_shared<double>(0.5);
    auto gamma = std::make_shared<double>(1.0);
    auto offspring = std::make_shared<double>(1.0);
    auto nodes = std::make_shared<std::uint64_t>(100000);
    auto edges = std::make_shared<std::uint64_t>(1);
    auto samples = std::make_shared<std::uint64_t>(0);
    auto dump_path = std::make_shared<std::string>();
    add_common(cmd, *opts);
    cmd->add_option("--kind", *kind, "chain-reaction, galton-watson or pref-attach")
        ->capture_default_str();
    cmd->add_option("--beta", *beta, "chain-reaction growth rate")->capture_default_str();
    cmd->add_option("--gamma", *gamma, "chain-reaction termination rate")->capture_default_str();
    cmd->add_option("--offspring-mean", *offspring, "Galton-Watson Poisson mean")
        ->capture_default_str();
    cmd->add_option("--nodes", *nodes, "pref-attach network size")->capture_default_str();
    cmd->add_option("--edges-per-node", *edges, "pref-attach edges per new node")
        ->capture_default_str();
    cmd->add_option("--samples", *samples,
                    "draws (chain/gw) or network replicates (pref-attach); 0 = default");
    cmd->add_option("--dump-samples", *dump_path,
                    "also write the raw values as a single-column CSV to this path");
    cmd->callback([&action, opts, kind, beta, gamma, offspring, nodes, edges, samples,
                   dump_path] {
      action = [=] {
        return run_experiment(
            [&] {
              MechanismConfig config;
              config.kind = mechanism_from_name(*kind);
              config.beta = *beta;
              config.gamma = *gamma;
              config.offspring_mean = *offspring;
              config.nodes = *nodes;
              config.edges_per_node = *edges;
              std::uint64_t n = *samples;
              if (n == 0) n = config.kind == MechanismKind::pref_attach ? 50 : 1000000;
              MechanismSamples generated =
                  mechanism_samples(config, n, RandomSource(opts->seed), opts->threads);
              if (!dump_path->empty()) write_value_column(*dump_path, generated.values);
              ExperimentReport report = mechanism_tail_report(config, n, generated);
              report.config.insert(report.config.begin(), {"seed", std::to_string(opts->seed)});
              report.add_config("format", opts->format);
              return report;
            },
            *opts);
      };
    });
  }

  // ---- amplitude --------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "amplitude", "log-domain comparison of branching and tunneling amplitudes");
    auto opts = std::make_shared<CommonOpts>();
    auto rate = std::make_shared<double>(300.0);
    auto years = std::make_shared<double>(100.0);
    auto branches = std::make_shared<std::uint64_t>(2);
    auto tunnel_ln = std::make_shared<double>(-1e34);
    add_common(cmd, *opts);
    cmd->add_option("--rate", *rate, "events per second")->capture_default_str();
    cmd->add_option("--lifetime-years", *years, "lifetime in 365-day years")
        ->capture_default_str();
    cmd->add_option("--branches", *branches, "branches per event")->capture_default_str();
    cmd->add_option("--tunnel-ln", *tunnel_ln, "natural-log tunnel amplitude to compare against")
        ->capture_default_str();
    cmd->callback([&action, opts, rate, years, branches, tunnel_ln] {
      action = [=] {
        return run_experiment(
            [&] {
              LogDim amp = extremal_amplitude_log2(*rate, *years * seconds_per_year, *branches);
              LogDim tunnel = nat_to_log2(*tunnel_ln);
              ExperimentReport report;
              report.experiment = "amplitude";
              report.add_config("seed", opts->seed);
              report.add_config("rate", *rate);
              report.add_config("lifetime-years", *years);
              report.add_config("branches", *branches);
              report.add_config("tunnel-ln", *tunnel_ln);
              report.add_config("format", opts->format);
              report.columns = {"rate_per_second", "lifetime_seconds", "branches_per_event",
                                "log2:amplitude", "log2:tunnel_amplitude", "verdict"};
              std::string verdict = amp > tunnel
                                        ? "measurement amplitude >> tunnel amplitude"
                                        : "measurement amplitude << tunnel amplitude";
              report.rows.push_back({*rate, *years * seconds_per_year, *branches,
                                     amp.log2_value(), tunnel.log2_value(), verdict});
              return report;
            },
            *opts);
      };
    });
  }

  // ---- reproduce-all ----------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "reproduce-all", "run every built-in claim check and print a verdict per claim");
    auto opts = std::make_shared<CommonOpts>();
    add_common(cmd, *opts);
    cmd->callback([&action, opts] {
      action = [=]() -> int {
        ClaimOptions claim_opts{opts->seed, opts->threads};
        auto results = run_all_claims(claim_opts);
        bool all_passed = true;
        for (const auto& r : results) {
          std::cout << "criterion " << r.id << " [" << (r.passed ? "PASS" : "FAIL") << "] "
                    << r.name << "\n    measured: " << r.measured
                    << "\n    required: " << r.required << "\n    runtime:  " << r.seconds
                    << " s\n";
          all_passed = all_passed && r.passed;
        }
        ExperimentReport report = claims_report(results, claim_opts);
        ReportFormat format = report_format_from_name(opts->format);
        std::string path =
            opts->out.empty() ? "reproduce_all." + std::string(report_format_name(format))
                              : opts->out;
        report.save(path, format);
        std::cout << "reproduce-all: wrote " << path << "\n";
        return all_passed ? 0 : 1;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    exit_code = action();
  } catch (const config_error& e) {
    std::cerr << "config error";
    if (e.line() > 0) std::cerr << " (line " << e.line() << ", column " << e.column() << ")";
    std::cerr << ": " << e.what() << "\n";
    return 2;
  } catch (const resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const insufficient_data_error& e) {
    std::cerr << "insufficient data: " << e.what() << " (events=" << e.events()
              << ", required=" << e.required() << ")\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
