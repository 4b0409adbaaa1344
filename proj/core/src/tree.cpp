#include "evstat/tree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "evstat/errors.hpp"
#include "evstat/logdim.hpp"
#include "evstat/parallel.hpp"
#include "evstat/stats.hpp"

namespace evstat {

namespace {

// Sum of b^0 + ... + b^G, throwing when it would not fit the guard.
std::uint64_t checked_node_count(std::uint32_t b, std::uint32_t G) {
  if (b < 2) throw std::invalid_argument("tree: branching factor must be >= 2");
  if (G < 1) throw std::invalid_argument("tree: need at least one generation");
  std::uint64_t total = 0, layer = 1;
  for (std::uint32_t g = 0; g <= G; ++g) {
    total += layer;
    if (total > max_tree_nodes)
      throw resource_error("tree of b=" + std::to_string(b) + " G=" + std::to_string(G) +
                           " exceeds the node budget of " + std::to_string(max_tree_nodes));
    if (g < G) {
      if (layer > max_tree_nodes / b)
        throw resource_error("tree of b=" + std::to_string(b) + " G=" + std::to_string(G) +
                             " exceeds the node budget of " + std::to_string(max_tree_nodes));
      layer *= b;
    }
  }
  return total;
}

}  // namespace

std::uint64_t BranchTree::leaf_count() const {
  std::uint64_t n = 1;
  for (std::uint32_t g = 0; g < generations; ++g) n *= branching_factor;
  return n;
}

std::uint64_t BranchTree::node_count() const {
  std::uint64_t total = 0, layer = 1;
  for (std::uint32_t g = 0; g <= generations; ++g) {
    total += layer;
    layer *= branching_factor;
  }
  return total;
}

BranchTree grow_tree(std::uint32_t branching_factor, std::uint32_t generations) {
  checked_node_count(branching_factor, generations);
  BranchTree tree;
  tree.branching_factor = branching_factor;
  tree.generations = generations;
  tree.node_values.resize(generations + 1);
  std::uint64_t layer = 1;
  for (std::uint32_t g = 0; g <= generations; ++g) {
    tree.node_values[g].assign(layer, 0.0);
    layer *= branching_factor;
  }
  return tree;
}

void assign_draws(BranchTree& tree, const DrawMode& mode, const DistSpec& leaf_dist,
                  RandomSource& rng) {
  if (tree.node_values.size() != tree.generations + 1u)
    throw std::invalid_argument("assign_draws: tree skeleton not grown");
  if (mode.kind == DrawModeKind::inherited && !mode.increment_dist)
    throw std::invalid_argument("assign_draws: inherited mode needs an increment distribution");

  if (mode.kind == DrawModeKind::final_draw) {
    leaf_dist.validate();
    for (auto& layer : tree.node_values) {
      TailSample batch = sample(leaf_dist, layer.size(), rng);
      layer = std::move(batch.values);
    }
    return;
  }

  const DistSpec& inc = *mode.increment_dist;
  inc.validate();
  std::uint32_t b = tree.branching_factor;
  for (std::uint32_t g = 0; g <= tree.generations; ++g) {
    auto& layer = tree.node_values[g];
    TailSample increments = sample(inc, layer.size(), rng);
    if (g == 0) {
      layer[0] = increments.values[0];
      continue;
    }
    const auto& parents = tree.node_values[g - 1];
    for (std::size_t i = 0; i < layer.size(); ++i)
      layer[i] = parents[i / b] + increments.values[i];
  }
}

namespace {

struct LeafStats {
  double rel_gap = 0.0;
  double log2_fraction = 0.0;
};

LeafStats leaf_statistics(std::vector<double>& leaves) {
  std::sort(leaves.begin(), leaves.end(), std::greater<>());
  LeafStats s;
  s.rel_gap = (leaves[0] - leaves[1]) / leaves[0];
  s.log2_fraction = dominance_fraction(leaves).log2_value();
  return s;
}

// Leaf values of one replicate, streamed a generation at a time so no full
// tree is ever materialized.
std::vector<double> stream_leaves(std::uint32_t b, std::uint32_t G, DrawModeKind kind,
                                  const DistSpec& dist, RandomSource& rng) {
  std::uint64_t n_leaves = 1;
  for (std::uint32_t g = 0; g < G; ++g) n_leaves *= b;
  if (kind == DrawModeKind::final_draw) {
    return sample(dist, n_leaves, rng).values;
  }
  std::vector<double> current = sample(dist, 1, rng).values;  // root increment
  for (std::uint32_t g = 1; g <= G; ++g) {
    TailSample increments = sample(dist, current.size() * b, rng);
    std::vector<double>& inc = increments.values;
    for (std::size_t i = 0; i < inc.size(); ++i) inc[i] += current[i / b];
    current = std::move(inc);
  }
  return current;
}

}  // namespace

std::vector<DominanceContrastRow> dominance_contrast(
    std::uint32_t branching_factor, std::span<const std::uint32_t> generations_grid,
    const DistSpec& leaf_dist, const DistSpec& increment_dist, std::size_t replicates,
    const RandomSource& rng, unsigned threads) {
  return dominance_contrast_detail(branching_factor, generations_grid, leaf_dist, increment_dist,
                                   replicates, rng, threads)
      .rows;
}

DominanceContrastDetail dominance_contrast_detail(
    std::uint32_t branching_factor, std::span<const std::uint32_t> generations_grid,
    const DistSpec& leaf_dist, const DistSpec& increment_dist, std::size_t replicates,
    const RandomSource& rng, unsigned threads) {
  leaf_dist.validate();
  increment_dist.validate();
  if (generations_grid.empty())
    throw std::invalid_argument("dominance_contrast: empty generations grid");
  for (std::uint32_t g : generations_grid) checked_node_count(branching_factor, g);
  if (replicates < 2) throw std::invalid_argument("dominance_contrast: need replicates >= 2");

  std::size_t n_g = generations_grid.size();
  std::size_t cells = 2 * n_g;
  std::vector<std::vector<double>> rel_gaps(cells, std::vector<double>(replicates));
  std::vector<std::vector<double>> fractions(cells, std::vector<double>(replicates));

  std::uint64_t base = rng.stream() + 1;
  parallel_for(static_cast<std::uint64_t>(cells) * replicates, threads, [&](std::uint64_t j) {
    std::size_t cell = static_cast<std::size_t>(j / replicates);
    std::size_t r = static_cast<std::size_t>(j % replicates);
    DrawModeKind kind = cell < n_g ? DrawModeKind::final_draw : DrawModeKind::inherited;
    std::uint32_t G = generations_grid[cell % n_g];
    RandomSource local = rng.at_stream(base + j);
    std::vector<double> leaves =
        stream_leaves(branching_factor, G, kind,
                      kind == DrawModeKind::final_draw ? leaf_dist : increment_dist, local);
    LeafStats s = leaf_statistics(leaves);
    rel_gaps[cell][r] = s.rel_gap;
    fractions[cell][r] = s.log2_fraction;
  });

  std::uint64_t boot_base = base + static_cast<std::uint64_t>(cells) * replicates;
  DominanceContrastDetail detail;
  detail.rows.resize(cells);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    DominanceContrastRow& row = detail.rows[cell];
    row.mode = cell < n_g ? DrawModeKind::final_draw : DrawModeKind::inherited;
    row.branching_factor = branching_factor;
    row.generations = generations_grid[cell % n_g];
    row.leaf_count = 1;
    for (std::uint32_t g = 0; g < row.generations; ++g) row.leaf_count *= branching_factor;
    row.median_rel_gap = median(rel_gaps[cell]);
    row.median_log2_fraction = median(fractions[cell]);
    RandomSource boot = rng.at_stream(boot_base + cell);
    row.median_log2_fraction_stderr = bootstrap_median_stderr(fractions[cell], 200, boot);
  }
  detail.rel_gaps = std::move(rel_gaps);
  detail.log2_fractions = std::move(fractions);
  return detail;
}

std::vector<TimingPoint> extremum_timing(std::uint32_t branching_factor,
                                         std::uint32_t generations, const DistSpec& node_dist,
                                         std::size_t replicates,
                                         std::span<const std::uint32_t> before_end,
                                         const RandomSource& rng, unsigned threads) {
  node_dist.validate();
  checked_node_count(branching_factor, generations);
  if (replicates < 1) throw std::invalid_argument("extremum_timing: need replicates >= 1");
  if (before_end.empty()) throw std::invalid_argument("extremum_timing: empty n list");
  for (std::uint32_t n : before_end) {
    if (n < 1 || n > generations)
      throw std::invalid_argument("extremum_timing: n must satisfy 1 <= n <= G");
  }

  std::vector<std::uint32_t> argmax_gen(replicates);
  std::uint64_t base = rng.stream() + 1;
  parallel_for(replicates, threads, [&](std::uint64_t r) {
    RandomSource local = rng.at_stream(base + r);
    double best = -std::numeric_limits<double>::infinity();
    std::uint32_t best_gen = 0;
    std::uint64_t layer = 1;
    for (std::uint32_t g = 0; g <= generations; ++g) {
      TailSample batch = sample(node_dist, layer, local);
      for (double v : batch.values) {
        if (v > best) {
          best = v;
          best_gen = g;
        }
      }
      layer *= branching_factor;
    }
    argmax_gen[r] = best_gen;
  });

  double total_nodes = 0;
  std::vector<double> prefix(generations + 1);
  {
    double layer = 1;
    for (std::uint32_t g = 0; g <= generations; ++g) {
      total_nodes += layer;
      prefix[g] = total_nodes;
      layer *= branching_factor;
    }
  }

  std::vector<TimingPoint> out;
  out.reserve(before_end.size());
  for (std::uint32_t n : before_end) {
    std::uint32_t cutoff = generations - n;
    std::uint64_t count = 0;
    for (std::uint32_t g : argmax_gen)
      if (g <= cutoff) ++count;
    TimingPoint p;
    p.generations_before_end = n;
    p.frequency = static_cast<double>(count) / static_cast<double>(replicates);
    p.predicted = prefix[cutoff] / total_nodes;
    p.shorthand = std::pow(static_cast<double>(branching_factor), -static_cast<double>(n));
    out.push_back(p);
  }
  return out;
}

}  // namespace evstat
