#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "evstat/dist.hpp"
#include "evstat/random.hpp"

namespace evstat {

/// Node budget for materialized trees; larger runs stream per generation.
inline constexpr std::uint64_t max_tree_nodes = std::uint64_t{1} << 25;

/// Complete b-ary tree of G generations with one real value per node.
/// Generation g holds b^g nodes; node (g, i) has parent (g-1, i/b).
struct BranchTree {
  std::uint32_t branching_factor = 2;
  std::uint32_t generations = 1;
  std::vector<std::vector<double>> node_values;  // [generation][node]

  std::uint64_t leaf_count() const;
  std::uint64_t node_count() const;
  std::span<const double> leaves() const { return node_values.back(); }
};

/// Allocates the tree skeleton (all values zero). Throws resource_error
/// when the node count would exceed max_tree_nodes.
BranchTree grow_tree(std::uint32_t branching_factor, std::uint32_t generations);

enum class DrawModeKind {
  final_draw,  // every node gets an independent draw
  inherited,   // every node gets parent's value plus an independent increment
};

struct DrawMode {
  DrawModeKind kind = DrawModeKind::final_draw;
  std::optional<DistSpec> increment_dist;  // present iff inherited

  static DrawMode final_draw() { return {DrawModeKind::final_draw, std::nullopt}; }
  static DrawMode inherited(DistSpec increments) {
    return {DrawModeKind::inherited, std::move(increments)};
  }
};

/// Fills node values generation by generation, node index ascending.
/// final_draw: i.i.d. draws from leaf_dist at every node (internal nodes
/// included). inherited: each node's value is its parent's value plus an
/// i.i.d. increment, so a leaf carries its path sum.
void assign_draws(BranchTree& tree, const DrawMode& mode, const DistSpec& leaf_dist,
                  RandomSource& rng);

/// Per-(mode, G) medians of the leaf-value statistics that distinguish
/// independent final draws from history-correlated accumulation.
struct DominanceContrastRow {
  DrawModeKind mode = DrawModeKind::final_draw;
  std::uint32_t branching_factor = 2;
  std::uint32_t generations = 1;
  std::uint64_t leaf_count = 0;
  double median_rel_gap = 0.0;             // median of (X1 - X2) / X1
  double median_log2_fraction = 0.0;       // median log2 dominance fraction of 2^leaf
  double median_log2_fraction_stderr = 0;  // bootstrap (200 resamples)
};

/// Runs both draw modes over every G in `generations_grid` with
/// `replicates` trees each. final_draw leaves come from leaf_dist;
/// inherited increments come from increment_dist.
std::vector<DominanceContrastRow> dominance_contrast(
    std::uint32_t branching_factor, std::span<const std::uint32_t> generations_grid,
    const DistSpec& leaf_dist, const DistSpec& increment_dist, std::size_t replicates,
    const RandomSource& rng, unsigned threads = 0);

/// Aggregated rows plus the per-replicate statistics behind them,
/// cell-major in the same order as `rows`.
struct DominanceContrastDetail {
  std::vector<DominanceContrastRow> rows;
  std::vector<std::vector<double>> rel_gaps;        // [cell][replicate]
  std::vector<std::vector<double>> log2_fractions;  // [cell][replicate]
};

DominanceContrastDetail dominance_contrast_detail(
    std::uint32_t branching_factor, std::span<const std::uint32_t> generations_grid,
    const DistSpec& leaf_dist, const DistSpec& increment_dist, std::size_t replicates,
    const RandomSource& rng, unsigned threads = 0);

struct TimingPoint {
  std::uint32_t generations_before_end = 0;  // the n in "earlier than G-n"
  double frequency = 0.0;                    // empirical P(argmax generation <= G-n)
  double predicted = 0.0;                    // node-counting prediction
  double shorthand = 0.0;                    // b^-n ensemble-size shorthand
};

/// Where the global maximum over all node draws falls. For i.i.d.
/// continuous draws the argmax is uniform over nodes, so
/// P(generation <= G-n) = (nodes in generations 0..G-n) / (all nodes);
/// that exact counting prediction is attached to each point alongside
/// the b^-n shorthand.
std::vector<TimingPoint> extremum_timing(std::uint32_t branching_factor,
                                         std::uint32_t generations, const DistSpec& node_dist,
                                         std::size_t replicates,
                                         std::span<const std::uint32_t> before_end,
                                         const RandomSource& rng, unsigned threads = 0);

}  // namespace evstat
