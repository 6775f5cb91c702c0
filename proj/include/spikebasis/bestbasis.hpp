#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spikebasis/costs.hpp"
#include "spikebasis/dictionary.hpp"
#include "spikebasis/processes.hpp"

namespace spikebasis {

/// One additive cost per dictionary node, stored level-major (flat_node_index).
struct NodeCosts {
  int n0 = 0;
  int max_level = 0;
  CostKind kind = CostKind::lp;
  std::vector<double> values;

  double at(int level, int index) const { return values.at(flat_node_index(level, index)); }
  double at(Node nd) const { return at(nd.level, nd.index); }
};

/// Node costs of a training set. lp/l0 average over tables; the entropy
/// kinds sum, over a node's coordinates, the entropy of that coordinate
/// across tables (each table weighted 1/N).
NodeCosts node_costs(std::span<const DictionaryTable> tables, const CostSpec& spec);
NodeCosts node_costs(const DictionaryTable& table, const CostSpec& spec);

/// Exact node costs of the spike process in closed form (K = n0). Supports
/// entropy_exact, lp and l0.
NodeCosts node_costs_exact_spike(int n0, const CostSpec& spec);

/// Σ of node costs over a selection.
double selection_cost(const NodeCosts& costs, const TreeBasis& selection);

struct BestBasisResult {
  TreeBasis selection;
  double total_cost = 0.0;
  NodeCosts per_node_costs;
  /// Value kept at every node during the bottom-up fold (flat order).
  std::vector<double> kept_values;
  int n0 = 0;
  int max_level = 0;
  /// Number of covers scored (exhaustive search only).
  std::uint64_t evaluated = 0;
};

/// Bottom-up pruning: a parent is kept iff its cost ≤ the best cost of its
/// two children combined.
BestBasisResult prune(const NodeCosts& costs);

BestBasisResult best_basis(std::span<const DictionaryTable> tables, const CostSpec& spec);
BestBasisResult best_basis(const DictionaryTable& table, const CostSpec& spec);
BestBasisResult best_basis(const Dataset& data, int max_level, const CostSpec& spec);

/// One selection per sample; entropy costs are rejected.
std::vector<BestBasisResult> best_basis_per_realization(const Dataset& data, int max_level,
                                                        const CostSpec& spec);

/// Pruning on the closed-form spike node costs, 1 ≤ n0 ≤ 20.
BestBasisResult best_basis_exact_spike(int n0, const CostSpec& spec);

/// Scores every tree basis and keeps the minimum (ties: earliest in
/// enumeration order). Refuses n0 > 5 unless `allow_large`.
BestBasisResult exhaustive_best_basis(const NodeCosts& costs, bool allow_large = false);
BestBasisResult exhaustive_best_basis(std::span<const DictionaryTable> tables, const CostSpec& spec,
                                      bool allow_large = false);

}  // namespace spikebasis
