#include "spikebasis/bestbasis.hpp"

#include <cmath>
#include <stdexcept>

#include "spikebasis/analytic.hpp"
#include "spikebasis/kernels.hpp"

namespace spikebasis {

NodeCosts node_costs(std::span<const DictionaryTable> tables, const CostSpec& spec) {
  if (tables.empty()) throw std::invalid_argument("node_costs: no tables");
  const int n0 = tables.front().n0();
  const int depth = tables.front().max_level();
  for (const auto& t : tables)
    if (t.n0() != n0 || t.max_level() != depth)
      throw std::invalid_argument("node_costs: tables differ in size or depth");
  if (spec.kind == CostKind::entropy_empirical && tables.size() < 2)
    throw std::invalid_argument("node_costs: empirical entropy needs at least two tables");

  const std::size_t count = tables.size();
  NodeCosts out{n0, depth, spec.kind, std::vector<double>(flat_node_count(depth), 0.0)};
  std::vector<double> per_table(count);
  std::vector<double> across(count);
  const std::vector<double> weights(count, 1.0 / static_cast<double>(count));

  for (int k = 0; k <= depth; ++k) {
    for (int l = 0; l < (1 << k); ++l) {
      double cost = 0.0;
      if (spec.kind == CostKind::lp || spec.kind == CostKind::l0) {
        for (std::size_t t = 0; t < count; ++t) per_table[t] = additive_cost(tables[t].node(k, l), spec);
        cost = kernels::pairwise_sum(per_table) / static_cast<double>(count);
      } else {
        const std::size_t size = std::size_t{1} << (n0 - k);
        std::vector<double> coordinate(size);
        for (std::size_t m = 0; m < size; ++m) {
          for (std::size_t t = 0; t < count; ++t) across[t] = tables[t].node(k, l)[m];
          coordinate[m] = spec.kind == CostKind::entropy_exact
                              ? coordinate_entropy_exact(across, weights, spec.rel_tol)
                              : histogram_entropy(across, spec.estimator);
        }
        cost = additive_cost(coordinate, spec);
      }
      out.values[flat_node_index(k, l)] = cost;
    }
  }
  return out;
}

NodeCosts node_costs(const DictionaryTable& table, const CostSpec& spec) {
  return node_costs(std::span<const DictionaryTable>(&table, 1), spec);
}

NodeCosts node_costs_exact_spike(int n0, const CostSpec& spec) {
  if (n0 < 1 || n0 > 20) throw std::invalid_argument("node_costs_exact_spike: need 1 <= n0 <= 20");
  NodeCosts out{n0, n0, spec.kind, std::vector<double>(flat_node_count(n0), 0.0)};
  for (int k = 0; k <= n0; ++k) {
    // Each node at level k holds n/2^k coefficients, all distributed alike.
    const double coefficients = std::ldexp(1.0, n0 - k);
    for (int l = 0; l < (1 << k); ++l) {
      double cost = 0.0;
      switch (spec.kind) {
        case CostKind::entropy_exact:
          cost = coefficients * (l == 0 ? analytic::h_plus(k, n0) : analytic::h_minus(k, n0));
          break;
        case CostKind::lp:
          // Every coefficient is ±2^{−k/2} with probability 2^k/n.
          cost = std::pow(2.0, -0.5 * k * spec.p);
          break;
        case CostKind::l0:
          cost = 1.0;
          break;
        case CostKind::entropy_empirical:
          throw std::invalid_argument("node_costs_exact_spike: empirical entropy has no closed form");
      }
      out.values[flat_node_index(k, l)] = cost;
    }
  }
  return out;
}

double selection_cost(const NodeCosts& costs, const TreeBasis& selection) {
  if (selection.n0() != costs.n0 || selection.deepest_level() > costs.max_level)
    throw std::invalid_argument("selection_cost: selection does not fit the cost table");
  double acc = 0.0;
  for (const Node& nd : selection.nodes()) acc += costs.at(nd);
  return acc;
}

namespace {

void collect(const std::vector<char>& keep, int level, int index, int depth, std::vector<Node>& out) {
  if (level == depth || keep[flat_node_index(level, index)]) {
    out.push_back({level, index});
    return;
  }
  collect(keep, level + 1, 2 * index, depth, out);
  collect(keep, level + 1, 2 * index + 1, depth, out);
}

}  // namespace

BestBasisResult prune(const NodeCosts& costs) {
  const int depth = costs.max_level;
  if (costs.values.size() != flat_node_count(depth))
    throw std::invalid_argument("prune: node cost array has the wrong size");
  std::vector<double> best = costs.values;
  std::vector<char> keep(best.size(), 1);
  for (int k = depth - 1; k >= 0; --k) {
    for (int l = 0; l < (1 << k); ++l) {
      const std::size_t self = flat_node_index(k, l);
      const double children = best[flat_node_index(k + 1, 2 * l)] + best[flat_node_index(k + 1, 2 * l + 1)];
      if (costs.values[self] <= children) {
        best[self] = costs.values[self];
      } else {
        best[self] = children;
        keep[self] = 0;
      }
    }
  }
  std::vector<Node> nodes;
  collect(keep, 0, 0, depth, nodes);
  return BestBasisResult{TreeBasis(costs.n0, std::move(nodes)), best[0], costs, std::move(best),
                         costs.n0, depth, 0};
}

BestBasisResult best_basis(std::span<const DictionaryTable> tables, const CostSpec& spec) {
  return prune(node_costs(tables, spec));
}

BestBasisResult best_basis(const DictionaryTable& table, const CostSpec& spec) {
  return prune(node_costs(table, spec));
}

BestBasisResult best_basis(const Dataset& data, int max_level, const CostSpec& spec) {
  const auto tables = kernels::analyze_batch_parallel(data.samples, max_level);
  return best_basis(tables, spec);
}

std::vector<BestBasisResult> best_basis_per_realization(const Dataset& data, int max_level,
                                                        const CostSpec& spec) {
  if (spec.kind != CostKind::lp && spec.kind != CostKind::l0)
    throw std::invalid_argument("best_basis_per_realization: only lp and l0 costs apply to one sample");
  std::vector<BestBasisResult> out;
  for (const auto& table : kernels::analyze_batch_parallel(data.samples, max_level))
    out.push_back(best_basis(table, spec));
  return out;
}

BestBasisResult best_basis_exact_spike(int n0, const CostSpec& spec) {
  return prune(node_costs_exact_spike(n0, spec));
}

BestBasisResult exhaustive_best_basis(const NodeCosts& costs, bool allow_large) {
  if (costs.n0 > 5 && !allow_large)
    throw std::invalid_argument("exhaustive_best_basis: n0 > 5 requires allow_large");
  const auto found = kernels::scan_covers_parallel(costs.values, costs.max_level);
  TreeBasis selection = decode_tree_basis(costs.n0, costs.max_level, found.ordinal);
  return BestBasisResult{std::move(selection), found.cost, costs, {}, costs.n0, costs.max_level,
                         found.evaluated};
}

BestBasisResult exhaustive_best_basis(std::span<const DictionaryTable> tables, const CostSpec& spec,
                                      bool allow_large) {
  return exhaustive_best_basis(node_costs(tables, spec), allow_large);
}

}  // namespace spikebasis
