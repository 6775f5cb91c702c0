#include "spikebasis/dictionary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spikebasis/rng.hpp"

namespace spikebasis {

FilterPair FilterPair::haar_walsh() {
  const double s = 1.0 / std::sqrt(2.0);
  return FilterPair{{s, s}, {s, -s}};
}

FilterPair FilterPair::from_lowpass(std::vector<double> lowpass) {
  if (lowpass.empty() || lowpass.size() % 2 != 0)
    throw std::invalid_argument("FilterPair: lowpass length must be even and positive");
  const std::size_t len = lowpass.size();
  std::vector<double> highpass(len);
  for (std::size_t l = 0; l < len; ++l)
    highpass[l] = (l % 2 == 0 ? 1.0 : -1.0) * lowpass[len - 1 - l];
  return FilterPair{std::move(lowpass), std::move(highpass)};
}

std::vector<double> filter_downsample(std::span<const double> filter, std::span<const double> x) {
  const std::size_t m = x.size();
  if (m < 2 || m % 2 != 0) throw std::invalid_argument("filter_downsample: length must be even");
  std::vector<double> out(m / 2, 0.0);
  for (std::size_t k = 0; k < m / 2; ++k) {
    double acc = 0.0;
    for (std::size_t l = 0; l < filter.size(); ++l) acc += filter[l] * x[(2 * k + l) % m];
    out[k] = acc;
  }
  return out;
}

std::vector<double> filter_upsample(std::span<const double> filter, std::span<const double> y) {
  const std::size_t m = 2 * y.size();
  std::vector<double> out(m, 0.0);
  for (std::size_t k = 0; k < y.size(); ++k)
    for (std::size_t l = 0; l < filter.size(); ++l) out[(2 * k + l) % m] += filter[l] * y[k];
  return out;
}

double FilterPair::max_cmf_violation(int n, int probes, std::uint64_t seed) const {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("max_cmf_violation: n must be even");
  Rng rng(seed);
  double worst = 0.0;
  std::vector<double> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n / 2));
  for (int t = 0; t < probes; ++t) {
    for (auto& v : x) v = rng.normal();
    for (auto& v : y) v = rng.normal();
    const auto low = filter_upsample(lowpass, filter_downsample(lowpass, x));
    const auto high = filter_upsample(highpass, filter_downsample(highpass, x));
    for (std::size_t i = 0; i < x.size(); ++i)
      worst = std::max(worst, std::abs(low[i] + high[i] - x[i]));
    for (double v : filter_downsample(lowpass, filter_upsample(highpass, y)))
      worst = std::max(worst, std::abs(v));
    for (double v : filter_downsample(highpass, filter_upsample(lowpass, y)))
      worst = std::max(worst, std::abs(v));
  }
  return worst;
}

NodeSign node_sign(int level, int index) {
  if (level < 0 || index < 0 || index >= (1 << level))
    throw std::invalid_argument("node_sign: node out of range");
  return index == 0 ? NodeSign::positive : NodeSign::negative;
}

int dyadic_exponent(Index n) {
  if (n < 1 || (n & (n - 1)) != 0) return -1;
  int e = 0;
  while ((Index{1} << e) < n) ++e;
  return e;
}

DictionaryTable::DictionaryTable(int n0, int max_level, std::vector<std::vector<double>> levels)
    : n0_(n0), max_level_(max_level), levels_(std::move(levels)) {
  if (n0 < 0 || max_level < 0 || max_level > n0)
    throw std::invalid_argument("DictionaryTable: need 0 <= K <= n0");
  if (levels_.size() != static_cast<std::size_t>(max_level) + 1)
    throw std::invalid_argument("DictionaryTable: wrong number of levels");
  for (const auto& lv : levels_)
    if (lv.size() != static_cast<std::size_t>(1) << n0)
      throw std::invalid_argument("DictionaryTable: every level must hold n values");
}

std::span<const double> DictionaryTable::node(int k, int l) const {
  if (k < 0 || k > max_level_ || l < 0 || l >= (1 << k))
    throw std::out_of_range("DictionaryTable::node: node out of range");
  const auto size = static_cast<std::size_t>(node_size(k));
  return level(k).subspan(static_cast<std::size_t>(l) * size, size);
}

DictionaryTable analyze(std::span<const double> x, int max_level, const FilterPair& filters) {
  const int n0 = dyadic_exponent(static_cast<Index>(x.size()));
  if (n0 < 0) throw std::invalid_argument("analyze: length must be a power of two");
  if (max_level < 0 || max_level > n0) throw std::invalid_argument("analyze: need 0 <= K <= n0");
  std::vector<std::vector<double>> levels;
  levels.reserve(static_cast<std::size_t>(max_level) + 1);
  levels.emplace_back(x.begin(), x.end());
  for (int k = 0; k < max_level; ++k) {
    const auto& parent_level = levels.back();
    std::vector<double> next(parent_level.size());
    const std::size_t parent_size = std::size_t{1} << (n0 - k);
    for (std::size_t l = 0; l < (std::size_t{1} << k); ++l) {
      const std::span<const double> parent(parent_level.data() + l * parent_size, parent_size);
      const auto low = filter_downsample(filters.lowpass, parent);
      const auto high = filter_downsample(filters.highpass, parent);
      std::copy(low.begin(), low.end(), next.begin() + static_cast<std::ptrdiff_t>(2 * l * low.size()));
      std::copy(high.begin(), high.end(),
                next.begin() + static_cast<std::ptrdiff_t>((2 * l + 1) * high.size()));
    }
    levels.push_back(std::move(next));
  }
  return DictionaryTable(n0, max_level, std::move(levels));
}

DictionaryTable analyze(const Eigen::VectorXd& x, int max_level, const FilterPair& filters) {
  return analyze(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())), max_level,
                 filters);
}

Eigen::VectorXd synthesize_node(int n0, Node node, std::span<const double> coefficients,
                                const FilterPair& filters) {
  if (node.level < 0 || node.level > n0 || node.index < 0 || node.index >= (1 << node.level))
    throw std::out_of_range("synthesize_node: node out of range");
  if (coefficients.size() != std::size_t{1} << (n0 - node.level))
    throw std::invalid_argument("synthesize_node: wrong coefficient count");
  std::vector<double> y(coefficients.begin(), coefficients.end());
  int index = node.index;
  for (int k = node.level; k > 0; --k) {
    y = filter_upsample((index & 1) ? filters.highpass : filters.lowpass, y);
    index >>= 1;
  }
  return Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Index>(y.size()));
}

Eigen::MatrixXd node_basis_matrix(int n0, int level, int index, const FilterPair& filters) {
  if (n0 < 0 || level < 0 || level > n0 || index < 0 || index >= (1 << level))
    throw std::out_of_range("node_basis_matrix: node out of range");
  const int width = 1 << (n0 - level);
  Eigen::MatrixXd out(1 << n0, width);
  std::vector<double> unit(static_cast<std::size_t>(width), 0.0);
  for (int m = 0; m < width; ++m) {
    unit[static_cast<std::size_t>(m)] = 1.0;
    out.col(m) = synthesize_node(n0, {level, index}, unit, filters);
    unit[static_cast<std::size_t>(m)] = 0.0;
  }
  return out;
}

TreeBasis::TreeBasis(int n0, std::vector<Node> nodes) : n0_(n0), nodes_(std::move(nodes)) {
  if (n0 < 0) throw std::invalid_argument("TreeBasis: n0 must be non-negative");
  std::sort(nodes_.begin(), nodes_.end());
  const std::size_t n = std::size_t{1} << n0;
  std::vector<char> covered(n, 0);
  for (const Node& nd : nodes_) {
    if (nd.level < 0 || nd.level > n0 || nd.index < 0 || nd.index >= (1 << nd.level))
      throw std::invalid_argument("TreeBasis: node out of range");
    const std::size_t width = std::size_t{1} << (n0 - nd.level);
    for (std::size_t i = nd.index * width; i < (nd.index + 1) * width; ++i) {
      if (covered[i]) throw std::invalid_argument("TreeBasis: nodes overlap");
      covered[i] = 1;
    }
  }
  if (std::find(covered.begin(), covered.end(), 0) != covered.end())
    throw std::invalid_argument("TreeBasis: nodes do not cover the space");
}

TreeBasis TreeBasis::root(int n0) { return TreeBasis(n0, {{0, 0}}); }

TreeBasis TreeBasis::level(int n0, int k) {
  if (k < 0 || k > n0) throw std::invalid_argument("TreeBasis::level: need 0 <= k <= n0");
  std::vector<Node> nodes;
  for (int l = 0; l < (1 << k); ++l) nodes.push_back({k, l});
  return TreeBasis(n0, std::move(nodes));
}

int TreeBasis::deepest_level() const {
  int deepest = 0;
  for (const Node& nd : nodes_) deepest = std::max(deepest, nd.level);
  return deepest;
}

Eigen::MatrixXd TreeBasis::matrix(const FilterPair& filters) const {
  const int n = 1 << n0_;
  Eigen::MatrixXd out(n, n);
  Index col = 0;
  for (const Node& nd : nodes_) {
    const Eigen::MatrixXd block = node_basis_matrix(n0_, nd.level, nd.index, filters);
    out.middleCols(col, block.cols()) = block;
    col += block.cols();
  }
  return out;
}

std::uint64_t tree_basis_count(int max_level) {
  if (max_level < 0) throw std::invalid_argument("tree_basis_count: negative depth");
  if (max_level > 6) throw std::overflow_error("tree_basis_count: count exceeds 64 bits for K > 6");
  std::uint64_t count = 1;
  for (int k = 0; k < max_level; ++k) count = count * count + 1;
  return count;
}

namespace {

// Ordinal 0 keeps the node; ordinal i > 0 splits it, with i − 1 = left·N + right
// where N counts the covers of one child subtree.
void decode_into(Node node, int remaining, std::uint64_t ordinal, std::vector<Node>& out) {
  if (ordinal == 0) {
    out.push_back(node);
    return;
  }
  const std::uint64_t child_count = tree_basis_count(remaining - 1);
  const std::uint64_t rest = ordinal - 1;
  decode_into({node.level + 1, 2 * node.index}, remaining - 1, rest / child_count, out);
  decode_into({node.level + 1, 2 * node.index + 1}, remaining - 1, rest % child_count, out);
}

}  // namespace

TreeBasis decode_tree_basis(int n0, int max_level, std::uint64_t ordinal) {
  if (max_level < 0 || max_level > n0)
    throw std::invalid_argument("decode_tree_basis: need 0 <= K <= n0");
  if (ordinal >= tree_basis_count(max_level))
    throw std::out_of_range("decode_tree_basis: ordinal out of range");
  std::vector<Node> nodes;
  decode_into({0, 0}, max_level, ordinal, nodes);
  return TreeBasis(n0, std::move(nodes));
}

TreeBasisEnumerator::TreeBasisEnumerator(int n0, int max_level)
    : n0_(n0), max_level_(max_level), total_(tree_basis_count(max_level)) {
  if (max_level < 0 || max_level > n0)
    throw std::invalid_argument("TreeBasisEnumerator: need 0 <= K <= n0");
}

std::optional<TreeBasis> TreeBasisEnumerator::next() {
  if (next_ >= total_) return std::nullopt;
  return decode_tree_basis(n0_, max_level_, next_++);
}

TreeBasisEnumerator enumerate_tree_bases(int n0, int max_level, bool allow_large) {
  if (n0 > 5 && !allow_large)
    throw std::invalid_argument("enumerate_tree_bases: n0 > 5 requires allow_large");
  return TreeBasisEnumerator(n0, max_level);
}

Eigen::VectorXd reconstruct(const DictionaryTable& table, const TreeBasis& selection,
                            const FilterPair& filters) {
  if (selection.n0() != table.n0())
    throw std::invalid_argument("reconstruct: selection and table sizes differ");
  if (selection.deepest_level() > table.max_level())
    throw std::invalid_argument("reconstruct: selection is deeper than the table");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(table.dimension());
  for (const Node& nd : selection.nodes())
    x += synthesize_node(table.n0(), nd, table.node(nd), filters);
  return x;
}

}  // namespace spikebasis
