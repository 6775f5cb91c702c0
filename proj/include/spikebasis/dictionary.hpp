#pragma once

#include <Eigen/Dense>

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spikebasis/bases.hpp"

namespace spikebasis {

/// Lowpass/highpass pair of a two-channel orthogonal filter bank.
///
/// Only the Haar-Walsh pair is used by the rest of the library; longer
/// filters are accepted and checked but nothing else is promised about them.
struct FilterPair {
  std::vector<double> lowpass;
  std::vector<double> highpass;

  static FilterPair haar_walsh();
  /// highpass_l = (−1)^l · lowpass_{L−1−l}.
  static FilterPair from_lowpass(std::vector<double> lowpass);

  /// Largest violation of H*H + G*G = I, HG* = 0 and GH* = 0 over `probes`
  /// random vectors of length n (periodic boundary).
  double max_cmf_violation(int n, int probes, std::uint64_t seed) const;
};

/// Convolution-subsampling with periodic wrap: out_k = Σ_l f_l x_{(2k+l) mod m}.
std::vector<double> filter_downsample(std::span<const double> filter, std::span<const double> x);
/// Adjoint of filter_downsample: upsampling followed by anti-convolution.
std::vector<double> filter_upsample(std::span<const double> filter, std::span<const double> y);

struct Node {
  int level = 0;
  int index = 0;
  auto operator<=>(const Node&) const = default;
};

enum class NodeSign { positive, negative };

/// Only the leftmost node (all lowpass) of each level is positive.
NodeSign node_sign(int level, int index);

/// Position of node (k, l) in a level-major flat array: 2^k − 1 + l.
inline std::size_t flat_node_index(int level, int index) {
  return (std::size_t{1} << level) - 1 + static_cast<std::size_t>(index);
}
inline std::size_t flat_node_count(int max_level) { return (std::size_t{2} << max_level) - 1; }

/// Wavelet packet coefficients of one vector, levels 0..K.
///
/// Level k is stored contiguously (n values); node (k, l) is the slice
/// starting at l·2^{n0−k}. Children of (k, l) are (k+1, 2l) = H(parent)
/// and (k+1, 2l+1) = G(parent).
class DictionaryTable {
 public:
  DictionaryTable(int n0, int max_level, std::vector<std::vector<double>> levels);

  int n0() const { return n0_; }
  int max_level() const { return max_level_; }
  int dimension() const { return 1 << n0_; }
  int node_size(int level) const { return 1 << (n0_ - level); }

  std::span<const double> level(int k) const { return levels_.at(static_cast<std::size_t>(k)); }
  std::span<const double> node(int k, int l) const;
  std::span<const double> node(Node nd) const { return node(nd.level, nd.index); }

 private:
  int n0_;
  int max_level_;
  std::vector<std::vector<double>> levels_;
};

/// Expands x (length 2^n0) down to depth K. Rejects non-dyadic lengths and K > n0.
DictionaryTable analyze(std::span<const double> x, int max_level,
                        const FilterPair& filters = FilterPair::haar_walsh());
DictionaryTable analyze(const Eigen::VectorXd& x, int max_level,
                        const FilterPair& filters = FilterPair::haar_walsh());

/// log2 of a dyadic length, or −1.
int dyadic_exponent(Index n);

/// Maps node coefficients back to ℝⁿ (adjoint filters up to the root).
Eigen::VectorXd synthesize_node(int n0, Node node, std::span<const double> coefficients,
                                const FilterPair& filters = FilterPair::haar_walsh());

/// The vectors w_{k,l,m} spanning node (k, l), one per column.
Eigen::MatrixXd node_basis_matrix(int n0, int level, int index,
                                  const FilterPair& filters = FilterPair::haar_walsh());

/// A set of dictionary nodes whose dyadic intervals partition [0, 1).
class TreeBasis {
 public:
  /// Validates the cover; nodes are stored sorted by (level, index).
  TreeBasis(int n0, std::vector<Node> nodes);

  static TreeBasis root(int n0);
  /// All nodes of one level; level n0 with Haar-Walsh filters is the Walsh basis.
  static TreeBasis level(int n0, int k);

  int n0() const { return n0_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  int deepest_level() const;

  /// Columns of all member nodes, in node order.
  Eigen::MatrixXd matrix(const FilterPair& filters = FilterPair::haar_walsh()) const;

  bool operator==(const TreeBasis&) const = default;

 private:
  int n0_;
  std::vector<Node> nodes_;
};

/// Number of tree bases of a depth-K dictionary: N_K = 1, N_k = N_{k+1}² + 1.
/// Throws std::overflow_error for K > 6.
std::uint64_t tree_basis_count(int max_level);

/// The `ordinal`-th tree basis in depth-first, root-first order.
TreeBasis decode_tree_basis(int n0, int max_level, std::uint64_t ordinal);

/// Walks every tree basis of a depth-K dictionary exactly once.
class TreeBasisEnumerator {
 public:
  TreeBasisEnumerator(int n0, int max_level);

  std::uint64_t size() const { return total_; }
  std::optional<TreeBasis> next();
  TreeBasis at(std::uint64_t ordinal) const { return decode_tree_basis(n0_, max_level_, ordinal); }

 private:
  int n0_;
  int max_level_;
  std::uint64_t total_;
  std::uint64_t next_ = 0;
};

/// Refuses n0 > 5 unless `allow_large` is set.
TreeBasisEnumerator enumerate_tree_bases(int n0, int max_level, bool allow_large = false);

/// Rebuilds x from the coefficients of the selected nodes.
Eigen::VectorXd reconstruct(const DictionaryTable& table, const TreeBasis& selection,
                            const FilterPair& filters = FilterPair::haar_walsh());

}  // namespace spikebasis
