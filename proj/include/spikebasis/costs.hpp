#pragma once

#include <Eigen/Dense>

#include <span>
#include <string_view>
#include <vector>

#include "spikebasis/bases.hpp"
#include "spikebasis/processes.hpp"

namespace spikebasis {

enum class CostKind { lp, l0, entropy_empirical, entropy_exact };

std::string_view to_string(CostKind kind);
CostKind cost_kind_from_string(std::string_view name);

/// Bin-count rule for the plug-in histogram entropy estimate. Bins are
/// equal-width over the observed range of each coordinate.
struct HistogramEstimator {
  enum class Rule { sqrt_n, fixed };
  Rule rule = Rule::sqrt_n;
  int bins = 0;  ///< used by Rule::fixed

  static HistogramEstimator sqrt_n() { return {}; }
  static HistogramEstimator fixed(int m);

  /// ⌈√N⌉ or m.
  int bin_count(Index samples) const;
};

/// Everything needed to evaluate one additive cost.
struct CostSpec {
  CostKind kind = CostKind::lp;
  double p = 1.0;
  double zero_tol = 1e-12;
  double rel_tol = kDefaultRelTol;
  HistogramEstimator estimator;

  static CostSpec lp(double p);
  static CostSpec l0(double zero_tol = 1e-12);
  static CostSpec entropy_exact(double rel_tol = kDefaultRelTol);
  static CostSpec entropy_empirical(HistogramEstimator estimator = HistogramEstimator::sqrt_n());
};

struct CostValue {
  double value = 0.0;
  CostKind kind = CostKind::lp;
  /// Coordinates whose samples had zero range (entropy_empirical only).
  std::vector<Index> degenerate;
};

// Per-vector helpers --------------------------------------------------------

/// Σ |v_i|^p (p > 0).
double lp_sum(std::span<const double> values, double p);
/// Number of entries with |v_i| > zero_tol.
double l0_count(std::span<const double> values, double zero_tol);

/// Per-coordinate cost summed over `values`. For the entropy kinds the
/// values are already coordinate entropies and are simply added.
double additive_cost(std::span<const double> values, const CostSpec& spec);

// Sparsity --------------------------------------------------------------------

/// Mean over samples of Σ_i |y_i|^p, y = B⁻¹x.
CostValue lp_cost(const Dataset& data, const Basis& basis, double p);
/// Expectation of Σ_i |y_i|^p under an explicit pmf.
CostValue lp_cost(const DiscreteProcess& process, const Basis& basis, double p);

/// Spike process: the plain mean over the n outcomes (columns of B⁻¹).
CostValue lp_cost(const SpikeProcess& process, const Basis& basis, double p);

CostValue l0_cost(const Dataset& data, const Basis& basis, double zero_tol = 1e-12);
CostValue l0_cost(const DiscreteProcess& process, const Basis& basis, double zero_tol = 1e-12);
CostValue l0_cost(const SpikeProcess& process, const Basis& basis, double zero_tol = 1e-12);

// Entropy ---------------------------------------------------------------------

/// Entropy in bits of a discrete variable taking `values[j]` with
/// probability `probabilities[j]`; values are merged by values_equal.
double coordinate_entropy_exact(std::span<const double> values, std::span<const double> probabilities,
                                double rel_tol = kDefaultRelTol);

/// Σ_i H(Y_i) of Y = B⁻¹X, exact, in bits. The spike overload works from
/// the row classes of B⁻¹ directly.
CostValue entropy_exact_discrete(const SpikeProcess& process, const Basis& basis,
                                 double rel_tol = kDefaultRelTol);
CostValue entropy_exact_discrete(const DiscreteProcess& process, const Basis& basis,
                                 double rel_tol = kDefaultRelTol);

/// H(Y) of the whole vector Y = B⁻¹X (outcomes merged when every coordinate matches).
double joint_entropy_discrete(const DiscreteProcess& process, const Basis& basis,
                              double rel_tol = kDefaultRelTol);

/// Differential entropy estimate of one coordinate from samples, in bits.
/// Returns 0 and sets `degenerate` when the samples have no spread.
double histogram_entropy(std::span<const double> values, const HistogramEstimator& estimator,
                         bool* degenerate = nullptr);

/// Σ_i of histogram_entropy over the coordinates of y = B⁻¹x.
CostValue entropy_empirical(const Dataset& data, const Basis& basis,
                            const HistogramEstimator& estimator = HistogramEstimator::sqrt_n());

/// Σ_i H(Y_i) − log n for the spike process.
double mutual_information_spike(const Basis& basis, int n, double rel_tol = kDefaultRelTol);

}  // namespace spikebasis
