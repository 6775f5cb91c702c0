#pragma once

// Data-parallel inner loops. Every parallel kernel has a serial twin that
// produces bit-identical results: work is split over independent items and
// reductions are either per-item or resolved with a total order.

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "spikebasis/dictionary.hpp"

namespace spikebasis::kernels {

/// Recursive pairwise summation; fixed association order for a given length.
double pairwise_sum(std::span<const double> values);

/// Σ_i |y_i|^p for every column of `coefficients`.
std::vector<double> per_sample_lp_serial(const Eigen::MatrixXd& coefficients, double p);
std::vector<double> per_sample_lp_parallel(const Eigen::MatrixXd& coefficients, double p);

/// Number of entries with |y_i| > zero_tol for every column.
std::vector<double> per_sample_l0_serial(const Eigen::MatrixXd& coefficients, double zero_tol);
std::vector<double> per_sample_l0_parallel(const Eigen::MatrixXd& coefficients, double zero_tol);

/// Wavelet packet tables of every column of `samples`.
std::vector<DictionaryTable> analyze_batch_serial(const Eigen::MatrixXd& samples, int max_level);
std::vector<DictionaryTable> analyze_batch_parallel(const Eigen::MatrixXd& samples, int max_level);

struct CoverMinimum {
  std::uint64_t ordinal = 0;  ///< position in decode_tree_basis order
  double cost = 0.0;
  std::uint64_t evaluated = 0;
};

/// Sum of node costs of one tree basis, identified by ordinal, without
/// materializing it. `node_costs` is indexed by flat_node_index.
double cover_cost(std::span<const double> node_costs, int max_level, std::uint64_t ordinal);

/// Brute-force minimum over every tree basis of a depth-K tree. Ties go to
/// the smallest ordinal.
CoverMinimum scan_covers_serial(std::span<const double> node_costs, int max_level);
CoverMinimum scan_covers_parallel(std::span<const double> node_costs, int max_level);

struct TrialMinimum {
  int trial = -1;
  double value = 0.0;
};

/// Runs `trial(t)` for t in [0, count) and keeps the smallest value
/// (ties to the smallest t). `trial` must be safe to call concurrently.
TrialMinimum min_over_trials_serial(int count, const std::function<double(int)>& trial);
TrialMinimum min_over_trials_parallel(int count, const std::function<double(int)>& trial);

/// Threads OpenMP would use for a parallel region here.
int max_threads();

}  // namespace spikebasis::kernels
