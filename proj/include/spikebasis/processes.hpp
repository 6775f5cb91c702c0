#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "spikebasis/bases.hpp"

namespace spikebasis {

/// A training set: one realization per column of an n×N matrix.
struct Dataset {
  Eigen::MatrixXd samples;

  Index dimension() const { return samples.rows(); }
  Index count() const { return samples.cols(); }
  Eigen::VectorXd sample(Index k) const { return samples.col(k); }
};

/// Emits one standard basis vector e_j of ℝⁿ, j uniform on {1..n}.
class SpikeProcess {
 public:
  explicit SpikeProcess(int n);
  int dimension() const { return n_; }

 private:
  int n_;
};

struct Outcome {
  Eigen::VectorXd value;
  double probability = 0.0;
};

/// A process with finitely many outcomes and an explicit pmf.
struct DiscreteProcess {
  std::vector<Outcome> outcomes;

  Index dimension() const { return outcomes.empty() ? 0 : outcomes.front().value.size(); }
};

Dataset sample_spike(const SpikeProcess& process, int count, std::uint64_t seed);

/// m distinct unit spikes per realization, positions uniform without replacement.
Dataset sample_multispike(int n, int m, int count, std::uint64_t seed);

/// i.i.d. coordinates uniform on [−1, 1].
Dataset sample_uniform2d(int count, std::uint64_t seed);

/// The n pairs (e_j, 1/n).
std::vector<Outcome> enumerate_outcomes(const SpikeProcess& process);
DiscreteProcess as_discrete(const SpikeProcess& process);

/// Every outcome once, as columns (the identity matrix).
Dataset all_outcomes(const SpikeProcess& process);

/// R_ij = δ_ij/n − 1/n².
Eigen::MatrixXd spike_covariance(int n);

/// Whether `basis` is a Karhunen-Loève basis of the n-dimensional spike
/// process. Checks both that it diagonalizes the covariance and that one
/// column is parallel to 1_n; throws std::logic_error if the two
/// characterizations disagree.
bool is_klb(const Basis& basis, int n, double tol = 1e-10);

}  // namespace spikebasis
