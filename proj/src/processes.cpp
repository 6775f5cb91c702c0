#include "spikebasis/processes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spikebasis/rng.hpp"

namespace spikebasis {

SpikeProcess::SpikeProcess(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("SpikeProcess: n must be at least 1");
}

Dataset sample_spike(const SpikeProcess& process, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_spike: count must be at least 1");
  const int n = process.dimension();
  Rng rng(seed);
  Dataset out{Eigen::MatrixXd::Zero(n, count)};
  for (int k = 0; k < count; ++k)
    out.samples(static_cast<Index>(rng.below(static_cast<std::uint64_t>(n))), k) = 1.0;
  return out;
}

Dataset sample_multispike(int n, int m, int count, std::uint64_t seed) {
  if (n < 1 || m < 1 || m > n)
    throw std::invalid_argument("sample_multispike: need 1 <= m <= n");
  if (count < 1) throw std::invalid_argument("sample_multispike: count must be at least 1");
  Rng rng(seed);
  Dataset out{Eigen::MatrixXd::Zero(n, count)};
  std::vector<int> positions(static_cast<std::size_t>(n));
  for (int k = 0; k < count; ++k) {
    for (int i = 0; i < n; ++i) positions[static_cast<std::size_t>(i)] = i;
    // Partial Fisher-Yates: the first m slots become a uniform m-subset.
    for (int i = 0; i < m; ++i) {
      const auto j = static_cast<std::size_t>(i) +
                     static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n - i)));
      std::swap(positions[static_cast<std::size_t>(i)], positions[j]);
      out.samples(positions[static_cast<std::size_t>(i)], k) = 1.0;
    }
  }
  return out;
}

Dataset sample_uniform2d(int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_uniform2d: count must be at least 1");
  Rng rng(seed);
  Dataset out{Eigen::MatrixXd(2, count)};
  for (int k = 0; k < count; ++k) {
    out.samples(0, k) = rng.uniform(-1.0, 1.0);
    out.samples(1, k) = rng.uniform(-1.0, 1.0);
  }
  return out;
}

std::vector<Outcome> enumerate_outcomes(const SpikeProcess& process) {
  const int n = process.dimension();
  std::vector<Outcome> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    out.push_back({Eigen::VectorXd::Unit(n, j), 1.0 / n});
  return out;
}

DiscreteProcess as_discrete(const SpikeProcess& process) {
  return DiscreteProcess{enumerate_outcomes(process)};
}

Dataset all_outcomes(const SpikeProcess& process) {
  const int n = process.dimension();
  return Dataset{Eigen::MatrixXd::Identity(n, n)};
}

Eigen::MatrixXd spike_covariance(int n) {
  if (n < 1) throw std::invalid_argument("spike_covariance: n must be at least 1");
  const double nn = static_cast<double>(n);
  Eigen::MatrixXd r = Eigen::MatrixXd::Constant(n, n, -1.0 / (nn * nn));
  r.diagonal().array() += 1.0 / nn;
  return r;
}

bool is_klb(const Basis& basis, int n, double tol) {
  if (basis.dimension() != n) throw std::invalid_argument("is_klb: dimension mismatch");
  const Eigen::MatrixXd& b = basis.synthesis();
  if (!is_orthonormal(b, tol)) return false;

  Eigen::MatrixXd projected = b.transpose() * spike_covariance(n) * b;
  projected.diagonal().setZero();
  // Both tests are scaled so that a column at angle θ from 1_n scores ~sin θ.
  const bool diagonalizes = projected.cwiseAbs().maxCoeff() * n <= tol;

  const Eigen::VectorXd dc = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double residual = 1.0;
  for (Index j = 0; j < n; ++j) {
    const Eigen::VectorXd col = b.col(j);
    residual = std::min(residual, (dc - col.dot(dc) * col).norm());
  }
  const bool contains_dc = residual <= tol;

  if (diagonalizes != contains_dc)
    throw std::logic_error("is_klb: covariance and DC-vector characterizations disagree");
  return diagonalizes;
}

}  // namespace spikebasis
