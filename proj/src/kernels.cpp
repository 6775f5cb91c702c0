#include "spikebasis/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <stdexcept>

namespace spikebasis::kernels {

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

double column_lp(const Eigen::MatrixXd& m, Index k, double p) {
  double acc = 0.0;
  for (Index i = 0; i < m.rows(); ++i) acc += std::pow(std::abs(m(i, k)), p);
  return acc;
}

double column_l0(const Eigen::MatrixXd& m, Index k, double zero_tol) {
  double count = 0.0;
  for (Index i = 0; i < m.rows(); ++i)
    if (std::abs(m(i, k)) > zero_tol) count += 1.0;
  return count;
}

bool better(double cost, std::uint64_t ordinal, double best_cost, std::uint64_t best_ordinal) {
  return cost < best_cost || (cost == best_cost && ordinal < best_ordinal);
}

void check_costs(std::span<const double> node_costs, int max_level) {
  if (max_level < 0) throw std::invalid_argument("scan_covers: negative depth");
  if (node_costs.size() != flat_node_count(max_level))
    throw std::invalid_argument("scan_covers: node cost array has the wrong size");
}

double cover_cost_at(std::span<const double> costs, int level, int index, int remaining,
                     std::uint64_t ordinal) {
  if (ordinal == 0) return costs[flat_node_index(level, index)];
  const std::uint64_t child_count = tree_basis_count(remaining - 1);
  const std::uint64_t rest = ordinal - 1;
  return cover_cost_at(costs, level + 1, 2 * index, remaining - 1, rest / child_count) +
         cover_cost_at(costs, level + 1, 2 * index + 1, remaining - 1, rest % child_count);
}

}  // namespace

std::vector<double> per_sample_lp_serial(const Eigen::MatrixXd& coefficients, double p) {
  std::vector<double> out(static_cast<std::size_t>(coefficients.cols()));
  for (Index k = 0; k < coefficients.cols(); ++k) out[static_cast<std::size_t>(k)] = column_lp(coefficients, k, p);
  return out;
}

std::vector<double> per_sample_lp_parallel(const Eigen::MatrixXd& coefficients, double p) {
  std::vector<double> out(static_cast<std::size_t>(coefficients.cols()));
  const Index cols = coefficients.cols();
#pragma omp parallel for schedule(static)
  for (Index k = 0; k < cols; ++k) out[static_cast<std::size_t>(k)] = column_lp(coefficients, k, p);
  return out;
}

std::vector<double> per_sample_l0_serial(const Eigen::MatrixXd& coefficients, double zero_tol) {
  std::vector<double> out(static_cast<std::size_t>(coefficients.cols()));
  for (Index k = 0; k < coefficients.cols(); ++k)
    out[static_cast<std::size_t>(k)] = column_l0(coefficients, k, zero_tol);
  return out;
}

std::vector<double> per_sample_l0_parallel(const Eigen::MatrixXd& coefficients, double zero_tol) {
  std::vector<double> out(static_cast<std::size_t>(coefficients.cols()));
  const Index cols = coefficients.cols();
#pragma omp parallel for schedule(static)
  for (Index k = 0; k < cols; ++k)
    out[static_cast<std::size_t>(k)] = column_l0(coefficients, k, zero_tol);
  return out;
}

std::vector<DictionaryTable> analyze_batch_serial(const Eigen::MatrixXd& samples, int max_level) {
  std::vector<DictionaryTable> out;
  out.reserve(static_cast<std::size_t>(samples.cols()));
  for (Index k = 0; k < samples.cols(); ++k)
    out.push_back(analyze(Eigen::VectorXd(samples.col(k)), max_level));
  return out;
}

std::vector<DictionaryTable> analyze_batch_parallel(const Eigen::MatrixXd& samples, int max_level) {
  const Index cols = samples.cols();
  if (cols == 0) return {};
  // DictionaryTable has no default state, so fill optionals and unwrap.
  std::vector<std::optional<DictionaryTable>> slots(static_cast<std::size_t>(cols));
  std::exception_ptr error;
#pragma omp parallel for schedule(static)
  for (Index k = 0; k < cols; ++k) {
    try {
      slots[static_cast<std::size_t>(k)].emplace(analyze(Eigen::VectorXd(samples.col(k)), max_level));
    } catch (...) {
#pragma omp critical(spikebasis_analyze_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  std::vector<DictionaryTable> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

double cover_cost(std::span<const double> node_costs, int max_level, std::uint64_t ordinal) {
  check_costs(node_costs, max_level);
  if (ordinal >= tree_basis_count(max_level)) throw std::out_of_range("cover_cost: ordinal out of range");
  return cover_cost_at(node_costs, 0, 0, max_level, ordinal);
}

CoverMinimum scan_covers_serial(std::span<const double> node_costs, int max_level) {
  check_costs(node_costs, max_level);
  const std::uint64_t total = tree_basis_count(max_level);
  CoverMinimum best{0, cover_cost_at(node_costs, 0, 0, max_level, 0), total};
  for (std::uint64_t i = 1; i < total; ++i) {
    const double c = cover_cost_at(node_costs, 0, 0, max_level, i);
    if (better(c, i, best.cost, best.ordinal)) {
      best.cost = c;
      best.ordinal = i;
    }
  }
  return best;
}

CoverMinimum scan_covers_parallel(std::span<const double> node_costs, int max_level) {
  check_costs(node_costs, max_level);
  const std::uint64_t total = tree_basis_count(max_level);
  CoverMinimum best{0, cover_cost_at(node_costs, 0, 0, max_level, 0), total};
#pragma omp parallel
  {
    CoverMinimum local = best;
#pragma omp for schedule(static) nowait
    for (std::uint64_t i = 1; i < total; ++i) {
      const double c = cover_cost_at(node_costs, 0, 0, max_level, i);
      if (better(c, i, local.cost, local.ordinal)) {
        local.cost = c;
        local.ordinal = i;
      }
    }
#pragma omp critical(spikebasis_scan_covers)
    if (better(local.cost, local.ordinal, best.cost, best.ordinal)) {
      best.cost = local.cost;
      best.ordinal = local.ordinal;
    }
  }
  return best;
}

TrialMinimum min_over_trials_serial(int count, const std::function<double(int)>& trial) {
  TrialMinimum best;
  for (int t = 0; t < count; ++t) {
    const double v = trial(t);
    if (best.trial < 0 || v < best.value) best = {t, v};
  }
  return best;
}

TrialMinimum min_over_trials_parallel(int count, const std::function<double(int)>& trial) {
  std::vector<double> values(static_cast<std::size_t>(std::max(count, 0)));
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < count; ++t) {
    try {
      values[static_cast<std::size_t>(t)] = trial(t);
    } catch (...) {
#pragma omp critical(spikebasis_trial_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  TrialMinimum best;
  for (int t = 0; t < count; ++t)
    if (best.trial < 0 || values[static_cast<std::size_t>(t)] < best.value)
      best = {t, values[static_cast<std::size_t>(t)]};
  return best;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace spikebasis::kernels
