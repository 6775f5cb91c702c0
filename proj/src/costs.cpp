#include "spikebasis/costs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "spikebasis/analytic.hpp"
#include "spikebasis/kernels.hpp"

namespace spikebasis {

std::string_view to_string(CostKind kind) {
  switch (kind) {
    case CostKind::lp: return "lp";
    case CostKind::l0: return "l0";
    case CostKind::entropy_empirical: return "entropy_empirical";
    case CostKind::entropy_exact: return "entropy_exact";
  }
  return "unknown";
}

CostKind cost_kind_from_string(std::string_view name) {
  if (name == "lp") return CostKind::lp;
  if (name == "l0") return CostKind::l0;
  if (name == "entropy_empirical") return CostKind::entropy_empirical;
  if (name == "entropy_exact" || name == "entropy") return CostKind::entropy_exact;
  throw std::invalid_argument("unknown cost kind '" + std::string(name) + "'");
}

HistogramEstimator HistogramEstimator::fixed(int m) {
  if (m < 1) throw std::invalid_argument("HistogramEstimator: bin count must be at least 1");
  return {Rule::fixed, m};
}

int HistogramEstimator::bin_count(Index samples) const {
  if (rule == Rule::fixed) return bins;
  if (samples < 1) return 1;
  auto m = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(samples))));
  // Guard against sqrt rounding just above an exact square.
  if (static_cast<Index>(m - 1) * (m - 1) >= samples) --m;
  return std::max(m, 1);
}

CostSpec CostSpec::lp(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("CostSpec::lp: p must lie in (0, 1]");
  CostSpec s;
  s.kind = CostKind::lp;
  s.p = p;
  return s;
}

CostSpec CostSpec::l0(double zero_tol) {
  if (!(zero_tol >= 0.0)) throw std::invalid_argument("CostSpec::l0: zero_tol must be non-negative");
  CostSpec s;
  s.kind = CostKind::l0;
  s.zero_tol = zero_tol;
  return s;
}

CostSpec CostSpec::entropy_exact(double rel_tol) {
  CostSpec s;
  s.kind = CostKind::entropy_exact;
  s.rel_tol = rel_tol;
  return s;
}

CostSpec CostSpec::entropy_empirical(HistogramEstimator estimator) {
  CostSpec s;
  s.kind = CostKind::entropy_empirical;
  s.estimator = estimator;
  return s;
}

double lp_sum(std::span<const double> values, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("lp_sum: p must be positive");
  double acc = 0.0;
  for (double v : values) acc += std::pow(std::abs(v), p);
  return acc;
}

double l0_count(std::span<const double> values, double zero_tol) {
  double count = 0.0;
  for (double v : values)
    if (std::abs(v) > zero_tol) count += 1.0;
  return count;
}

double additive_cost(std::span<const double> values, const CostSpec& spec) {
  switch (spec.kind) {
    case CostKind::lp: return lp_sum(values, spec.p);
    case CostKind::l0: return l0_count(values, spec.zero_tol);
    case CostKind::entropy_empirical:
    case CostKind::entropy_exact: {
      double acc = 0.0;
      for (double v : values) acc += v;
      return acc;
    }
  }
  return 0.0;
}

namespace {

void check_p(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("lp_cost: p must lie in (0, 1]");
}

void check_dimension(const Basis& basis, Index n, const char* what) {
  if (basis.dimension() != n) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

Eigen::MatrixXd transform(const Dataset& data, const Basis& basis, const char* what) {
  check_dimension(basis, data.dimension(), what);
  if (data.count() < 1) throw std::invalid_argument(std::string(what) + ": empty dataset");
  return basis.analysis() * data.samples;
}

double mean(const std::vector<double>& v) {
  return kernels::pairwise_sum(v) / static_cast<double>(v.size());
}

template <typename PerOutcome>
double expectation(const DiscreteProcess& process, const Basis& basis, PerOutcome per_outcome) {
  check_dimension(basis, process.dimension(), "expectation");
  double acc = 0.0;
  for (const Outcome& o : process.outcomes) {
    const Eigen::VectorXd y = basis.analysis() * o.value;
    acc += o.probability * per_outcome(std::span<const double>(y.data(), static_cast<std::size_t>(y.size())));
  }
  return acc;
}

}  // namespace

CostValue lp_cost(const Dataset& data, const Basis& basis, double p) {
  check_p(p);
  const Eigen::MatrixXd y = transform(data, basis, "lp_cost");
  return {mean(kernels::per_sample_lp_parallel(y, p)), CostKind::lp, {}};
}

CostValue lp_cost(const DiscreteProcess& process, const Basis& basis, double p) {
  check_p(p);
  return {expectation(process, basis, [p](std::span<const double> y) { return lp_sum(y, p); }),
          CostKind::lp, {}};
}

CostValue lp_cost(const SpikeProcess& process, const Basis& basis, double p) {
  check_p(p);
  check_dimension(basis, process.dimension(), "lp_cost");
  return {mean(kernels::per_sample_lp_parallel(basis.analysis(), p)), CostKind::lp, {}};
}

CostValue l0_cost(const Dataset& data, const Basis& basis, double zero_tol) {
  if (!(zero_tol >= 0.0)) throw std::invalid_argument("l0_cost: zero_tol must be non-negative");
  const Eigen::MatrixXd y = transform(data, basis, "l0_cost");
  return {mean(kernels::per_sample_l0_parallel(y, zero_tol)), CostKind::l0, {}};
}

CostValue l0_cost(const DiscreteProcess& process, const Basis& basis, double zero_tol) {
  if (!(zero_tol >= 0.0)) throw std::invalid_argument("l0_cost: zero_tol must be non-negative");
  return {expectation(process, basis,
                      [zero_tol](std::span<const double> y) { return l0_count(y, zero_tol); }),
          CostKind::l0, {}};
}

CostValue l0_cost(const SpikeProcess& process, const Basis& basis, double zero_tol) {
  if (!(zero_tol >= 0.0)) throw std::invalid_argument("l0_cost: zero_tol must be non-negative");
  check_dimension(basis, process.dimension(), "l0_cost");
  return {mean(kernels::per_sample_l0_parallel(basis.analysis(), zero_tol)), CostKind::l0, {}};
}

double coordinate_entropy_exact(std::span<const double> values, std::span<const double> probabilities,
                                double rel_tol) {
  if (values.size() != probabilities.size())
    throw std::invalid_argument("coordinate_entropy_exact: values and probabilities differ in length");
  double h = 0.0;
  for (const auto& cls : equality_classes(values, rel_tol)) {
    double q = 0.0;
    for (Index j : cls) q += probabilities[static_cast<std::size_t>(j)];
    if (q > 0.0) h -= q * std::log2(q);
  }
  return h;
}

CostValue entropy_exact_discrete(const SpikeProcess& process, const Basis& basis, double rel_tol) {
  const int n = process.dimension();
  check_dimension(basis, n, "entropy_exact_discrete");
  // Outcome e_j maps to column j of B⁻¹, so coordinate i takes the values of row i.
  double h = 0.0;
  for (Index i = 0; i < n; ++i) {
    const RowClassification rc = classify_row(row_values(basis.analysis(), i), rel_tol);
    h += analytic::index_entropy(rc.index, n);
  }
  return {h, CostKind::entropy_exact, {}};
}

CostValue entropy_exact_discrete(const DiscreteProcess& process, const Basis& basis, double rel_tol) {
  const Index n = process.dimension();
  check_dimension(basis, n, "entropy_exact_discrete");
  const std::size_t m = process.outcomes.size();
  Eigen::MatrixXd y(n, static_cast<Index>(m));
  std::vector<double> probabilities(m);
  for (std::size_t j = 0; j < m; ++j) {
    y.col(static_cast<Index>(j)) = basis.analysis() * process.outcomes[j].value;
    probabilities[j] = process.outcomes[j].probability;
  }
  double h = 0.0;
  for (Index i = 0; i < n; ++i) h += coordinate_entropy_exact(row_values(y, i), probabilities, rel_tol);
  return {h, CostKind::entropy_exact, {}};
}

double joint_entropy_discrete(const DiscreteProcess& process, const Basis& basis, double rel_tol) {
  check_dimension(basis, process.dimension(), "joint_entropy_discrete");
  std::vector<Eigen::VectorXd> representatives;
  std::vector<double> mass;
  for (const Outcome& o : process.outcomes) {
    const Eigen::VectorXd y = basis.analysis() * o.value;
    bool merged = false;
    for (std::size_t g = 0; g < representatives.size() && !merged; ++g) {
      bool same = true;
      for (Index i = 0; i < y.size() && same; ++i) same = values_equal(y(i), representatives[g](i), rel_tol);
      if (same) {
        mass[g] += o.probability;
        merged = true;
      }
    }
    if (!merged) {
      representatives.push_back(y);
      mass.push_back(o.probability);
    }
  }
  double h = 0.0;
  for (double q : mass)
    if (q > 0.0) h -= q * std::log2(q);
  return h;
}

double histogram_entropy(std::span<const double> values, const HistogramEstimator& estimator,
                         bool* degenerate) {
  if (values.size() < 2) throw std::invalid_argument("histogram_entropy: need at least two samples");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it, hi = *hi_it;
  if (values_equal(lo, hi)) {
    if (degenerate) *degenerate = true;
    return 0.0;
  }
  if (degenerate) *degenerate = false;
  const int m = estimator.bin_count(static_cast<Index>(values.size()));
  const double width = (hi - lo) / m;
  std::vector<long> counts(static_cast<std::size_t>(m), 0);
  for (double v : values) {
    auto b = static_cast<long>((v - lo) / width);
    counts[static_cast<std::size_t>(std::clamp(b, 0L, static_cast<long>(m) - 1))]++;
  }
  const double total = static_cast<double>(values.size());
  double h = 0.0;
  for (long c : counts) {
    if (c == 0) continue;
    const double q = static_cast<double>(c) / total;
    h -= q * std::log2(q / width);
  }
  return h;
}

CostValue entropy_empirical(const Dataset& data, const Basis& basis, const HistogramEstimator& estimator) {
  if (data.count() < 2) throw std::invalid_argument("entropy_empirical: need at least two samples");
  const Eigen::MatrixXd y = transform(data, basis, "entropy_empirical");
  CostValue out{0.0, CostKind::entropy_empirical, {}};
  for (Index i = 0; i < y.rows(); ++i) {
    bool degenerate = false;
    out.value += histogram_entropy(row_values(y, i), estimator, &degenerate);
    if (degenerate) out.degenerate.push_back(i);
  }
  return out;
}

double mutual_information_spike(const Basis& basis, int n, double rel_tol) {
  return entropy_exact_discrete(SpikeProcess(n), basis, rel_tol).value - std::log2(static_cast<double>(n));
}

}  // namespace spikebasis
