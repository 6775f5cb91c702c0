#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace spikebasis::analytic {

/// Binary entropy in bits, −[x log x + (1−x) log(1−x)], with 0·log 0 = 0.
double f(double x);

/// −[x log(x/2) + (1−x) log(1−x)]; equals f(x) + x.
double g(double x);

/// Entropy of one coefficient of the positive node at level k: f(2^k / 2^n0).
double h_plus(int k, int n0);
/// Entropy of one coefficient of a negative node at level k: g(2^k / 2^n0).
double h_minus(int k, int n0);

/// x·[(2/x) f(1/x) − (f(2/x) − f(1/x))] for x ≥ 2.
double r(double x);

/// The zero of r, by bisection on [5, 6].
double r_root(double tol = 1e-9);

/// (1−x)^p + (2/x − 1) x^p: Householder C_p with x = 2/n.
double s_p(double x, double p);

/// (n−2) log n − ((n−1)²/n) log(n−1): mutual information of the
/// two-class GL basis pair. Real-valued x ≥ 2 is accepted for plotting.
double gl_mutual_information(double x);
/// Same quantity in nats.
double gl_mutual_information_nats(double x);

/// (n−1) log(n/(n−1)): mutual information under the standard basis.
double og_mutual_information(double x);

/// n log n − (n−1) log(n−1) = n·f(1/n).
double standard_basis_cost(int n);

/// Lower bound on the entropy of a row with `class_k` distinct values.
double entropy_lower_bound(int class_k, int n);

/// −Σ (α/n) log(α/n) for a multiset of multiplicities summing to n.
double index_entropy(std::span<const int> index, int n);

struct CurvePoint {
  double x = 0.0;
  double value = 0.0;
};

inline constexpr double kCurveStep = 1e-3;

/// Names accepted by curve(): f, g, gg2 (g(x) − g(2x)), h (ln 2 × h), r, s_p.
std::vector<std::string_view> curve_names();

/// Samples a named function on its plotting domain with step kCurveStep.
/// `p` is only used by s_p.
std::vector<CurvePoint> curve(std::string_view name, double p = 0.5);

}  // namespace spikebasis::analytic
