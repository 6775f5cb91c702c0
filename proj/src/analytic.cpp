#include "spikebasis/analytic.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace spikebasis::analytic {

namespace {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

void require_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error(std::string(what) + ": x must lie in [0, 1]");
}

}  // namespace

double f(double x) {
  require_unit_interval(x, "f");
  return -(xlog2x(x) + xlog2x(1.0 - x));
}

double g(double x) {
  require_unit_interval(x, "g");
  const double direct = -((x > 0.0 ? x * std::log2(x / 2.0) : 0.0) + xlog2x(1.0 - x));
  if (std::abs(direct - (f(x) + x)) > 1e-12)
    throw std::logic_error("g: explicit formula disagrees with f(x) + x");
  return direct;
}

double h_plus(int k, int n0) {
  if (k < 0 || k > n0) throw std::invalid_argument("h_plus: need 0 <= k <= n0");
  return f(std::ldexp(1.0, k - n0));
}

double h_minus(int k, int n0) {
  if (k < 0 || k > n0) throw std::invalid_argument("h_minus: need 0 <= k <= n0");
  return g(std::ldexp(1.0, k - n0));
}

double r(double x) {
  if (!(x >= 2.0)) throw std::domain_error("r: x must be at least 2");
  return x * ((2.0 / x) * f(1.0 / x) - (f(2.0 / x) - f(1.0 / x)));
}

double r_root(double tol) {
  double lo = 5.0, hi = 6.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (r(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double s_p(double x, double p) {
  if (!(x > 0.0 && x <= 1.0)) throw std::domain_error("s_p: x must lie in (0, 1]");
  if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("s_p: p must lie in (0, 1]");
  return std::pow(1.0 - x, p) + (2.0 / x - 1.0) * std::pow(x, p);
}

double gl_mutual_information(double x) {
  if (!(x >= 2.0)) throw std::domain_error("gl_mutual_information: n must be at least 2");
  if (x <= 1024.0)
    return (x - 2.0) * std::log2(x) - ((x - 1.0) * (x - 1.0) / x) * std::log2(x - 1.0);
  // Writing log(n−1) = log n + log1p(−1/n) cancels the two large terms exactly.
  return -std::log2(x) / x - ((x - 1.0) * (x - 1.0) / x) * std::log1p(-1.0 / x) / std::numbers::ln2;
}

double gl_mutual_information_nats(double x) { return std::numbers::ln2 * gl_mutual_information(x); }

double og_mutual_information(double x) {
  if (!(x >= 2.0)) throw std::domain_error("og_mutual_information: n must be at least 2");
  return -(x - 1.0) * std::log1p(-1.0 / x) / std::numbers::ln2;
}

double standard_basis_cost(int n) {
  if (n < 2) throw std::domain_error("standard_basis_cost: n must be at least 2");
  const double nn = n;
  return std::log2(nn) - (nn - 1.0) * std::log1p(-1.0 / nn) / std::numbers::ln2;
}

double entropy_lower_bound(int class_k, int n) {
  if (n < 1 || class_k < 1 || class_k > n)
    throw std::invalid_argument("entropy_lower_bound: need 1 <= class_k <= n");
  if (class_k == 1) return 0.0;
  const double base = f(1.0 / n);
  if (class_k == 2) return base;
  return (1.0 + 2.0 * (class_k - 2) / n) * base;
}

double index_entropy(std::span<const int> index, int n) {
  if (n < 1) throw std::invalid_argument("index_entropy: n must be positive");
  long long total = 0;
  for (int a : index) {
    if (a < 1) throw std::invalid_argument("index_entropy: multiplicities must be positive");
    total += a;
  }
  if (total != n) throw std::invalid_argument("index_entropy: multiplicities must sum to n");
  double h = 0.0;
  for (int a : index) h -= xlog2x(static_cast<double>(a) / n);
  return h;
}

std::vector<std::string_view> curve_names() { return {"f", "g", "gg2", "h", "r", "s_p"}; }

std::vector<CurvePoint> curve(std::string_view name, double p) {
  double lo = 0.0, hi = 1.0;
  double (*fn)(double, double) = nullptr;
  if (name == "f") {
    fn = [](double x, double) { return f(x); };
  } else if (name == "g") {
    fn = [](double x, double) { return g(x); };
  } else if (name == "gg2") {
    hi = 0.5;
    fn = [](double x, double) { return g(x) - g(2.0 * x); };
  } else if (name == "h") {
    lo = 2.0;
    hi = 52.0;
    fn = [](double x, double) { return gl_mutual_information_nats(x); };
  } else if (name == "r") {
    lo = 2.0;
    hi = 10.0;
    fn = [](double x, double) { return r(x); };
  } else if (name == "s_p") {
    lo = kCurveStep;
    fn = [](double x, double q) { return s_p(x, q); };
  } else {
    throw std::invalid_argument("curve: unknown function '" + std::string(name) + "'");
  }
  const auto steps = static_cast<long>(std::lround((hi - lo) / kCurveStep));
  std::vector<CurvePoint> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  for (long i = 0; i <= steps; ++i) {
    const double x = i == steps ? hi : lo + static_cast<double>(i) * kCurveStep;
    out.push_back({x, fn(x, p)});
  }
  return out;
}

}  // namespace spikebasis::analytic
