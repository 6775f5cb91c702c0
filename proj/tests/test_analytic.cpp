#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "spikebasis/analytic.hpp"

namespace an = spikebasis::analytic;

TEST_CASE("binary entropy and its shifted form") {
  CHECK(an::f(0.5) == 1.0);
  CHECK(an::f(0.0) == 0.0);
  CHECK(an::f(1.0) == 0.0);
  CHECK(an::g(1.0) == 1.0);
  CHECK(an::g(0.5) == 1.5);
  CHECK(an::f(0.125) == doctest::Approx(oracle::f_1_8).epsilon(1e-15));
  CHECK(an::f(0.2) == doctest::Approx(oracle::f_1_5).epsilon(1e-15));
  CHECK_THROWS(an::f(1.5));
}

TEST_CASE("standard basis cost") {
  CHECK(std::abs(an::standard_basis_cost(8) - oracle::cost_standard_8) < 1e-13);
  CHECK(std::abs(an::standard_basis_cost(5) - oracle::cost_standard_5) < 1e-13);
  CHECK(std::abs(an::standard_basis_cost(4) - oracle::cost_standard_4) < 1e-13);
  CHECK(std::abs(an::standard_basis_cost(3) - oracle::cost_standard_3) < 1e-13);
  for (int n = 2; n <= 200; ++n) CHECK(std::abs(an::standard_basis_cost(n) - n * an::f(1.0 / n)) < 1e-12);
}

TEST_CASE("crossover function r") {
  CHECK(std::abs(an::r(5.0) - oracle::r_5) < 1e-13);
  CHECK(std::abs(an::r(6.0) - oracle::r_6) < 1e-13);
  CHECK(std::abs(an::r_root() - oracle::r_root) < 1e-8);
  CHECK(std::abs(an::r_root(1e-12) - oracle::r_root) < 1e-11);
}

TEST_CASE("lp cost of the Householder reflection") {
  CHECK(an::s_p(2.0 / 8, 0.5) == doctest::Approx(oracle::householder8_c_half).epsilon(1e-14));
  for (int n : {3, 10, 64}) CHECK(std::abs(an::s_p(2.0 / n, 1.0) - (3.0 - 4.0 / n)) < 1e-13);
  CHECK(an::s_p(2.0 / 1000, 0.5) < an::s_p(2.0 / 10000, 0.5));
}

TEST_CASE("mutual information sequences") {
  CHECK(an::gl_mutual_information(2.0) == 0.0);
  CHECK(std::abs(an::gl_mutual_information(3.0) - oracle::h_3) < 1e-13);
  CHECK(std::abs(an::gl_mutual_information(1e6) - oracle::gl_mi_1e6) < 1e-12);
  CHECK(std::abs(an::og_mutual_information(1e6) - oracle::log2_e) < 1e-3);
  CHECK(std::abs(an::gl_mutual_information_nats(1e6) - oracle::gl_mi_1e6 * std::log(2.0)) < 1e-12);
  // Walsh basis at n = 2 is independent; n log2 n − H(Y) for OG at n = 4 (standard cost − 2).
  CHECK(std::abs(an::og_mutual_information(4.0) - (oracle::cost_standard_4 - 2.0)) < 1e-13);
}

TEST_CASE("entropy lower bound and index entropy") {
  CHECK(std::abs(an::entropy_lower_bound(3, 8) - oracle::lower_bound_3_8) < 1e-13);
  const std::vector<int> spread{1, 1, 6};
  CHECK(std::abs(an::index_entropy(spread, 8) - oracle::min_entropy_3_parts_of_8) < 1e-13);
  CHECK(an::index_entropy(spread, 8) >= an::entropy_lower_bound(3, 8));
  const std::vector<int> halves{2, 2};
  CHECK(an::index_entropy(halves, 4) == 1.0);
  const std::vector<int> whole{5};
  CHECK(an::index_entropy(whole, 5) == 0.0);
  const std::vector<int> short_sum{1, 2};
  CHECK_THROWS(an::index_entropy(short_sum, 4));
}

TEST_CASE("curve tables") {
  CHECK(an::curve_names().size() == 6);
  const auto f = an::curve("f");
  double best = 0.0, at = 0.0;
  for (const auto& p : f)
    if (p.value > best) best = p.value, at = p.x;
  CHECK(at == doctest::Approx(0.5));
  CHECK(best == doctest::Approx(1.0));

  const auto gg2 = an::curve("gg2");
  double crossing = -1.0;
  for (std::size_t i = 1; i < gg2.size(); ++i)
    if (gg2[i - 1].value * gg2[i].value <= 0.0 && gg2[i - 1].x > 0.1) crossing = gg2[i].x;
  CHECK(std::abs(crossing - oracle::gg2_root) < 2e-3);

  const auto h = an::curve("h");
  CHECK(h.front().x == 2.0);
  CHECK(std::abs(h.front().value) < 1e-15);
  CHECK(h.back().x == doctest::Approx(52.0));
  CHECK(std::abs(h.back().value - oracle::ln2_gl_mi_52) < 1e-12);
  bool rising = true;
  for (std::size_t i = 1; i < h.size(); ++i) rising = rising && h[i].value > h[i - 1].value && h[i].value < 1.0;
  CHECK(rising);
  for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i].x - h[i - 1].x == doctest::Approx(an::kCurveStep));
  CHECK_THROWS(an::curve("nope"));
}
