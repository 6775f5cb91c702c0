#include "doctest.h"

#include <sstream>

#include "spikebasis/io.hpp"

using namespace spikebasis;

TEST_CASE("numbers carry twelve significant digits") {
  CHECK(io::format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(io::format_number(0.0) == "0");
  CHECK(io::format_number(-0.0) == "0");
  CHECK(io::format_number(4.348515545596771) == "4.3485155456");
  CHECK(io::round_sig(2.0 / 3.0) == 0.666666666667);
}

TEST_CASE("dataset csv round trip") {
  const Dataset d = sample_multispike(4, 2, 5, 8);
  std::stringstream s;
  io::write_dataset_csv(s, d);
  const Dataset back = io::read_dataset_csv(s);
  CHECK(back.samples == d.samples);

  std::stringstream ragged("1,0\n0,1,0\n");
  CHECK_THROWS(io::read_dataset_csv(ragged));
  std::stringstream junk("1,x\n");
  CHECK_THROWS(io::read_dataset_csv(junk));
}

TEST_CASE("json shapes") {
  const auto b = io::to_json(householder_dc(3));
  CHECK(b["group_tag"] == "orthonormal");
  CHECK(b["matrix"].size() == 3);
  const auto t = io::to_json(TreeBasis::level(2, 1));
  CHECK(t.size() == 2);
  CHECK(t[1] == nlohmann::json::array({1, 1}));
  const auto r = io::to_json(best_basis_exact_spike(2, CostSpec::entropy_exact()));
  CHECK(r["total_cost"] == 3);
  CHECK(io::covariance_json(3)["matrix"].size() == 3);
}

TEST_CASE("curve csv header") {
  std::stringstream s;
  io::write_curve_csv(s, "f", analytic::curve("f"));
  std::string first, second;
  std::getline(s, first);
  std::getline(s, second);
  CHECK(first == "# f step=0.001");
  CHECK(second == "x,value");
}
