#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ldcm/io.hpp"

using namespace ldcm;

TEST_SUITE("io") {
  TEST_CASE("distribution round trip") {
    const auto p = DegreeDistribution::from_map({{1, 0.25}, {3, 0.75}});
    const auto back = io::distribution_from_json(io::distribution_to_json(p));
    CHECK(back[1] == 0.25);
    CHECK(back[3] == 0.75);
    const auto bare = io::distribution_from_json(io::json::parse(R"({"2": 0.5, "4": 0.5})"));
    CHECK(bare[4] == 0.5);
    CHECK_THROWS(io::distribution_from_json(io::json::parse(R"({"degrees": {"x": 1}})")));
  }

  TEST_CASE("state round trip") {
    const StatePoint x{0.125, Profile::from_map({{2, 0.3}, {5, 0.1}})};
    const StatePoint y = io::state_from_json(io::state_to_json(x));
    CHECK(y.x0 == x.x0);
    CHECK(y.xk[2] == 0.3);
    CHECK(y.xk[5] == 0.1);
  }

  TEST_CASE("degree input") {
    const auto seq = io::degree_input_from_json(io::json::parse("[1, 1, 2]"));
    CHECK(std::holds_alternative<DegreeSequence>(seq));
    const auto dist = io::degree_input_from_json(io::json::parse(R"({"degrees": {"3": 1}})"));
    CHECK(std::holds_alternative<DegreeDistribution>(dist));
  }

  TEST_CASE("estimate round trip") {
    EstimateResult r;
    r.p_hat = 0.0123;
    r.ci_low = 0.01;
    r.ci_high = 0.015;
    r.reps = 1000;
    r.hits = 12;
    r.n = 16;
    r.seed = 42;
    r.eps = 0.01;
    r.per_n_rate = -std::log(0.0123) / 16;
    CHECK(io::estimate_from_json(io::to_json(r)) == r);
    r.hits = 0;
    r.p_hat = 0.0;
    r.per_n_rate = std::numeric_limits<double>::infinity();
    const auto j = io::to_json(r);
    CHECK(j["per_n_rate"].is_null());
    CHECK(std::isinf(io::estimate_from_json(j).per_n_rate));
    CHECK(io::estimate_csv_header() == "n,p_hat,ci_low,ci_high,per_n_rate");
  }

  TEST_CASE("path CSV round trip") {
    FluidPath path;
    for (int i = 0; i < 20; ++i) {
      const double t = i / 19.0;
      path.t.push_back(t);
      path.zeta.push_back({0.1 * t, 1.0 / 3.0 - t / 7.0, std::exp(-t)});
      path.psi.push_back(std::sin(t) / 3.0);
    }
    std::stringstream ss;
    io::write_path_csv(ss, path);
    const FluidPath back = io::read_path_csv(ss);
    REQUIRE(back.size() == path.size());
    for (std::size_t i = 0; i < path.size(); ++i) {
      CHECK(back.t[i] == path.t[i]);
      CHECK(back.psi[i] == path.psi[i]);
      for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(back.zeta[i][k] - path.zeta[i][k]) <= 1e-15);
    }
    std::stringstream junk("t,zeta_0,psi\n1,abc,2\n");
    CHECK_THROWS_AS(io::read_path_csv(junk), io::FormatError);
  }

  TEST_CASE("shortest round-trip formatting") {
    CHECK(io::format_double(0.1) == "0.1");
    CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
  }
}
