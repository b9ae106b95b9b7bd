#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ldcm/errors.hpp"
#include "ldcm/lln.hpp"
#include "ldcm/optimal_path.hpp"
#include "ldcm/quadrature.hpp"
#include "ldcm/rates.hpp"
#include "ldcm/verify.hpp"

using namespace ldcm;

namespace {

StatePoint S(double x0, std::map<int, double> m) { return {x0, Profile::from_map(m)}; }

}  // namespace

TEST_SUITE("optimal_path") {
  TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
    const GaussRule& g = gauss_legendre(64);
    double w = 0.0, x2 = 0.0, x126 = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      w += g.weights[i];
      x2 += g.weights[i] * g.nodes[i] * g.nodes[i];
      x126 += g.weights[i] * std::pow(g.nodes[i], 126);
    }
    CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(x2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(x126 == doctest::Approx(2.0 / 127.0).epsilon(1e-12));
    const double logint = integrate_panels([](double x) { return std::log(x); }, 0.0, 1.0, graded_breaks(0.0, 1.0));
    // integrable endpoint singularity, resolved down to the smallest panel
    CHECK(std::abs(logint + 1.0) <= 1e-9);
  }

  TEST_CASE("Skorokhod map") {
    const std::vector<double> pos = {0.0, 0.5, 0.2, 1.0};
    CHECK(skorokhod_map(pos) == pos);
    const std::vector<double> down = {0.0, -1.0, -2.0, -3.0};
    for (double v : skorokhod_map(down)) CHECK(v == 0.0);
    std::vector<double> zig;
    for (int i = 0; i <= 200; ++i) {
      const double t = i / 100.0;
      zig.push_back(t <= 1.0 ? -t : -1.0 + 2.0 * (t - 1.0));
    }
    CHECK(skorokhod_map(zig).back() == doctest::Approx(2.0));
    const std::vector<double> bad = {0.1, 0.0};
    CHECK_THROWS_AS(skorokhod_map(bad), PreconditionError);
  }

  TEST_CASE("Skorokhod map is nonnegative and 2-Lipschitz") {
    std::mt19937_64 gen(8);
    std::normal_distribution<double> step(0.0, 0.1);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> a{0.0}, b{0.0};
      for (int i = 0; i < 100; ++i) {
        a.push_back(a.back() + step(gen));
        b.push_back(a.back() + 0.05 * step(gen));
      }
      const auto ga = skorokhod_map(a), gb = skorokhod_map(b);
      double sup_in = 0.0, sup_out = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(ga[i] >= 0.0);
        sup_in = std::max(sup_in, std::abs(a[i] - b[i]));
        sup_out = std::max(sup_out, std::abs(ga[i] - gb[i]));
      }
      CHECK(sup_out <= 2.0 * sup_in + 1e-15);
    }
  }

  TEST_CASE("varsigma") {
    CHECK(varsigma(S(0, {{3, 1.0}}), S(0, {{3, 0.5}})) == doctest::Approx(0.75));
    CHECK(varsigma(S(0.2, {{3, 1.0}}), S(0.2, {{3, 1.0}})) == 0.0);
  }

  TEST_CASE("beta for segments") {
    const auto i = beta_general(S(0, {{3, 1.0}}), S(0, {{3, 0.5}}));
    CHECK(i.beta == 0.0);
    CHECK(i.segment_case == SegmentCase::case_i);
    const auto ii = beta_general(S(0, {{1, 0.5}, {3, 0.5}}), S(0, {{1, 0.4}, {3, 0.2}}));
    CHECK(std::abs(ii.beta - (4.0 - std::sqrt(15.0))) <= 1e-12);
    const auto x0 = beta_general(S(1.0, {{3, 1.0}}), S(0.5, {{3, 0.5}}));
    CHECK(x0.segment_case == SegmentCase::case_ii);
    CHECK(std::abs(x0.beta - 0.5218479361478246) <= 1e-12);
    CHECK(std::abs(segment_beta_equation(S(1.0, {{3, 1.0}}), S(0.5, {{3, 0.5}}), x0.beta)) <= 1e-12);
    // x2.x0 > 0 without edge excess
    CHECK_THROWS_AS(beta_general(S(0, {{2, 1.0}}), S(0.1, {{2, 0.9}})), FeasibilityError);
  }

  TEST_CASE("beta is continuous") {
    const StatePoint a1 = S(1.0, {{1, 0.2}, {3, 1.0}}), a2 = S(0.5, {{1, 0.1}, {3, 0.5}});
    const double b = beta_general(a1, a2).beta;
    double prev_gap = 1.0;
    for (double h : {1e-2, 1e-4, 1e-6, 1e-8}) {
      const double bn = beta_general(S(1.0 + h, {{1, 0.2}, {3, 1.0 - h}}), S(0.5 - h, {{1, 0.1 + h}, {3, 0.5}})).beta;
      const double gap = std::abs(bn - b);
      CHECK(gap <= prev_gap + 1e-15);
      prev_gap = gap;
    }
    CHECK(prev_gap <= 1e-6);
  }

  TEST_CASE("minimizer endpoints and interior values") {
    const PathSegmentSpec spec = make_segment(S(0, {{3, 1.0}}), S(0, {{3, 0.5}}));
    CHECK(spec.varsigma == doctest::Approx(0.75));
    CHECK(spec.varsigma_tilde == doctest::Approx(0.75));
    const auto traj = minimizer_trajectory(spec);
    CHECK(traj(0.0).zeta[3] == 1.0);
    CHECK(traj(0.375).zeta[3] == doctest::Approx(1.0 - 0.5 * (1.0 - std::pow(0.5, 1.5))).epsilon(1e-14));
    CHECK(traj(0.375).zeta[0] == doctest::Approx(0.2196699141100894).epsilon(1e-12));
    CHECK(traj(0.75).zeta[3] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(traj(0.75).zeta[0]) <= 1e-15);
  }

  TEST_CASE("minimizer invariants over the battery") {
    for (const auto& [x1, x2] : verify::segment_battery(25, 7)) {
      const PathSegmentSpec spec = make_segment(x1, x2, 0.3);
      double zt = x1.x0;
      for (int k = 1; k <= x1.xk.max_degree(); ++k) {
        zt += k * (x1.xk[k] - x2.xk[k]) / (1.0 - std::pow(spec.beta, k));
      }
      CHECK(spec.varsigma <= spec.varsigma_tilde + 1e-15);
      CHECK(spec.varsigma_tilde == doctest::Approx(0.5 * zt).epsilon(1e-10));
      const auto traj = minimizer_trajectory(spec);
      const PathPoint end = traj(spec.t1 + spec.varsigma);
      CHECK(end.zeta[0] == doctest::Approx(x2.x0).epsilon(1e-10));
      for (int k = 1; k <= x1.xk.max_degree(); ++k) CHECK(std::abs(end.zeta[k] - x2.xk[k]) <= 1e-12);
      const FluidPath grid = minimizer_path(spec, [&] {
        auto g = uniform_grid(spec.varsigma, 1001);
        for (double& t : g) t += spec.t1;
        return g;
      }());
      for (std::size_t i = 1; i < grid.size(); ++i) {
        const double slope = (grid.r(i) - grid.r(i - 1)) / (grid.t[i] - grid.t[i - 1]);
        CHECK(std::abs(slope + 2.0) <= 1e-8);
        if (spec.segment_case == SegmentCase::case_ii && i + 1 < grid.size()) CHECK(grid.zeta[i][0] > 0.0);
      }
    }
  }

  TEST_CASE("local rate") {
    const StatePoint x = S(0.3, {{1, 0.2}, {3, 0.4}});
    LocalVelocity lln;
    lln.betak = {0.0, -x.rk(1), 0.0, -x.rk(3)};
    CHECK(std::abs(local_rate_L(x, lln)) <= 1e-15);
    CHECK(local_rate_L(S(0, {}), LocalVelocity{}) == 0.0);
    LocalVelocity idle;
    idle.betak = {0.0, 0.0, 0.0, 0.0};
    CHECK(local_rate_L(x, idle) == doctest::Approx(std::log(1.0 / x.r0())));
    LocalVelocity bad;
    bad.betak = {0.0, -0.7, 0.0, -0.6};
    CHECK(local_rate_L(x, bad) == kInfinity);
    LocalVelocity charge;
    charge.betak = {0.0, 0.0, -0.1};
    CHECK(local_rate_L(x, charge) == kInfinity);

    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
      const StatePoint y = S(u(gen), {{1, u(gen)}, {2, u(gen)}, {4, u(gen)}});
      LocalVelocity v;
      const double a = u(gen), b = u(gen), c = u(gen), total = a + b + c + u(gen);
      v.betak = {0.0, -a / total, -b / total, 0.0, -c / total};
      CHECK(local_rate_L(y, v) >= -1e-15);
    }
  }

  TEST_CASE("path cost of the minimizer matches the closed form") {
    const PathSegmentSpec spec = make_segment(S(0, {{3, 1.0}}), S(0, {{3, 0.5}}));
    const PathCost c = path_cost(minimizer_trajectory(spec), 0.0, 0.75);
    CHECK(std::abs(c.cost - 0.5 * std::numbers::ln2) <= 1e-9);
    CHECK(path_cost(minimizer_trajectory(spec), 0.4, 0.4).cost == 0.0);
    for (const auto& [x1, x2] : verify::segment_battery(25, 99)) {
      const PathSegmentSpec sp = make_segment(x1, x2);
      const double quad = path_cost(minimizer_trajectory(sp), 0.0, sp.varsigma).cost;
      CHECK(std::abs(quad - cost_closed_form(x1, x2).cost) <= 1e-8);
    }
  }

  TEST_CASE("closed form cost") {
    CHECK(std::abs(cost_closed_form(S(0, {{3, 1.0}}), S(0, {{3, 0.5}})).cost - 0.3465735902799727) <= 1e-14);
    const auto x0 = cost_closed_form(S(1.0, {{3, 1.0}}), S(0.5, {{3, 0.5}}));
    CHECK(std::abs(x0.cost - 0.1266976139364997) <= 1e-12);
    CHECK(cost_closed_form(S(0, {{3, 0.4}}), S(0, {{3, 0.4}})).cost == 0.0);
    const auto p = DegreeDistribution::from_map({{1, 0.5}, {3, 0.5}});
    const auto q = Profile::from_map({{1, 0.1}, {3, 0.3}});
    const double closed = cost_closed_form({0.0, p.weights()}, {0.0, Profile::clamped_difference(p.weights(), q)}).cost;
    CHECK(std::abs(closed - rate_component_degree(p, q).I1) <= 1e-12);
  }

  TEST_CASE("pace violations are rejected") {
    const auto p = DegreeDistribution::from_map({{1, 0.5}, {3, 0.5}});
    const auto s = lln_summary(p);
    // past tau zeta_0 stays at 0 while r slows down
    CHECK_THROWS_AS(path_cost(lln_trajectory(p), s.tau, s.tau + 0.1), PreconditionError);
  }

  TEST_CASE("fluid limit costs nothing") {
    const auto p = DegreeDistribution::from_map({{1, 0.5}, {3, 0.5}});
    const auto s = lln_summary(p);
    CHECK(std::abs(path_cost(lln_trajectory(p), 0.0, s.tau).cost) <= 1e-6);
    const FluidPath grid = lln_path(p, uniform_grid(1.2, 20001));
    const PathCost gc = path_cost(grid, 0.0, 0.5);
    CHECK(std::abs(gc.cost) <= 1e-5);
  }

  TEST_CASE("time change") {
    const auto p = DegreeDistribution::from_map({{1, 0.5}, {3, 0.5}});
    const auto s = lln_summary(p);
    const FluidPath path = lln_path(p, uniform_grid(1.0, 1001));
    const FluidPath same = normalize_time_change(path, 0.0, 0.8);
    REQUIRE(same.size() == path.size());
    for (std::size_t i = 0; i < path.size(); ++i) CHECK(std::abs(same.t[i] - path.t[i]) <= 1e-9);

    // insert a plateau of constant state after t = 0.4
    FluidPath stalled;
    for (std::size_t i = 0; i < path.size(); ++i) {
      const double t = path.t[i];
      if (t <= 0.4) {
        stalled.t.push_back(t);
        stalled.zeta.push_back(path.zeta[i]);
        stalled.psi.push_back(path.psi[i]);
      }
    }
    const std::size_t cut = stalled.size();
    for (int j = 1; j <= 50; ++j) {
      stalled.t.push_back(0.4 + j * 0.002);
      stalled.zeta.push_back(stalled.zeta[cut - 1]);
      stalled.psi.push_back(stalled.psi[cut - 1]);
    }
    for (std::size_t i = cut; i < path.size(); ++i) {
      stalled.t.push_back(path.t[i] + 0.1);
      stalled.zeta.push_back(path.zeta[i]);
      stalled.psi.push_back(path.psi[i]);
    }
    const FluidPath fixed = normalize_time_change(stalled, 0.0, 0.9);
    REQUIRE(fixed.size() == path.size());
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (path.t[i] > s.tau - 0.1) break;
      CHECK(std::abs(fixed.t[i] - path.t[i]) <= 1e-9);
    }
    CHECK(fixed.zeta.front() == path.zeta.front());

    FluidPath rising = path;
    rising.zeta[10][3] += 0.1;
    CHECK_THROWS_AS(normalize_time_change(rising, 0.0, 0.5), PreconditionError);
  }
}
