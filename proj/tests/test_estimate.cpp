#include <doctest.h>

#include <cmath>
#include <random>

#include "ldcm/errors.hpp"
#include "ldcm/estimate.hpp"

using namespace ldcm;

TEST_SUITE("estimate") {
  TEST_CASE("certain and impossible events") {
    const DegreeCounts two = {0, 2};
    const auto sure = estimate_event_prob(two, Profile::from_map({{1, 1.0}}), 0.01, 50, 1);
    CHECK(sure.p_hat == 1.0);
    CHECK(sure.hits == 50);
    CHECK(sure.per_n_rate == 0.0);
    const auto never = estimate_event_prob(two, Profile::from_map({{1, 0.25}}), 0.01, 50, 1);
    CHECK(never.p_hat == 0.0);
    CHECK(std::isinf(never.per_n_rate));
    CHECK(never.ci_low == 0.0);
    CHECK(never.ci_high > 0.0);
  }

  TEST_CASE("argument checks") {
    const DegreeCounts c = {0, 0, 0, 4};
    CHECK_THROWS_AS(estimate_event_prob(c, Profile::from_map({{3, 0.5}}), 0.1, 0, 1), DomainError);
    CHECK_THROWS_AS(estimate_event_prob(c, Profile::from_map({{3, 0.5}}), 0.0, 10, 1), DomainError);
    CHECK_THROWS_AS(estimate_event_prob(c, Profile::from_map({{3, 0.5}, {4, 0.5}}), 0.1, 10, 1),
                    FeasibilityError);
    CHECK_THROWS_AS(estimate_event_prob(DegreeDistribution::from_map({{3, 1.0}}), 12,
                                        Profile::from_map({{3, 1.1}}), 0.1, 10, 1),
                    FeasibilityError);
  }

  TEST_CASE("event windows") {
    const DegreeCounts c = {0, 6, 0, 6};
    const auto ev = make_event(c, Profile::from_map({{1, 0.25}, {3, 0.25}}), 0.1);
    CHECK(ev.possible);
    CHECK(ev.lo[1] == 2);
    CHECK(ev.hi[1] == 4);
    CHECK(ev.matches(DegreeCounts{0, 3, 0, 3}));
    CHECK_FALSE(ev.matches(DegreeCounts{0, 1, 0, 3}));
    const auto absent = make_event(c, Profile::from_map({{2, 0.2}}), 0.1);
    CHECK_FALSE(absent.possible);
  }

  TEST_CASE("results do not depend on the worker count") {
    const auto p = DegreeDistribution::from_map({{3, 1.0}});
    const auto q = Profile::from_map({{3, 0.5}});
    const auto one = estimate_event_prob(p, 12, q, 0.01, 4000, 77, 1);
    for (int w : {2, 3, 8}) CHECK(estimate_event_prob(p, 12, q, 0.01, 4000, 77, w) == one);
    CHECK(one.hits > 0);
  }

  TEST_CASE("wider windows hit at least as often") {
    const auto p = DegreeDistribution::from_map({{1, 0.5}, {3, 0.5}});
    const auto q = Profile::from_map({{1, 0.2}, {3, 0.3}});
    std::int64_t prev = -1;
    for (double eps : {0.02, 0.05, 0.1, 0.2}) {
      const auto r = estimate_event_prob(p, 20, q, eps, 2000, 5, 2);
      CHECK(r.hits >= prev);
      prev = r.hits;
    }
  }

  TEST_CASE("Clopper-Pearson coverage") {
    std::mt19937_64 gen(12);
    const double truth = 0.07;
    std::bernoulli_distribution coin(truth);
    int covered = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      std::int64_t hits = 0;
      for (int i = 0; i < 200; ++i) hits += coin(gen);
      const auto [lo, hi] = clopper_pearson(hits, 200);
      covered += lo <= truth && truth <= hi;
    }
    CHECK(covered >= 930);
    const auto [lo0, hi0] = clopper_pearson(0, 100);
    CHECK(lo0 == 0.0);
    CHECK(hi0 == doctest::Approx(1.0 - std::pow(0.025, 0.01)).epsilon(1e-10));
  }

  TEST_CASE("rate fit") {
    std::vector<EstimateResult> rs;
    for (int n : {10, 20, 30, 40}) {
      EstimateResult r;
      r.n = n;
      r.p_hat = std::exp(-(0.3 * n + 0.5));
      r.hits = 1;
      rs.push_back(r);
    }
    const RateFit fit = rate_fit(rs);
    CHECK(fit.slope == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fit.points_used == 4);
    rs[1].p_hat = 0.0;
    rs[1].hits = 0;
    const RateFit skipped = rate_fit(rs);
    CHECK(skipped.points_used == 3);
    CHECK(skipped.warnings.size() == 1);
    rs[2].p_hat = 0.0;
    rs[2].hits = 0;
    CHECK_THROWS_AS(rate_fit(rs), DomainError);
  }

  TEST_CASE("lln check on a perfect matching") {
    const auto r = lln_check(DegreeDistribution::from_map({{1, 1.0}}), 1000, 3, 201);
    CHECK(r.largest_fraction == doctest::Approx(2.0 / 1000.0));
    CHECK(r.n == 1000);
  }
}
