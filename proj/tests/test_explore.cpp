#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>

#include "ldcm/errors.hpp"
#include "ldcm/explore.hpp"

using namespace ldcm;

namespace {

int find(std::vector<int>& parent, int v) {
  while (parent[v] != v) v = parent[v] = parent[parent[v]];
  return v;
}

/// Degree configurations of the components of a matched multigraph.
std::vector<DegreeCounts> components_of(const DegreeSequence& d, const std::vector<Edge>& edges) {
  std::vector<int> parent(d.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& [a, b] : edges) parent[find(parent, a)] = find(parent, b);
  const int K = *std::max_element(d.begin(), d.end());
  std::map<int, DegreeCounts> by_root;
  for (std::size_t v = 0; v < d.size(); ++v) {
    auto& c = by_root[find(parent, static_cast<int>(v))];
    c.resize(K + 1, 0);
    ++c[d[v]];
  }
  std::vector<DegreeCounts> out;
  for (auto& [root, c] : by_root) out.push_back(c);
  return out;
}

}  // namespace

TEST_SUITE("explore") {
  TEST_CASE("degree counts and parity") {
    const DegreeSequence d = {1, 1, 2, 3, 3};
    const DegreeCounts c = degree_counts(d);
    CHECK(c == DegreeCounts{0, 2, 1, 2});
    CHECK(expand(c) == d);
    const DegreeSequence odd = {1, 2};
    CHECK_THROWS_AS(degree_counts(odd), ParityError);
    const DegreeSequence zero = {0, 2};
    CHECK_THROWS_AS(degree_counts(zero), DomainError);
  }

  TEST_CASE("sequence from distribution") {
    const auto even = sequence_from_distribution(DegreeDistribution::from_map({{1, 0.5}, {3, 0.5}}), 10);
    CHECK(even.counts == DegreeCounts{0, 5, 0, 5});
    CHECK(even.parity_adjusted_degree == 0);
    const auto fixed = sequence_from_distribution(DegreeDistribution::from_map({{1, 0.5}, {2, 0.5}}), 6);
    CHECK(fixed.parity_adjusted_degree == 1);
    CHECK(fixed.counts == DegreeCounts{0, 2, 3});
    const auto reg = sequence_from_distribution(DegreeDistribution::from_map({{3, 1.0}}), 12);
    CHECK(reg.counts == DegreeCounts{0, 0, 0, 12});
  }

  TEST_CASE("single vertex of degree 2 is a self-loop") {
    const DegreeSequence d = {2};
    CounterRng rng(1, 0);
    const auto edges = sample_multigraph(d, rng);
    REQUIRE(edges.size() == 1);
    CHECK(edges[0] == Edge{0, 0});
    CounterRng rng2(1, 0);
    const auto rec = eea_run(d, rng2, {.record_steps = true});
    CHECK(rec.complete);
    CHECK(rec.total_steps == 2);
    CHECK(rec.components.size() == 1);
    CHECK(rec.components[0].n_edges == 1);
  }

  TEST_CASE("two leaves form one edge") {
    const DegreeSequence d = {1, 1};
    CounterRng rng(3, 0);
    const auto rec = eea_run(d, rng, {.record_steps = true});
    REQUIRE(rec.steps.size() == 3);
    CHECK(rec.steps[0].active == 0);
    CHECK(rec.steps[1].active == 1);
    CHECK(rec.steps[2].active == 0);
    CHECK(rec.steps[2].woken_degree == 1);
    CHECK(rec.n_edges == 1);
    CHECK(rec.eta_increments == 1);
  }

  TEST_CASE("matching is uniform over the three pairings") {
    const DegreeSequence d = {1, 1, 1, 1};
    std::map<int, int> seen;
    const int draws = 30000;
    for (int i = 0; i < draws; ++i) {
      CounterRng rng(11, i);
      const auto edges = sample_multigraph(d, rng);
      REQUIRE(edges.size() == 2);
      int partner = -1;
      for (const auto& [a, b] : edges) {
        if (a == 0) partner = b;
        if (b == 0) partner = a;
      }
      ++seen[partner];
    }
    double chi2 = 0.0;
    for (int v = 1; v <= 3; ++v) {
      const double diff = seen[v] - draws / 3.0;
      chi2 += diff * diff / (draws / 3.0);
    }
    // 0.999 quantile of chi-square with 2 degrees of freedom
    CHECK(chi2 < 13.82);
  }

  TEST_CASE("four leaves give two components") {
    const DegreeSequence d = {1, 1, 1, 1};
    CounterRng rng(5, 0);
    const auto summary = extract_components(eea_run(d, rng));
    CHECK(summary.n_components == 2);
    CHECK(summary.largest_fraction == 0.5);
  }

  TEST_CASE("conservation along the chain") {
    for (int rep = 0; rep < 50; ++rep) {
      CounterRng seq_rng(21, rep);
      DegreeSequence d;
      for (int i = 0; i < 40; ++i) d.push_back(1 + static_cast<int>(seq_rng.below(5)));
      if (std::accumulate(d.begin(), d.end(), 0) % 2 == 1) ++d.back();
      const DegreeCounts c = degree_counts(d);
      CounterRng rng(22, rep);
      const auto rec = eea_run(c, rng, {.record_steps = true});
      REQUIRE(rec.complete);
      std::int64_t sum = std::accumulate(d.begin(), d.end(), std::int64_t{0});
      CHECK(rec.n_edges * 2 == sum);
      CHECK(rec.total_steps == rec.n_edges + static_cast<std::int64_t>(rec.components.size()));
      CHECK(rec.eta_increments == static_cast<std::int64_t>(rec.components.size()));
      std::int64_t verts = 0, edges = 0;
      for (const auto& comp : rec.components) {
        verts += comp.n_vertices;
        edges += comp.n_edges;
      }
      CHECK(verts == 40);
      CHECK(edges == rec.n_edges);
      for (const auto& s : rec.steps) CHECK(s.active >= 0);
    }
  }

  TEST_CASE("component law matches direct matching") {
    const DegreeSequence d = {1, 1, 2, 2, 3, 3};
    const int runs = 40000;
    std::map<std::vector<std::int64_t>, int> eea, direct;
    for (int i = 0; i < runs; ++i) {
      CounterRng a(31, i), b(32, i);
      auto rec = eea_run(d, a);
      auto key_of = [](std::vector<DegreeCounts> comps) {
        std::sort(comps.begin(), comps.end());
        std::vector<std::int64_t> flat;
        for (const auto& c : comps) {
          flat.insert(flat.end(), c.begin(), c.end());
          flat.push_back(-1);
        }
        return flat;
      };
      std::vector<DegreeCounts> comps;
      for (auto c : rec.components) {
        c.degree_config.resize(4, 0);
        comps.push_back(c.degree_config);
      }
      ++eea[key_of(comps)];
      ++direct[key_of(components_of(d, sample_multigraph(d, b)))];
    }
    double tv = 0.0;
    for (const auto& [k, v] : eea) tv += std::abs(v - (direct.count(k) ? direct[k] : 0));
    for (const auto& [k, v] : direct) {
      if (!eea.count(k)) tv += v;
    }
    CHECK(0.5 * tv / runs < 0.02);
  }

  TEST_CASE("incomplete record is rejected") {
    ExplorationRecord rec;
    CHECK_THROWS_AS(extract_components(rec), StateError);
  }

  TEST_CASE("empirical path") {
    const DegreeSequence d = {1, 1, 3, 3};
    CounterRng rng(7, 0);
    const auto rec = eea_run(d, rng, {.record_steps = true});
    const std::vector<double> grid = {0.0, 0.25, 5.0};
    const FluidPath path = empirical_path(rec, 4, grid);
    CHECK(path.zeta[0][0] == 0.0);
    CHECK(path.zeta[0][1] == 0.5);
    CHECK(path.zeta[0][3] == 0.5);
    CHECK(path.psi[0] == 0.0);
    for (double z : path.zeta[2]) CHECK(z == 0.0);
    ExplorationRecord bare = rec;
    bare.steps.clear();
    CHECK_THROWS(empirical_path(bare, 4, grid));
  }

  TEST_CASE("counter rng is reproducible and stream separated") {
    CounterRng a(9, 3), b(9, 3), c(9, 4);
    for (int i = 0; i < 100; ++i) {
      const auto x = a();
      CHECK(x == b());
      CHECK(x != c());
    }
    CounterRng u(1, 1);
    for (int i = 0; i < 1000; ++i) {
      const double v = u.uniform();
      CHECK(v >= 0.0);
      CHECK(v < 1.0);
      CHECK(u.below(7) < 7);
    }
  }
}
