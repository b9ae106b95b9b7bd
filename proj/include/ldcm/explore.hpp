#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ldcm/errors.hpp"
#include "ldcm/fluid_path.hpp"
#include "ldcm/profile.hpp"
#include "ldcm/rng.hpp"

/// Exact simulation of the configuration model: uniform half-edge matching
/// and the edge-exploration chain on (active half-edges, sleeping counts).
namespace ldcm {

using DegreeSequence = std::vector<int>;
/// counts[k] = number of vertices of degree k; counts[0] is unused.
using DegreeCounts = std::vector<std::int64_t>;

/// Histogram of a degree sequence. Throws DomainError for degrees < 1 and
/// ParityError when the degree sum is odd.
DegreeCounts degree_counts(std::span<const int> degrees);

struct GeneratedSequence {
  DegreeCounts counts;
  /// Degree whose count was lowered by one to make the degree sum even;
  /// 0 when no adjustment was needed.
  int parity_adjusted_degree = 0;
};

/// n_k = round(n p_k); an odd degree sum is fixed by decrementing the odd
/// degree with the largest odd count.
GeneratedSequence sequence_from_distribution(const DegreeDistribution& p, std::int64_t n);

/// Degree sequence listing vertices by increasing degree.
DegreeSequence expand(const DegreeCounts& counts);

using Edge = std::pair<int, int>;

/// Uniform perfect matching of the half-edges (self-loops and multi-edges
/// kept). Vertices are numbered by position in `degrees`.
std::vector<Edge> sample_multigraph(std::span<const int> degrees, CounterRng& rng);

struct StepRecord {
  std::int64_t active = 0;
  /// Degree of the vertex woken by this step, 0 when a pair was killed.
  int woken_degree = 0;
};

struct ComponentRecord {
  DegreeCounts degree_config;
  std::int64_t n_vertices = 0;
  std::int64_t n_edges = 0;
};

struct ExplorationRecord {
  DegreeCounts initial_counts;
  std::int64_t n_vertices = 0;
  std::int64_t n_edges = 0;
  /// steps[0] is the initial state; empty unless the trajectory was recorded.
  std::vector<StepRecord> steps;
  std::int64_t total_steps = 0;
  /// (first step with A > 0, step at which A returns to 0).
  std::vector<std::pair<std::int64_t, std::int64_t>> excursions;
  std::vector<ComponentRecord> components;
  /// Number of restarts from A = 0.
  std::int64_t eta_increments = 0;
  bool complete = false;
};

namespace detail {

/// Index of the degree class hit by u in [0, sum_k k counts[k]).
inline int pick_degree(const DegreeCounts& counts, std::uint64_t u) {
  for (std::size_t k = 1; k < counts.size(); ++k) {
    const auto mass = static_cast<std::uint64_t>(counts[k]) * k;
    if (u < mass) return static_cast<int>(k);
    u -= mass;
  }
  throw StateError("exploration: degree selection out of range");
}

}  // namespace detail

/// Runs the edge-exploration chain. The observer receives
///   step(active_after, woken_degree)                 after every step,
///   component(config, edges, start_step, end_step)   when A returns to 0,
///   bool stop()                                       checked between components.
/// Returns true when the graph was fully explored.
template <class Observer>
bool explore(const DegreeCounts& initial, CounterRng& rng, Observer& obs) {
  DegreeCounts sleeping = initial;
  if (sleeping.empty()) sleeping.assign(1, 0);
  std::uint64_t S = 0;
  for (std::size_t k = 1; k < sleeping.size(); ++k) S += static_cast<std::uint64_t>(sleeping[k]) * k;
  DegreeCounts config(sleeping.size(), 0);
  std::int64_t A = 0, step = 0, start = 0, edges = 0;

  while (S > 0 || A > 0) {
    ++step;
    if (A == 0) {
      const int k = detail::pick_degree(sleeping, rng.below(S));
      --sleeping[k];
      S -= static_cast<std::uint64_t>(k);
      A = k;
      std::fill(config.begin(), config.end(), 0);
      config[k] = 1;
      start = step;
      edges = 0;
      obs.step(A, k);
      continue;
    }
    const auto killable = static_cast<std::uint64_t>(A - 1);
    const std::uint64_t total = S + killable;
    if (total == 0) throw StateError("exploration: single active half-edge left (odd degree sum)");
    std::uint64_t u = rng.below(total);
    int woken = 0;
    if (u < killable) {
      A -= 2;
    } else {
      woken = detail::pick_degree(sleeping, u - killable);
      --sleeping[woken];
      S -= static_cast<std::uint64_t>(woken);
      ++config[woken];
      A += woken - 2;
    }
    ++edges;
    obs.step(A, woken);
    if (A == 0) {
      obs.component(config, edges, start, step);
      if (obs.stop()) return false;
    }
  }
  return true;
}

struct ExploreOptions {
  bool record_steps = false;
};

/// One full exploration, recording components (and steps when asked).
ExplorationRecord eea_run(const DegreeCounts& counts, CounterRng& rng, const ExploreOptions& options = {});
ExplorationRecord eea_run(std::span<const int> degrees, CounterRng& rng, const ExploreOptions& options = {});

struct ComponentSummary {
  double largest_fraction = 0.0;
  std::int64_t n_components = 0;
  /// Sorted by vertex count, largest first.
  std::vector<ComponentRecord> components;
};

/// Throws StateError for an incomplete record.
ComponentSummary extract_components(const ExplorationRecord& rec);

/// zeta_k(t) = V_k(floor(n t))/n, zeta_0(t) = A(floor(n t))/n and
/// psi = (A - 2 * restarts)/n; beyond termination the state is zero.
/// Requires a record with steps.
FluidPath empirical_path(const ExplorationRecord& rec, std::int64_t n, std::span<const double> grid);

}  // namespace ldcm
