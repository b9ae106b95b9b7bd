#include "ldcm/explore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ldcm {

DegreeCounts degree_counts(std::span<const int> degrees) {
  DegreeCounts counts(1, 0);
  long long total = 0;
  for (int d : degrees) {
    if (d < 1) throw DomainError("degree sequence: degrees must be >= 1");
    if (static_cast<std::size_t>(d) >= counts.size()) counts.resize(static_cast<std::size_t>(d) + 1, 0);
    ++counts[d];
    total += d;
  }
  if (total % 2 != 0) throw ParityError("degree sequence: sum of degrees must be even");
  return counts;
}

GeneratedSequence sequence_from_distribution(const DegreeDistribution& p, std::int64_t n) {
  if (n < 1) throw DomainError("sequence: n must be positive");
  GeneratedSequence out;
  out.counts.assign(static_cast<std::size_t>(p.max_degree()) + 1, 0);
  long long half_edges = 0;
  for (int k = 1; k <= p.max_degree(); ++k) {
    out.counts[k] = std::llround(static_cast<double>(n) * p[k]);
    half_edges += out.counts[k] * k;
  }
  if (half_edges % 2 != 0) {
    int best = 0;
    for (int k = 1; k <= p.max_degree(); k += 2) {
      if (out.counts[k] % 2 == 1 && (best == 0 || out.counts[k] >= out.counts[best])) best = k;
    }
    --out.counts[best];
    out.parity_adjusted_degree = best;
  }
  return out;
}

DegreeSequence expand(const DegreeCounts& counts) {
  DegreeSequence out;
  for (std::size_t k = 1; k < counts.size(); ++k) {
    out.insert(out.end(), static_cast<std::size_t>(counts[k]), static_cast<int>(k));
  }
  return out;
}

std::vector<Edge> sample_multigraph(std::span<const int> degrees, CounterRng& rng) {
  degree_counts(degrees);
  std::vector<int> stubs;
  for (std::size_t v = 0; v < degrees.size(); ++v) {
    stubs.insert(stubs.end(), static_cast<std::size_t>(degrees[v]), static_cast<int>(v));
  }
  for (std::size_t i = stubs.size(); i > 1; --i) {
    std::swap(stubs[i - 1], stubs[rng.below(i)]);
  }
  std::vector<Edge> edges;
  edges.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) edges.emplace_back(stubs[i], stubs[i + 1]);
  return edges;
}

namespace {

struct RecordBuilder {
  ExplorationRecord& rec;
  bool record_steps;

  void step(std::int64_t active, int woken) {
    ++rec.total_steps;
    if (record_steps) rec.steps.push_back({active, woken});
  }
  void component(const DegreeCounts& config, std::int64_t edges, std::int64_t start, std::int64_t end) {
    ComponentRecord c;
    c.degree_config = config;
    while (c.degree_config.size() > 1 && c.degree_config.back() == 0) c.degree_config.pop_back();
    c.n_vertices = std::accumulate(config.begin(), config.end(), std::int64_t{0});
    c.n_edges = edges;
    rec.components.push_back(std::move(c));
    rec.excursions.emplace_back(start, end);
    ++rec.eta_increments;
  }
  bool stop() const { return false; }
};

}  // namespace

ExplorationRecord eea_run(const DegreeCounts& counts, CounterRng& rng, const ExploreOptions& options) {
  ExplorationRecord rec;
  rec.initial_counts = counts;
  long long half = 0;
  for (std::size_t k = 1; k < counts.size(); ++k) {
    if (counts[k] < 0) throw DomainError("degree counts must be nonnegative");
    rec.n_vertices += counts[k];
    half += counts[k] * static_cast<long long>(k);
  }
  if (half % 2 != 0) throw ParityError("degree sequence: sum of degrees must be even");
  rec.n_edges = half / 2;
  if (options.record_steps) {
    rec.steps.reserve(static_cast<std::size_t>(rec.n_vertices + rec.n_edges + 1));
    rec.steps.push_back({0, 0});
  }
  RecordBuilder builder{rec, options.record_steps};
  rec.complete = explore(counts, rng, builder);
  return rec;
}

ExplorationRecord eea_run(std::span<const int> degrees, CounterRng& rng, const ExploreOptions& options) {
  return eea_run(degree_counts(degrees), rng, options);
}

ComponentSummary extract_components(const ExplorationRecord& rec) {
  if (!rec.complete) throw StateError("extract_components: exploration record is incomplete");
  ComponentSummary out;
  out.components = rec.components;
  std::stable_sort(out.components.begin(), out.components.end(),
                   [](const ComponentRecord& a, const ComponentRecord& b) { return a.n_vertices > b.n_vertices; });
  out.n_components = rec.eta_increments;
  if (!out.components.empty() && rec.n_vertices > 0) {
    out.largest_fraction = static_cast<double>(out.components.front().n_vertices) / rec.n_vertices;
  }
  return out;
}

FluidPath empirical_path(const ExplorationRecord& rec, std::int64_t n, std::span<const double> grid) {
  if (rec.steps.empty()) throw StateError("empirical_path: record has no steps (run with record_steps)");
  if (n < 1) throw DomainError("empirical_path: n must be positive");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] < grid[i - 1]) throw DomainError("empirical_path: grid must be nondecreasing");
  }
  const std::size_t K = rec.initial_counts.empty() ? 0 : rec.initial_counts.size() - 1;
  const auto last = static_cast<std::int64_t>(rec.steps.size()) - 1;
  const double scale = 1.0 / static_cast<double>(n);

  DegreeCounts sleeping = rec.initial_counts;
  sleeping.resize(K + 1, 0);
  std::int64_t j = 0, restarts = 0;
  FluidPath out;
  out.markers["steps_over_n"] = static_cast<double>(last) * scale;
  for (double t : grid) {
    const auto target = static_cast<std::int64_t>(std::floor(static_cast<double>(n) * t));
    const std::int64_t stop = std::clamp<std::int64_t>(target, 0, last);
    while (j < stop) {
      ++j;
      const StepRecord& s = rec.steps[static_cast<std::size_t>(j)];
      if (s.woken_degree > 0) {
        --sleeping[static_cast<std::size_t>(s.woken_degree)];
        if (rec.steps[static_cast<std::size_t>(j - 1)].active == 0) ++restarts;
      }
    }
    std::vector<double> z(K + 1, 0.0);
    const std::int64_t A = rec.steps[static_cast<std::size_t>(j)].active;
    if (target <= last) {
      z[0] = static_cast<double>(A) * scale;
      for (std::size_t k = 1; k <= K; ++k) z[k] = static_cast<double>(sleeping[k]) * scale;
    }
    out.t.push_back(t);
    out.zeta.push_back(std::move(z));
    out.psi.push_back(static_cast<double>(A - 2 * restarts) * scale);
  }
  return out;
}

}  // namespace ldcm
