#include "ldcm/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include <boost/math/special_functions/beta.hpp>

#include "ldcm/errors.hpp"
#include "ldcm/lln.hpp"

namespace ldcm {

namespace {

constexpr double kWindowSlack = 1e-9;

struct EventObserver {
  const ComponentEvent& event;
  bool hit = false;

  void step(std::int64_t, int) {}
  void component(const DegreeCounts& config, std::int64_t, std::int64_t, std::int64_t) {
    if (event.matches(config)) hit = true;
  }
  bool stop() const { return hit; }
};

std::int64_t total_vertices(const DegreeCounts& counts) {
  std::int64_t n = 0;
  for (std::size_t k = 1; k < counts.size(); ++k) n += counts[k];
  return n;
}

}  // namespace

std::pair<double, double> clopper_pearson(std::int64_t hits, std::int64_t reps, double level) {
  if (reps < 1 || hits < 0 || hits > reps) throw DomainError("clopper_pearson: need 0 <= hits <= reps, reps >= 1");
  const double alpha = 1.0 - level;
  const auto x = static_cast<double>(hits), n = static_cast<double>(reps);
  const double lo = hits == 0 ? 0.0 : boost::math::ibeta_inv(x, n - x + 1.0, 0.5 * alpha);
  const double hi = hits == reps ? 1.0 : boost::math::ibeta_inv(x + 1.0, n - x, 1.0 - 0.5 * alpha);
  return {lo, hi};
}

bool ComponentEvent::matches(const DegreeCounts& config) const {
  if (!possible) return false;
  for (std::size_t k = 1; k < lo.size(); ++k) {
    const std::int64_t m = k < config.size() ? config[k] : 0;
    if (m < lo[k] || m > hi[k]) return false;
  }
  return true;
}

ComponentEvent make_event(const DegreeCounts& counts, const Profile& q, double eps) {
  if (!(eps > 0.0)) throw DomainError("event: eps must be positive");
  const auto n = static_cast<double>(total_vertices(counts));
  ComponentEvent ev;
  ev.lo.assign(counts.size(), 0);
  ev.hi.assign(counts.size(), 0);
  for (std::size_t k = 1; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    const double qk = q[static_cast<int>(k)];
    ev.lo[k] = static_cast<std::int64_t>(std::ceil(n * (qk - eps) - kWindowSlack));
    ev.hi[k] = static_cast<std::int64_t>(std::floor(n * (qk + eps) + kWindowSlack));
    ev.lo[k] = std::max<std::int64_t>(ev.lo[k], 0);
    if (ev.lo[k] > ev.hi[k]) ev.possible = false;
  }
  for (int k = 1; k <= q.max_degree(); ++k) {
    const bool absent = static_cast<std::size_t>(k) >= counts.size() || counts[k] == 0;
    if (absent && q[k] > eps) ev.possible = false;
  }
  return ev;
}

EstimateResult estimate_event_prob(const DegreeCounts& counts, const Profile& q, double eps,
                                   std::int64_t reps, std::uint64_t seed, int workers) {
  if (reps < 1) throw DomainError("estimate: reps must be >= 1");
  if (workers < 1) throw DomainError("estimate: workers must be >= 1");
  const std::int64_t n = total_vertices(counts);
  if (n < 1) throw DomainError("estimate: empty degree sequence");
  for (int k = 1; k <= q.max_degree(); ++k) {
    const double pk = static_cast<std::size_t>(k) < counts.size() ? static_cast<double>(counts[k]) / n : 0.0;
    if (q[k] > pk + 1e-12) throw FeasibilityError("estimate: q <= p violated at degree " + std::to_string(k));
  }
  const ComponentEvent event = make_event(counts, q, eps);

  std::vector<std::int64_t> shard_hits(static_cast<std::size_t>(workers), 0);
  auto run_shard = [&](int w) {
    const std::int64_t begin = reps * w / workers, end = reps * (w + 1) / workers;
    std::int64_t hits = 0;
    for (std::int64_t i = begin; i < end && event.possible; ++i) {
      CounterRng rng(seed, static_cast<std::uint64_t>(i));
      EventObserver obs{event};
      explore(counts, rng, obs);
      hits += obs.hit ? 1 : 0;
    }
    shard_hits[static_cast<std::size_t>(w)] = hits;
  };
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(run_shard, w);
    run_shard(0);
  }

  EstimateResult out;
  for (std::int64_t h : shard_hits) out.hits += h;
  out.reps = reps;
  out.n = n;
  out.seed = seed;
  out.eps = eps;
  out.p_hat = static_cast<double>(out.hits) / static_cast<double>(reps);
  std::tie(out.ci_low, out.ci_high) = clopper_pearson(out.hits, reps);
  out.per_n_rate = out.hits == 0 ? std::numeric_limits<double>::infinity()
                                 : -std::log(out.p_hat) / static_cast<double>(n);
  return out;
}

EstimateResult estimate_event_prob(const DegreeDistribution& p, std::int64_t n, const Profile& q,
                                   double eps, std::int64_t reps, std::uint64_t seed, int workers) {
  if (!Profile::dominated(q, p.weights(), 1e-12)) throw FeasibilityError("estimate: q <= p violated");
  const GeneratedSequence seq = sequence_from_distribution(p, n);
  // q was validated against p; rounding of n p_k must not reject it again.
  const Profile q_capped = [&] {
    std::vector<double> w(static_cast<std::size_t>(q.max_degree()) + 1, 0.0);
    for (int k = 1; k <= q.max_degree(); ++k) {
      const double pk = static_cast<std::size_t>(k) < seq.counts.size()
                            ? static_cast<double>(seq.counts[k]) / static_cast<double>(total_vertices(seq.counts))
                            : 0.0;
      w[k] = std::min(q[k], pk);
    }
    return Profile(std::move(w));
  }();
  EstimateResult out = estimate_event_prob(seq.counts, q_capped, eps, reps, seed, workers);
  out.parity_adjusted_degree = seq.parity_adjusted_degree;
  return out;
}

RateFit rate_fit(std::span<const EstimateResult> results) {
  RateFit fit;
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : results) {
    if (r.hits <= 0 || !(r.p_hat > 0.0)) {
      fit.warnings.push_back("n = " + std::to_string(r.n) + ": no hits, excluded from fit");
      continue;
    }
    pts.emplace_back(static_cast<double>(r.n), -std::log(r.p_hat));
  }
  if (pts.size() < 3) throw DomainError("rate_fit: need at least 3 results with hits > 0");
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0.0)) throw DomainError("rate_fit: all results share the same n");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points_used = static_cast<int>(pts.size());
  return fit;
}

LlnCheck lln_check(const DegreeDistribution& p, std::int64_t n, std::uint64_t seed, int grid_points) {
  const GeneratedSequence seq = sequence_from_distribution(p, n);
  CounterRng rng(seed, 0);
  const ExplorationRecord rec = eea_run(seq.counts, rng, {.record_steps = true});
  const ComponentSummary comps = extract_components(rec);

  const double horizon = std::max(0.5 * p.mean(), static_cast<double>(rec.total_steps) / static_cast<double>(n));
  const std::vector<double> grid = uniform_grid(horizon, grid_points);
  const FluidPath emp = empirical_path(rec, n, grid);
  const Trajectory fluid = lln_trajectory(p);

  double sup = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const PathPoint ref = fluid(grid[i]);
    const std::size_t K = std::max(ref.zeta.size(), emp.zeta[i].size());
    for (std::size_t k = 0; k < K; ++k) {
      const double a = k < ref.zeta.size() ? ref.zeta[k] : 0.0;
      const double b = k < emp.zeta[i].size() ? emp.zeta[i][k] : 0.0;
      sup = std::max(sup, std::abs(a - b));
    }
  }
  return {comps.largest_fraction, sup, n, seed, rec.total_steps};
}

}  // namespace ldcm
