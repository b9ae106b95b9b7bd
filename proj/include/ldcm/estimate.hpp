#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ldcm/explore.hpp"
#include "ldcm/profile.hpp"

/// Monte Carlo estimation of component events and law-of-large-numbers
/// checks, parallel over replications.
namespace ldcm {

struct EstimateResult {
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  std::int64_t reps = 0;
  std::int64_t hits = 0;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  double eps = 0.0;
  /// -log(p_hat)/n; +infinity when there were no hits.
  double per_n_rate = 0.0;
  /// Set when the degree counts were generated from a distribution and the
  /// parity fix lowered one count.
  int parity_adjusted_degree = 0;

  bool operator==(const EstimateResult&) const = default;
};

/// Exact binomial (Clopper-Pearson) interval at the given confidence level.
std::pair<double, double> clopper_pearson(std::int64_t hits, std::int64_t reps, double level = 0.95);

/// Some component has m_k in [n(q_k - eps), n(q_k + eps)] for every degree k
/// present in the graph, and q_k <= eps for degrees that are absent.
struct ComponentEvent {
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> hi;
  bool possible = true;

  bool matches(const DegreeCounts& config) const;
};

ComponentEvent make_event(const DegreeCounts& counts, const Profile& q, double eps);

/// Fraction of explorations (replication i uses stream i of `seed`) that
/// contain a component in the event window. Throws FeasibilityError unless
/// q <= p with p_k = n_k / n, DomainError for reps < 1 or eps <= 0.
EstimateResult estimate_event_prob(const DegreeCounts& counts, const Profile& q, double eps,
                                   std::int64_t reps, std::uint64_t seed, int workers = 1);

/// Counts generated from p by sequence_from_distribution; q <= p is checked
/// against p itself.
EstimateResult estimate_event_prob(const DegreeDistribution& p, std::int64_t n, const Profile& q,
                                   double eps, std::int64_t reps, std::uint64_t seed, int workers = 1);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  int points_used = 0;
  std::vector<std::string> warnings;
};

/// Least-squares fit of -log p_hat against n. Results with p_hat = 0 are
/// skipped with a warning; fewer than 3 usable points throws DomainError.
RateFit rate_fit(std::span<const EstimateResult> results);

struct LlnCheck {
  double largest_fraction = 0.0;
  double sup_distance = 0.0;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  std::int64_t steps = 0;
};

/// One exploration of n vertices drawn from p against the fluid limit:
/// largest component fraction and sup over the grid and over k of
/// |empirical zeta_k - lln zeta_k|.
LlnCheck lln_check(const DegreeDistribution& p, std::int64_t n, std::uint64_t seed, int grid_points = 2001);

}  // namespace ldcm
