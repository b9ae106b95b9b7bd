#pragma once

#include <cstdint>
#include <span>

#include "ldcm/profile.hpp"

/// Static decay-rate formulas for components of the configuration model.
/// All logarithms are natural; every function returns a nonnegative decay
/// rate in nats per vertex (the asymptotic (1/n) log P is its negative).
namespace ldcm {

/// x log x with 0 log 0 = 0.
double xlogx(double x);

/// l(x) = x log x - x + 1 for x >= 0.
double ell(double x);

/// H(r) = sum_k r_k log r_k - (1/2 sum_k k r_k) log(1/2 sum_k k r_k).
double entropy_H(const Profile& r);

/// True when sum_k k q_k > 2 sum_k q_k (strictly more edges than vertices).
bool has_edge_excess(const Profile& q);

/// F(a) = sum_{k>=3} F_k(a) k q_k - q_1 with F_k(a) = (a - a^{k-1})/(1 - a^k).
/// Strictly increasing on (0,1); its zero is beta(q).
double beta_equation(const Profile& q, double alpha);

/// beta(q): 0 when q_1 = 0, otherwise the unique zero of beta_equation in
/// (0,1). Throws FeasibilityError when q_1 > 0 and q has no edge excess.
double beta_of_q(const Profile& q);

/// K(q) = (1/2 sum k q_k) log(1 - beta^2) - sum q_k log(1 - beta^k);
/// exactly 0 when q_1 = 0.
double K_of_q(const Profile& q);

enum class BoundKind { two_sided, lower_only };

const char* to_string(BoundKind kind);

struct RateBreakdown {
  double beta = 0.0;
  double H_q = 0.0;
  double H_pq = 0.0;
  double H_p = 0.0;
  double K = 0.0;
  double I1 = 0.0;
  bool feasible = true;
  /// two_sided when p_1 = 0 (upper and lower bounds coincide); otherwise
  /// I1 is only known to bound the decay rate from one side.
  BoundKind bound_kind = BoundKind::two_sided;
};

/// Rate for "some component has degree configuration close to n q":
/// I1 = H(q) + H(p - q) - H(p) + K(q).
/// Throws FeasibilityError if q is not dominated by p ("q <= p") or lacks edge
/// excess.
RateBreakdown rate_component_degree(const DegreeDistribution& p, const Profile& q);

/// D-regular graph, component with a fraction qD of the vertices:
/// (1 - D/2)(qD log qD + (1-qD) log(1-qD)).
double rate_d_regular(int D, double qD);

/// D-regular component of size n qD inside a graph with p_1 = 0.
double rate_d_regular_subgraph(const DegreeDistribution& p, int D, double qD);

struct ComponentSizeOptions {
  int restarts = 5;
  std::uint64_t seed = 20240917;
  double grid_step = 1e-4;
  int grid_max_support = 3;
  int max_sweeps = 400;
};

struct ComponentSizeResult {
  double rate = 0.0;
  Profile argmin;
  bool grid_validated = false;
};

/// min { H(q) + H(p-q) - H(p) : 0 <= q <= p, sum_k q_k = r } for p_1 = p_2 = 0.
ComponentSizeResult rate_component_size(const DegreeDistribution& p, double r,
                                        const ComponentSizeOptions& options = {});

/// Objective of rate_component_size, exposed for oracle comparisons.
double component_size_objective(const DegreeDistribution& p, const Profile& q);

/// Value produced by an unproven formula. Always flagged.
struct ConjecturalRate {
  double rate = 0.0;
  bool conjecture = true;
};

/// Largest-component rate for D-regular graphs:
/// (1 - D/2)(x k log x + (1 - x k) log(1 - x k)) with k = floor(1/x).
ConjecturalRate rate_conjectured_largest(int D, double x);

/// Several prescribed components in a D-regular graph:
/// (1 - D/2) sum_{i=1}^{M+1} q_i log q_i with q_{M+1} = 1 - sum_i q_i.
ConjecturalRate rate_conjectured_multi(int D, std::span<const double> fractions);

}  // namespace ldcm
