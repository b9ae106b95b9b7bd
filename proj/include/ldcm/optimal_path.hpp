#pragma once

#include <limits>
#include <span>
#include <vector>

#include "ldcm/fluid_path.hpp"
#include "ldcm/profile.hpp"

/// Optimal exploration paths between two fluid states: the Skorokhod map,
/// the explicit minimizer, the local rate L and the cost of a path.
namespace ldcm {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Gamma(psi)(t) = psi(t) - min(0, min_{s<=t} psi(s)) on a grid.
/// Throws PreconditionError unless psi[0] == 0.
std::vector<double> skorokhod_map(std::span<const double> psi);

/// (r(x1) - r(x2)) / 2
double varsigma(const StatePoint& x1, const StatePoint& x2);

enum class SegmentCase { case_i, case_ii };

const char* to_string(SegmentCase c);

struct SegmentBeta {
  double beta = 0.0;
  SegmentCase segment_case = SegmentCase::case_i;
};

/// B(a) = z_1 - sum_{k>=3} k z_k F_k(a) + x2.x0 / a - a x1.x0 with z = x1 - x2.
double segment_beta_equation(const StatePoint& x1, const StatePoint& x2, double alpha);

/// Case (i): x2.x0 == 0 and z_1 == 0 gives beta = 0. Case (ii): edge excess
/// sum k z_k + z_0 > 2 sum z_k together with x2.x0 > 0 or z_1 > 0 gives the
/// zero of the decreasing function B on (0,1). Otherwise FeasibilityError.
SegmentBeta beta_general(const StatePoint& x1, const StatePoint& x2);

struct PathSegmentSpec {
  StatePoint x1;
  StatePoint x2;
  double t1 = 0.0;
  double varsigma = 0.0;
  double varsigma_tilde = 0.0;
  double beta = 0.0;
  SegmentCase segment_case = SegmentCase::case_i;
};

/// Validates x2 <= x1 on degree coordinates and varsigma >= 0, then solves
/// for beta.
PathSegmentSpec make_segment(const StatePoint& x1, const StatePoint& x2, double t1 = 0.0);

/// Explicit minimizer on [t1, t1 + varsigma] with analytic velocities. Times
/// outside the segment clamp to its endpoints (zero velocity).
Trajectory minimizer_trajectory(const PathSegmentSpec& spec);

/// psi along the minimizer, with psi(t1) = psi_start.
double minimizer_psi(const PathSegmentSpec& spec, const PathPoint& at, double t,
                     double psi_start = 0.0);

/// Minimizer sampled on `grid`.
FluidPath minimizer_path(const PathSegmentSpec& spec, std::span<const double> grid);

/// Velocity of the degree coordinates; beta0 carries the zeta_0 velocity,
/// which does not enter L.
struct LocalVelocity {
  double beta0 = 0.0;
  /// betak[k] for k >= 1; betak[0] is ignored.
  std::vector<double> betak;
};

/// L(x, beta) = sum_k nu_k log(nu_k / mu_k) with nu_0 = 1 + sum beta_k,
/// nu_k = -beta_k and mu_k = r_k(x) (mu = delta_0 when r(x) = 0). Returns
/// +infinity when nu is not a probability vector or charges a k with mu_k = 0.
double local_rate_L(const StatePoint& x, const LocalVelocity& v);

/// Same as local_rate_L on raw arrays: zeta = (zeta_0, ..., zeta_K) and
/// dzeta its derivative.
double local_rate(std::span<const double> zeta, std::span<const double> dzeta);

struct PathCostOptions {
  /// Admissible |dr/dt + 2|.
  double pace_tolerance = 1e-6;
  int points = 64;
  /// Trailing share of the interval integrated in the square-root variable.
  double tail_fraction = 0.05;
};

struct PathCost {
  double cost = 0.0;
  /// max |dr/dt + 2| over all quadrature nodes.
  double pace_residual = 0.0;
};

/// Integral of L along the path over [t1, t2]. Throws PreconditionError when
/// the path leaves the pace dr/dt = -2 by more than the tolerance.
PathCost path_cost(const Trajectory& path, double t1, double t2, const PathCostOptions& options = {});

/// Grid paths are integrated through their piecewise-linear interpolant.
PathCost path_cost(const FluidPath& path, double t1, double t2, const PathCostOptions& options = {});

/// H~(x) = sum_k x_k log x_k - ((x0 + sum k x_k)/2) log((x0 + sum k x_k)/2).
/// x0 may be negative (used for differences of states).
double H_tilde(double x0, const Profile& xk);

struct ClosedFormCost {
  double cost = 0.0;
  double H_z = 0.0;
  double H_x2 = 0.0;
  double H_x1 = 0.0;
  double K = 0.0;
  double beta = 0.0;
  SegmentCase segment_case = SegmentCase::case_i;
};

/// H~(z) + H~(x2) - H~(x1) + K~(x1, x2), the cost of the minimizer.
ClosedFormCost cost_closed_form(const StatePoint& x1, const StatePoint& x2);

/// Reparameterizes [t1, t2] so that r decreases at rate exactly 2: grid time
/// t_i maps to t1 + (r(t1) - r(t_i))/2. Constant-r stretches collapse onto
/// their first point; later points shift back by the removed duration.
/// Throws PreconditionError when r increases.
FluidPath normalize_time_change(const FluidPath& path, double t1, double t2);

}  // namespace ldcm
