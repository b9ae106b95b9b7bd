#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ldcm/profile.hpp"

namespace ldcm {

/// Deterministic trajectory sampled on a time grid. zeta[i][k] is zeta_k at
/// t[i] for k = 0..max_degree; psi[i] is the unreflected active-count path.
struct FluidPath {
  std::vector<double> t;
  std::vector<std::vector<double>> zeta;
  std::vector<double> psi;
  /// Named special times ("tau", "tau_zeta", ...), when defined.
  std::map<std::string, double> markers;

  std::size_t size() const { return t.size(); }
  int max_degree() const { return zeta.empty() ? 0 : static_cast<int>(zeta.front().size()) - 1; }
  StatePoint state(std::size_t i) const;
  /// r(zeta(t_i)) = zeta_0^+ + sum_k k zeta_k.
  double r(std::size_t i) const;
};

/// State and time derivative of a path at one instant; both indexed 0..K.
struct PathPoint {
  std::vector<double> zeta;
  std::vector<double> dzeta;
};

/// A path known pointwise, typically with analytic velocities.
using Trajectory = std::function<PathPoint(double t)>;

/// n equally spaced points on [0, T] (n >= 2).
std::vector<double> uniform_grid(double T, int n);

/// Piecewise-linear interpolation of a grid path; velocity on each segment is
/// its slope. Times outside the grid clamp to the end values with zero slope.
Trajectory interpolate(const FluidPath& path);

/// Samples a trajectory on a grid; psi is filled from psi_of(t, point).
FluidPath sample(const Trajectory& traj, std::span<const double> grid,
                 const std::function<double(double, const PathPoint&)>& psi_of);

}  // namespace ldcm
