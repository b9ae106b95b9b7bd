#pragma once

#include <span>

#include "ldcm/fluid_path.hpp"
#include "ldcm/profile.hpp"

/// Law-of-large-numbers trajectories of the exploration process.
namespace ldcm {

/// G0(z) = sum_k p_k z^k for z in [0,1].
double gen_G0(const DegreeDistribution& p, double z);
/// G1(z) = sum_k k p_k z^{k-1} / mu for z in [0,1].
double gen_G1(const DegreeDistribution& p, double z);

/// nu = sum k(k-1) p_k / sum k p_k.
double criticality_nu(const DegreeDistribution& p);

/// sum_k k(k-2) p_k > 0.
bool is_supercritical(const DegreeDistribution& p);

/// Fixed point G1(rho) = rho in (0,1) for supercritical p with p_1 > 0; 0 when
/// p_1 = 0; 1 when p is not supercritical (no giant component).
double survival_rho(const DegreeDistribution& p);

/// f_s(t): inverse of F_s(u) = G0(s) - G0(s u) on [0, G0(s)], 0 beyond.
double inverse_Fs(const DegreeDistribution& p, double s, double t);

/// 1 - G0(rho), or 0 when p is not supercritical.
double giant_fraction(const DegreeDistribution& p);

struct LlnSummary {
  double mu = 0.0;
  double nu = 0.0;
  double rho = 1.0;
  /// End of the giant excursion; 0 when not supercritical.
  double tau = 0.0;
  /// Time at which every sleeping mass is exhausted.
  double tau_zeta = 0.0;
  double giant_fraction = 0.0;
  bool supercritical = false;
};

LlnSummary lln_summary(const DegreeDistribution& p);

/// Zero-cost trajectory with analytic velocities, defined for all t >= 0.
Trajectory lln_trajectory(const DegreeDistribution& p);

/// The trajectory sampled on `grid` (starting at 0, increasing, ending at
/// T >= mu/2), with psi from the integral formula (trapezoid rule, refined
/// next to tau).
FluidPath lln_path(const DegreeDistribution& p, std::span<const double> grid);

}  // namespace ldcm
