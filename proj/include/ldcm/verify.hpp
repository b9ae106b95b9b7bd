#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ldcm/profile.hpp"

/// Cross-consistency checks shared by the `verify` command and the
/// acceptance runner. Every check times itself and never throws; library
/// errors turn into a failed result carrying the message.
namespace ldcm::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

using Segment = std::pair<StatePoint, StatePoint>;

/// Fixed segments (D-regular, x0 > 0 with beta ~ 0.522, degree-1 case) followed
/// by random ones alternating between both construction cases.
std::vector<Segment> segment_battery(int count, std::uint64_t seed);

/// rate_d_regular(3, .5), the component-degree rate and the closed-form
/// path cost all equal log(2)/2.
CheckResult dregular_triple();
/// Quadrature of the minimizer against the closed form on the battery.
CheckResult quadrature_vs_closed_form(int count, double tolerance = 1e-6);
/// beta and K at inputs with known algebraic roots.
CheckResult beta_exactness();
/// I1(p, q) equals the closed-form cost from (0, p) to (0, p - q).
CheckResult rate_vs_closed_form(int count, std::uint64_t seed);
/// rho = 1/3 and giant fraction 22/27 for p = {1: .5, 3: .5}.
CheckResult lln_fixed_point();
/// One exploration of n vertices against the fluid limit.
CheckResult lln_simulation(std::int64_t n, std::uint64_t seed, double fraction_tol = 0.01,
                           double sup_tol = 0.02);
/// Cost of the supercritical fluid limit over [0, tau].
CheckResult lln_zero_cost(double tolerance = 1e-5);
/// Per-step conservation, step bound and bookkeeping on random sequences.
CheckResult eea_conservation(int sequences, std::uint64_t seed);
/// Component-size law of the exploration for d = (1,1,1,1,2) against all
/// 15 perfect matchings.
CheckResult matching_distribution(int runs, std::uint64_t seed, double tv_tol = 0.02);
/// Random endpoint-vanishing perturbations of the D-regular minimizer never
/// lower its cost.
CheckResult perturbation_optimality(int count, std::uint64_t seed, double tolerance = 1e-9);
/// Exchange identity for successive minimizers when p_1 = 0.
CheckResult additivity(int pairs, std::uint64_t seed, double tolerance = 1e-10);
/// rate_d_regular(D, q) == rate_d_regular(D, 1 - q) bit for bit.
CheckResult dregular_symmetry();
/// 3-regular decay rate from Monte Carlo at small n.
CheckResult decay_fit(const std::vector<std::int64_t>& ns, std::int64_t reps, int workers,
                      std::uint64_t seed, double slope_lo = 0.24, double slope_hi = 0.48);
/// Identical estimates for every worker count.
CheckResult determinism(const std::vector<int>& workers, std::int64_t reps, std::uint64_t seed);

/// The battery run by `verify`; `fast` shrinks sample sizes.
std::vector<CheckResult> run_all(bool fast);

}  // namespace ldcm::verify
