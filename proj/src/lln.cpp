#include "ldcm/lln.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "ldcm/bisect.hpp"
#include "ldcm/errors.hpp"

namespace ldcm {

namespace {

void require_unit(double z, const char* what) {
  if (!(z >= 0.0 && z <= 1.0)) throw DomainError(std::string(what) + ": z must lie in [0,1]");
}

/// d/dz G0(z)
double G0_prime(const DegreeDistribution& p, double z) {
  double s = 0.0;
  for (int k = p.max_degree(); k >= 1; --k) s = s * z + k * p[k];
  return s;
}

}  // namespace

double gen_G0(const DegreeDistribution& p, double z) {
  require_unit(z, "G0");
  double s = 0.0;
  for (int k = p.max_degree(); k >= 1; --k) s = (s + p[k]) * z;
  return s;
}

double gen_G1(const DegreeDistribution& p, double z) {
  require_unit(z, "G1");
  return G0_prime(p, z) / p.mean();
}

double criticality_nu(const DegreeDistribution& p) {
  const double mu = p.mean();
  if (!(mu > 0.0)) throw DomainError("nu: degenerate distribution with zero mean");
  double s = 0.0;
  for (int k = 2; k <= p.max_degree(); ++k) s += k * (k - 1.0) * p[k];
  return s / mu;
}

bool is_supercritical(const DegreeDistribution& p) {
  double s = 0.0;
  for (int k = 1; k <= p.max_degree(); ++k) s += k * (k - 2.0) * p[k];
  return s > 0.0;
}

double survival_rho(const DegreeDistribution& p) {
  if (!is_supercritical(p)) return 1.0;
  if (p[1] == 0.0) return 0.0;
  // G1(z) - z is positive at 0 and has slope nu - 1 > 0 at 1, so it is
  // negative just below 1.
  auto g = [&](double z) { return gen_G1(p, z) - z; };
  double hi = 1.0 - 1e-3;
  while (g(hi) >= 0.0) {
    hi = 1.0 - 0.5 * (1.0 - hi);
    if (1.0 - hi < 1e-15) throw StateError("rho: no sign change below 1");
  }
  return detail::bisect_monotone(g, 0.0, hi);
}

double inverse_Fs(const DegreeDistribution& p, double s, double t) {
  require_unit(s, "f_s");
  if (!(t >= 0.0)) throw DomainError("f_s: t must be nonnegative");
  if (s == 0.0) return 0.0;
  const double g0s = gen_G0(p, s);
  if (t >= g0s) return 0.0;
  if (t == 0.0) return 1.0;
  return detail::bisect_monotone([&](double u) { return g0s - gen_G0(p, s * u) - t; }, 0.0, 1.0);
}

double giant_fraction(const DegreeDistribution& p) {
  if (!is_supercritical(p)) return 0.0;
  return 1.0 - gen_G0(p, survival_rho(p));
}

LlnSummary lln_summary(const DegreeDistribution& p) {
  LlnSummary s;
  s.mu = p.mean();
  s.nu = criticality_nu(p);
  s.supercritical = is_supercritical(p);
  s.rho = survival_rho(p);
  if (s.supercritical) {
    s.tau = 0.5 * s.mu * (1.0 - s.rho * s.rho);
    s.tau_zeta = s.tau + gen_G0(p, s.rho);
    s.giant_fraction = 1.0 - gen_G0(p, s.rho);
  } else {
    s.tau = 0.0;
    s.tau_zeta = 1.0;
    s.giant_fraction = 0.0;
  }
  return s;
}

Trajectory lln_trajectory(const DegreeDistribution& p) {
  auto dist = std::make_shared<const DegreeDistribution>(p);
  const LlnSummary sum = lln_summary(p);
  return [dist, sum](double t) {
    const DegreeDistribution& d = *dist;
    const int K = d.max_degree();
    PathPoint out{std::vector<double>(K + 1, 0.0), std::vector<double>(K + 1, 0.0)};
    if (sum.supercritical && t <= sum.tau) {
      const double y = std::sqrt(std::max(0.0, 1.0 - 2.0 * t / sum.mu));
      double slope_sum = 0.0;
      for (int k = 1; k <= K; ++k) {
        if (d[k] == 0.0) continue;
        out.zeta[k] = d[k] * std::pow(y, k);
        out.dzeta[k] = -k * d[k] * std::pow(y, k - 2) / sum.mu;
        slope_sum += k * out.dzeta[k];
      }
      out.zeta[0] = std::max(0.0, sum.mu * y * (y - gen_G1(d, y)));
      out.dzeta[0] = -2.0 - slope_sum;
      return out;
    }
    // Remaining sleeping mass is explored through small components only.
    const double s = sum.supercritical ? sum.rho : 1.0;
    const double shift = sum.supercritical ? sum.tau : 0.0;
    if (s == 0.0) return out;
    const double f = inverse_Fs(d, s, std::max(0.0, t - shift));
    if (f == 0.0) return out;
    const double df = -1.0 / (s * G0_prime(d, s * f));
    for (int k = 1; k <= K; ++k) {
      if (d[k] == 0.0) continue;
      const double sk = std::pow(s, k);
      out.zeta[k] = d[k] * sk * std::pow(f, k);
      out.dzeta[k] = d[k] * sk * k * std::pow(f, k - 1) * df;
    }
    return out;
  };
}

FluidPath lln_path(const DegreeDistribution& p, std::span<const double> grid) {
  if (grid.size() < 2 || grid.front() != 0.0) {
    throw DomainError("lln_path: grid must start at 0 and have at least 2 points");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw DomainError("lln_path: grid must be strictly increasing");
  }
  const LlnSummary sum = lln_summary(p);
  if (grid.back() < 0.5 * sum.mu - 1e-12) throw DomainError("lln_path: horizon T must be >= mu/2");

  const Trajectory traj = lln_trajectory(p);
  FluidPath path = sample(traj, grid, [](double, const PathPoint&) { return 0.0; });
  if (sum.supercritical) path.markers["tau"] = sum.tau;
  path.markers["tau_zeta"] = sum.tau_zeta;

  // integral of r0 by the trapezoid rule; r0 vanishes after tau, and each
  // grid interval within the last 10% before tau is split in four.
  auto r0_at = [&](double t) {
    if (!sum.supercritical || t >= sum.tau) return 0.0;
    const PathPoint pt = traj(t);
    const double r = sum.mu - 2.0 * t;
    return r > 0.0 ? pt.zeta[0] / r : 0.0;
  };
  const double refine_from = 0.9 * sum.tau;
  std::vector<double> integral(grid.size(), 0.0);
  double acc = 0.0;
  double prev_t = grid[0], prev_v = r0_at(grid[0]);
  auto advance = [&](double t) {
    const double v = r0_at(t);
    acc += 0.5 * (t - prev_t) * (prev_v + v);
    prev_t = t;
    prev_v = v;
  };
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double a = grid[i - 1], b = grid[i];
    const bool crosses_tau = sum.supercritical && a < sum.tau && sum.tau < b;
    const bool refine = sum.supercritical && b > refine_from && a < sum.tau;
    const double stop = crosses_tau ? sum.tau : b;
    if (refine) {
      for (int j = 1; j <= 4; ++j) advance(a + (stop - a) * j / 4.0);
    } else {
      advance(stop);
    }
    if (crosses_tau) advance(b);
    integral[i] = acc;
  }

  const int K = p.max_degree();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double s = -2.0 * integral[i];
    for (int k = 1; k <= K; ++k) s += (k - 2.0) * (p[k] - path.zeta[i][k]);
    path.psi[i] = s;
  }
  return path;
}

}  // namespace ldcm
