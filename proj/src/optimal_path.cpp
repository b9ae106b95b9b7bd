#include "ldcm/optimal_path.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <string>

#include "ldcm/bisect.hpp"
#include "ldcm/errors.hpp"
#include "ldcm/quadrature.hpp"
#include "ldcm/rates.hpp"

namespace ldcm {

namespace {

constexpr double kVelocitySlack = 1e-12;

double nu_log_ratio(double nu, double mu) {
  if (nu == 0.0) return 0.0;
  if (!(mu > 0.0)) return kInfinity;
  return nu * std::log(nu / mu);
}

int joint_degree(const StatePoint& a, const StatePoint& b) {
  return std::max(a.xk.max_degree(), b.xk.max_degree());
}

}  // namespace

std::vector<double> skorokhod_map(std::span<const double> psi) {
  if (psi.empty() || psi[0] != 0.0) throw PreconditionError("skorokhod_map: psi(0) must be 0");
  std::vector<double> out(psi.size());
  double low = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    low = std::min(low, psi[i]);
    out[i] = psi[i] - low;
  }
  return out;
}

double varsigma(const StatePoint& x1, const StatePoint& x2) { return 0.5 * (x1.r() - x2.r()); }

const char* to_string(SegmentCase c) { return c == SegmentCase::case_i ? "case_i" : "case_ii"; }

double segment_beta_equation(const StatePoint& x1, const StatePoint& x2, double alpha) {
  const int K = joint_degree(x1, x2);
  double s = (x1.xk[1] - x2.xk[1]) + x2.x0 / alpha - alpha * x1.x0;
  for (int k = 3; k <= K; ++k) {
    const double z = x1.xk[k] - x2.xk[k];
    if (z != 0.0) s -= k * z * detail::edge_vertex_ratio(k, alpha);
  }
  return s;
}

SegmentBeta beta_general(const StatePoint& x1, const StatePoint& x2) {
  const double z1 = x1.xk[1] - x2.xk[1];
  if (x2.x0 == 0.0 && z1 == 0.0) return {0.0, SegmentCase::case_i};

  const int K = joint_degree(x1, x2);
  double edges = x1.x0 - x2.x0, vertices = 0.0;
  for (int k = 1; k <= K; ++k) {
    const double z = x1.xk[k] - x2.xk[k];
    edges += k * z;
    vertices += z;
  }
  if (!(edges > 2.0 * vertices) || !(x2.x0 > 0.0 || z1 > 0.0)) {
    throw FeasibilityError(
        "beta(x1,x2): need x2.x0 = 0 and z_1 = 0, or sum k z_k + z_0 > 2 sum z_k with "
        "x2.x0 > 0 or z_1 > 0");
  }
  const double beta = detail::bisect_monotone(
      [&](double a) { return segment_beta_equation(x1, x2, a); }, 1e-300, 1.0 - 1e-15);
  return {beta, SegmentCase::case_ii};
}

PathSegmentSpec make_segment(const StatePoint& x1, const StatePoint& x2, double t1) {
  if (!Profile::dominated(x2.xk, x1.xk)) {
    throw FeasibilityError("segment: x2 <= x1 must hold on degree coordinates");
  }
  if (x1.x0 < 0.0 || x2.x0 < 0.0) throw DomainError("segment: x0 must be nonnegative");
  PathSegmentSpec spec;
  spec.x1 = x1;
  spec.x2 = x2;
  spec.t1 = t1;
  const double vs = varsigma(x1, x2);
  if (vs < -1e-15) throw PreconditionError("segment: varsigma = (r(x1) - r(x2))/2 must be >= 0");
  spec.varsigma = std::max(vs, 0.0);
  const SegmentBeta b = beta_general(x1, x2);
  spec.beta = b.beta;
  spec.segment_case = b.segment_case;
  spec.varsigma_tilde = spec.varsigma / (1.0 - b.beta * b.beta);
  return spec;
}

Trajectory minimizer_trajectory(const PathSegmentSpec& spec) {
  auto s = std::make_shared<const PathSegmentSpec>(spec);
  return [s](double t) {
    const PathSegmentSpec& sp = *s;
    const int K = joint_degree(sp.x1, sp.x2);
    PathPoint out{std::vector<double>(K + 1, 0.0), std::vector<double>(K + 1, 0.0)};
    if (sp.varsigma_tilde <= 0.0 || t <= sp.t1) {
      out.zeta[0] = sp.x1.x0;
      for (int k = 1; k <= K; ++k) out.zeta[k] = sp.x1.xk[k];
      return out;
    }
    const bool inside = t < sp.t1 + sp.varsigma;
    const double b2 = sp.beta * sp.beta;
    const double w = inside ? std::clamp(1.0 - (t - sp.t1) / sp.varsigma_tilde, b2, 1.0) : b2;
    double drop = 0.0, slope = 0.0;
    for (int k = 1; k <= K; ++k) {
      const double z = sp.x1.xk[k] - sp.x2.xk[k];
      if (z <= 0.0) {
        out.zeta[k] = sp.x1.xk[k];
        continue;
      }
      const double bk = std::pow(sp.beta, k);
      const double zt = z / (1.0 - bk);
      // x2_k + z~_k (w^{k/2} - beta^k), exact at both ends
      out.zeta[k] = sp.x2.xk[k] + zt * (std::pow(w, 0.5 * k) - bk);
      if (inside) out.dzeta[k] = -zt * 0.5 * k * std::pow(w, 0.5 * k - 1.0) / sp.varsigma_tilde;
      drop += k * (sp.x1.xk[k] - out.zeta[k]);
      slope += k * out.dzeta[k];
    }
    const double elapsed = inside ? t - sp.t1 : sp.varsigma;
    out.zeta[0] = sp.x1.x0 + drop - 2.0 * elapsed;
    out.dzeta[0] = inside ? -slope - 2.0 : 0.0;
    return out;
  };
}

double minimizer_psi(const PathSegmentSpec& spec, const PathPoint& at, double t, double psi_start) {
  const double elapsed = std::clamp(t - spec.t1, 0.0, spec.varsigma);
  double drop = 0.0;
  for (std::size_t k = 1; k < at.zeta.size(); ++k) {
    drop += static_cast<double>(k) * (spec.x1.xk[static_cast<int>(k)] - at.zeta[k]);
  }
  return psi_start + drop - 2.0 * elapsed;
}

FluidPath minimizer_path(const PathSegmentSpec& spec, std::span<const double> grid) {
  const Trajectory traj = minimizer_trajectory(spec);
  FluidPath path = sample(traj, grid, [&](double t, const PathPoint& pt) {
    return minimizer_psi(spec, pt, t);
  });
  path.markers["t1"] = spec.t1;
  path.markers["t2"] = spec.t1 + spec.varsigma;
  return path;
}

double local_rate(std::span<const double> zeta, std::span<const double> dzeta) {
  const std::size_t n = std::min(zeta.size(), dzeta.size());
  double r = zeta.empty() ? 0.0 : std::max(zeta[0], 0.0);
  for (std::size_t k = 1; k < zeta.size(); ++k) r += static_cast<double>(k) * std::max(zeta[k], 0.0);

  double nu0 = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double b = dzeta[k];
    if (b > kVelocitySlack || b < -1.0 - kVelocitySlack || std::isnan(b)) return kInfinity;
    nu0 += std::clamp(b, -1.0, 0.0);
  }
  if (nu0 < -kVelocitySlack) return kInfinity;
  nu0 = std::max(nu0, 0.0);

  if (!(r > 0.0)) {
    for (std::size_t k = 1; k < n; ++k) {
      if (std::clamp(dzeta[k], -1.0, 0.0) < 0.0) return kInfinity;
    }
    return nu_log_ratio(nu0, 1.0);
  }
  double total = nu_log_ratio(nu0, std::max(zeta[0], 0.0) / r);
  for (std::size_t k = 1; k < n; ++k) {
    const double nu = -std::clamp(dzeta[k], -1.0, 0.0);
    total += nu_log_ratio(nu, static_cast<double>(k) * std::max(zeta[k], 0.0) / r);
  }
  return total;
}

double local_rate_L(const StatePoint& x, const LocalVelocity& v) {
  const int K = std::max(x.xk.max_degree(), static_cast<int>(v.betak.size()) - 1);
  std::vector<double> zeta(static_cast<std::size_t>(K) + 1, 0.0), dz(zeta.size(), 0.0);
  zeta[0] = x.x0;
  dz[0] = v.beta0;
  for (int k = 1; k <= K; ++k) {
    zeta[k] = x.xk[k];
    if (static_cast<std::size_t>(k) < v.betak.size()) dz[k] = v.betak[k];
  }
  return local_rate(zeta, dz);
}

PathCost path_cost(const Trajectory& path, double t1, double t2, const PathCostOptions& options) {
  if (!(t2 > t1)) return {};
  const double h = t2 - t1;
  double residual = 0.0;
  auto L_at = [&](double t) {
    const PathPoint pt = path(t);
    double dr = pt.dzeta.empty() ? 0.0 : pt.dzeta[0];
    for (std::size_t k = 1; k < pt.dzeta.size(); ++k) dr += static_cast<double>(k) * pt.dzeta[k];
    residual = std::max(residual, std::abs(dr + 2.0));
    return local_rate(pt.zeta, pt.dzeta);
  };

  const double split = t1 + (1.0 - options.tail_fraction) * h;
  const double body = integrate_panels(L_at, t1, split, graded_breaks(t1, split), options.points);
  // t = t1 + h (1 - a^2) turns endpoint terms like log(t2 - t) into smooth
  // functions of a.
  const double amax = std::sqrt(options.tail_fraction);
  const double tail = integrate_panels(
      [&](double a) { return 2.0 * h * a * L_at(t1 + h * (1.0 - a * a)); }, 0.0, amax,
      graded_breaks(0.0, amax, 0.25, 1e-3), options.points);

  if (residual > options.pace_tolerance) {
    std::ostringstream msg;
    msg << "path_cost: path violates dr/dt = -2, max residual " << residual;
    throw PreconditionError(msg.str());
  }
  return {body + tail, residual};
}

PathCost path_cost(const FluidPath& path, double t1, double t2, const PathCostOptions& options) {
  return path_cost(interpolate(path), t1, t2, options);
}

double H_tilde(double x0, const Profile& xk) {
  double s = 0.0;
  for (double v : xk.by_degree()) s += xlogx(v);
  double half = 0.5 * (x0 + xk.half_edges());
  if (half < 0.0) {
    if (half < -1e-12) throw DomainError("H~: requires x0 + sum k x_k >= 0");
    half = 0.0;
  }
  return s - xlogx(half);
}

ClosedFormCost cost_closed_form(const StatePoint& x1, const StatePoint& x2) {
  ClosedFormCost out;
  const Profile z = Profile::clamped_difference(x1.xk, x2.xk);
  const double z0 = x1.x0 - x2.x0;
  if (z.empty() && z0 == 0.0 && Profile::dominated(x2.xk, x1.xk)) return out;

  const PathSegmentSpec spec = make_segment(x1, x2);
  out.beta = spec.beta;
  out.segment_case = spec.segment_case;
  out.H_z = H_tilde(z0, z);
  out.H_x2 = H_tilde(x2.x0, x2.xk);
  out.H_x1 = H_tilde(x1.x0, x1.xk);
  if (spec.beta > 0.0) {
    out.K = 0.5 * (z0 + z.half_edges()) * std::log1p(-spec.beta * spec.beta);
    for (int k = 1; k <= z.max_degree(); ++k) {
      if (z[k] > 0.0) out.K -= z[k] * std::log1p(-std::pow(spec.beta, k));
    }
    if (x2.x0 > 0.0) out.K += x2.x0 * std::log(spec.beta);
  }
  out.cost = out.H_z + out.H_x2 - out.H_x1 + out.K;
  return out;
}

FluidPath normalize_time_change(const FluidPath& path, double t1, double t2) {
  if (path.size() < 2) throw DomainError("normalize_time_change: path needs at least 2 points");
  if (!(t1 <= t2) || t1 < path.t.front() || t2 > path.t.back()) {
    throw DomainError("normalize_time_change: [t1, t2] must lie within the grid");
  }
  // Work on a copy that has t1 and t2 as grid points.
  FluidPath src = path;
  for (double tc : {t1, t2}) {
    const auto it = std::lower_bound(src.t.begin(), src.t.end(), tc);
    if (it != src.t.end() && *it == tc) continue;
    const std::size_t j = static_cast<std::size_t>(it - src.t.begin());
    const Trajectory lin = interpolate(src);
    const PathPoint pt = lin(tc);
    const double w = (tc - src.t[j - 1]) / (src.t[j] - src.t[j - 1]);
    const double psi = src.psi[j - 1] + w * (src.psi[j] - src.psi[j - 1]);
    src.t.insert(src.t.begin() + static_cast<std::ptrdiff_t>(j), tc);
    src.zeta.insert(src.zeta.begin() + static_cast<std::ptrdiff_t>(j), pt.zeta);
    src.psi.insert(src.psi.begin() + static_cast<std::ptrdiff_t>(j), psi);
  }

  const std::size_t i1 = static_cast<std::size_t>(std::lower_bound(src.t.begin(), src.t.end(), t1) - src.t.begin());
  const std::size_t i2 = static_cast<std::size_t>(std::lower_bound(src.t.begin(), src.t.end(), t2) - src.t.begin());
  const double r1 = src.r(i1);
  for (std::size_t i = i1 + 1; i <= i2; ++i) {
    if (src.r(i) > src.r(i - 1) + 1e-12) {
      std::ostringstream msg;
      msg << "normalize_time_change: r increases at t = " << src.t[i];
      throw PreconditionError(msg.str());
    }
  }

  FluidPath out;
  out.markers = path.markers;
  auto push = [&](double t, std::size_t i) {
    out.t.push_back(t);
    out.zeta.push_back(src.zeta[i]);
    out.psi.push_back(src.psi[i]);
  };
  for (std::size_t i = 0; i < i1; ++i) push(src.t[i], i);
  double last = 0.0;
  for (std::size_t i = i1; i <= i2; ++i) {
    const double u = t1 + 0.5 * (r1 - src.r(i));
    if (i > i1 && !(u > out.t.back())) continue;
    push(u, i);
    last = u;
  }
  const double shift = last - t2;
  for (std::size_t i = i2 + 1; i < src.size(); ++i) push(src.t[i] + shift, i);
  return out;
}

}  // namespace ldcm
