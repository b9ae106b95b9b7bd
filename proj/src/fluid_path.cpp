#include "ldcm/fluid_path.hpp"

#include <algorithm>
#include <memory>

#include "ldcm/errors.hpp"

namespace ldcm {

StatePoint FluidPath::state(std::size_t i) const {
  const auto& z = zeta.at(i);
  std::vector<double> xk(z.begin(), z.end());
  StatePoint s;
  s.x0 = xk.empty() ? 0.0 : xk[0];
  if (!xk.empty()) xk[0] = 0.0;
  for (auto& v : xk) v = std::max(v, 0.0);
  s.xk = Profile(std::move(xk));
  return s;
}

double FluidPath::r(std::size_t i) const {
  const auto& z = zeta.at(i);
  double s = z.empty() ? 0.0 : std::max(z[0], 0.0);
  for (std::size_t k = 1; k < z.size(); ++k) s += static_cast<double>(k) * z[k];
  return s;
}

std::vector<double> uniform_grid(double T, int n) {
  if (n < 2) throw DomainError("grid: need at least 2 points");
  if (!(T > 0.0)) throw DomainError("grid: horizon must be positive");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[i] = T * i / (n - 1);
  g.back() = T;
  return g;
}

Trajectory interpolate(const FluidPath& path) {
  if (path.size() < 2) throw DomainError("interpolate: path needs at least 2 points");
  auto shared = std::make_shared<const FluidPath>(path);
  return [shared](double t) {
    const FluidPath& p = *shared;
    const std::size_t K = p.zeta.front().size();
    PathPoint out{std::vector<double>(K, 0.0), std::vector<double>(K, 0.0)};
    if (t <= p.t.front()) {
      out.zeta = p.zeta.front();
      return out;
    }
    if (t >= p.t.back()) {
      out.zeta = p.zeta.back();
      return out;
    }
    const auto it = std::upper_bound(p.t.begin(), p.t.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - p.t.begin());
    const std::size_t i = j - 1;
    const double h = p.t[j] - p.t[i];
    const double w = (t - p.t[i]) / h;
    for (std::size_t k = 0; k < K; ++k) {
      const double a = p.zeta[i][k], b = p.zeta[j][k];
      out.zeta[k] = a + w * (b - a);
      out.dzeta[k] = (b - a) / h;
    }
    return out;
  };
}

FluidPath sample(const Trajectory& traj, std::span<const double> grid,
                 const std::function<double(double, const PathPoint&)>& psi_of) {
  FluidPath out;
  out.t.assign(grid.begin(), grid.end());
  out.zeta.reserve(grid.size());
  out.psi.reserve(grid.size());
  for (double t : grid) {
    PathPoint pt = traj(t);
    out.psi.push_back(psi_of(t, pt));
    out.zeta.push_back(std::move(pt.zeta));
  }
  return out;
}

}  // namespace ldcm
