#include "ldcm/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "ldcm/bisect.hpp"
#include "ldcm/errors.hpp"

namespace ldcm {

namespace {

constexpr double kBracketLo = 1e-15;
constexpr double kBracketHi = 1.0 - 1e-15;

void require_degree(int D) {
  if (D < 3) {
    throw DomainError("D-regular rate requires D >= 3 (got " + std::to_string(D) + ")");
  }
}

}  // namespace

double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

double ell(double x) {
  if (!(x >= 0.0)) throw DomainError("ell: argument must be >= 0");
  return xlogx(x) - x + 1.0;
}

double entropy_H(const Profile& r) {
  double s = 0.0;
  for (double v : r.by_degree()) s += xlogx(v);
  return s - xlogx(0.5 * r.half_edges());
}

bool has_edge_excess(const Profile& q) { return q.half_edges() > 2.0 * q.total(); }

double beta_equation(const Profile& q, double alpha) {
  double s = -q[1];
  for (int k = 3; k <= q.max_degree(); ++k) {
    if (q[k] > 0.0) s += detail::edge_vertex_ratio(k, alpha) * k * q[k];
  }
  return s;
}

double beta_of_q(const Profile& q) {
  if (q[1] == 0.0) return 0.0;
  if (!has_edge_excess(q)) {
    throw FeasibilityError("beta(q): requires sum k q_k > 2 sum q_k when q_1 > 0");
  }
  return detail::bisect_monotone([&](double a) { return beta_equation(q, a); }, kBracketLo,
                                 kBracketHi);
}

double K_of_q(const Profile& q) {
  const double beta = beta_of_q(q);
  if (beta == 0.0) return 0.0;
  double s = 0.5 * q.half_edges() * std::log1p(-beta * beta);
  for (int k = 1; k <= q.max_degree(); ++k) {
    if (q[k] > 0.0) s -= q[k] * std::log1p(-std::pow(beta, k));
  }
  return s;
}

const char* to_string(BoundKind kind) {
  return kind == BoundKind::two_sided ? "two_sided" : "lower_only";
}

RateBreakdown rate_component_degree(const DegreeDistribution& p, const Profile& q) {
  if (!Profile::dominated(q, p.weights())) {
    throw FeasibilityError("component degree rate: q <= p violated");
  }
  if (!has_edge_excess(q)) {
    throw FeasibilityError("component degree rate: sum k q_k > 2 sum q_k violated");
  }
  const Profile rest = Profile::clamped_difference(p.weights(), q);
  RateBreakdown out;
  out.beta = beta_of_q(q);
  out.H_q = entropy_H(q);
  out.H_pq = entropy_H(rest);
  out.H_p = entropy_H(p.weights());
  out.K = K_of_q(q);
  out.I1 = out.H_q + out.H_pq - out.H_p + out.K;
  out.feasible = true;
  out.bound_kind = p[1] == 0.0 ? BoundKind::two_sided : BoundKind::lower_only;
  return out;
}

double rate_d_regular(int D, double qD) {
  require_degree(D);
  if (!(qD > 0.0 && qD <= 1.0)) throw DomainError("D-regular rate: qD must lie in (0,1]");
  return (1.0 - 0.5 * D) * (xlogx(qD) + xlogx(1.0 - qD));
}

double rate_d_regular_subgraph(const DegreeDistribution& p, int D, double qD) {
  require_degree(D);
  if (p[1] != 0.0) throw PreconditionError("D-regular subgraph rate requires p_1 = 0");
  const double pD = p[D];
  if (!(pD > 0.0)) throw DomainError("D-regular subgraph rate requires p_D > 0");
  if (!(qD > 0.0 && qD <= pD)) throw DomainError("D-regular subgraph rate: qD must lie in (0, p_D]");
  const double mu = p.mean();
  const double vertices = xlogx(qD) + xlogx(std::max(0.0, pD - qD)) - xlogx(pD);
  const double edges = xlogx(0.5 * D * qD) + xlogx(std::max(0.0, 0.5 * (mu - D * qD))) -
                       xlogx(0.5 * mu);
  return vertices - edges;
}

double component_size_objective(const DegreeDistribution& p, const Profile& q) {
  return entropy_H(q) + entropy_H(Profile::clamped_difference(p.weights(), q)) -
         entropy_H(p.weights());
}

namespace {

// Coordinate descent over the slice {0 <= q <= p, sum q = r}, moving mass
// between pairs of support coordinates.
class SizeSearch {
 public:
  SizeSearch(const DegreeDistribution& p, double r) : p_(p), r_(r) {
    for (int k = 1; k <= p.max_degree(); ++k) {
      if (p[k] > 0.0) support_.push_back(k);
    }
    hp_ = entropy_H(p.weights());
  }

  const std::vector<int>& support() const { return support_; }

  double value(const std::vector<double>& q) const {
    // q and p - q indexed like support_
    double sq = 0.0, eq = 0.0, sr = 0.0, er = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) {
      const int k = support_[i];
      const double rest = std::max(0.0, p_[k] - q[i]);
      sq += xlogx(q[i]);
      eq += k * q[i];
      sr += xlogx(rest);
      er += k * rest;
    }
    return sq - xlogx(0.5 * eq) + sr - xlogx(0.5 * er) - hp_;
  }

  std::vector<double> proportional_start() const {
    std::vector<double> q(support_.size());
    double total = 0.0;
    for (int k : support_) total += p_[k];
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = r_ * p_[support_[i]] / total;
    return q;
  }

  /// q_k = clamp(c w_k, 0, p_k) with c chosen so that sum q_k = r.
  std::vector<double> water_fill(const std::vector<double>& weights) const {
    auto fill = [&](double c) {
      double s = 0.0;
      for (std::size_t i = 0; i < support_.size(); ++i) {
        s += std::min(p_[support_[i]], c * weights[i]);
      }
      return s;
    };
    double hi = 1.0;
    while (fill(hi) < r_ && hi < 1e300) hi *= 2.0;
    const double c = detail::bisect_monotone([&](double c) { return fill(c) - r_; }, 0.0, hi);
    std::vector<double> q(support_.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = std::min(p_[support_[i]], c * weights[i]);
    // absorb residual rounding in the coordinate with most slack
    double s = 0.0;
    for (double v : q) s += v;
    std::size_t best = 0;
    for (std::size_t i = 1; i < q.size(); ++i) {
      if (p_[support_[i]] - q[i] > p_[support_[best]] - q[best]) best = i;
    }
    q[best] = std::clamp(q[best] + (r_ - s), 0.0, p_[support_[best]]);
    return q;
  }

  double descend(std::vector<double>& q, int max_sweeps) const {
    double current = value(q);
    const std::size_t m = q.size();
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
      const double before = current;
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
          const double lo = std::max(-q[i], q[j] - p_[support_[j]]);
          const double hi = std::min(p_[support_[i]] - q[i], q[j]);
          if (!(hi - lo > 1e-15)) continue;
          auto along = [&](double d) {
            std::vector<double> trial = q;
            trial[i] = std::clamp(q[i] + d, 0.0, p_[support_[i]]);
            trial[j] = std::clamp(q[j] - d, 0.0, p_[support_[j]]);
            return value(trial);
          };
          auto [d_best, v_best] = boost::math::tools::brent_find_minima(along, lo, hi, 52);
          for (double d_end : {lo, hi}) {
            const double v_end = along(d_end);
            if (v_end < v_best) {
              v_best = v_end;
              d_best = d_end;
            }
          }
          if (v_best < current) {
            q[i] = std::clamp(q[i] + d_best, 0.0, p_[support_[i]]);
            q[j] = std::clamp(q[j] - d_best, 0.0, p_[support_[j]]);
            current = value(q);
          }
        }
      }
      if (before - current <= 1e-16) break;
    }
    return current;
  }

  /// Exhaustive grid over the first |support|-1 coordinates; the last one is
  /// fixed by the sum constraint.
  std::pair<double, std::vector<double>> grid(double step) const {
    const std::size_t m = support_.size();
    std::vector<double> q(m, 0.0), best_q;
    double best = std::numeric_limits<double>::infinity();
    auto consider = [&]() {
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < m; ++i) s += q[i];
      const double last = r_ - s;
      if (last < -1e-12 || last > p_[support_[m - 1]] + 1e-12) return;
      q[m - 1] = std::clamp(last, 0.0, p_[support_[m - 1]]);
      const double v = value(q);
      if (v < best) {
        best = v;
        best_q = q;
      }
    };
    if (m == 1) {
      consider();
    } else if (m == 2) {
      const long n0 = static_cast<long>(std::floor(p_[support_[0]] / step));
      for (long a = 0; a <= n0; ++a) {
        q[0] = a * step;
        consider();
      }
    } else if (m == 3) {
      const long n0 = static_cast<long>(std::floor(p_[support_[0]] / step));
      const long n1 = static_cast<long>(std::floor(p_[support_[1]] / step));
      for (long a = 0; a <= n0; ++a) {
        q[0] = a * step;
        for (long b = 0; b <= n1; ++b) {
          q[1] = b * step;
          consider();
        }
      }
    }
    return {best, best_q};
  }

 private:
  const DegreeDistribution& p_;
  double r_;
  std::vector<int> support_;
  double hp_ = 0.0;
};

}  // namespace

ComponentSizeResult rate_component_size(const DegreeDistribution& p, double r,
                                        const ComponentSizeOptions& options) {
  if (p[1] != 0.0 || p[2] != 0.0) {
    throw PreconditionError("component size rate requires p_1 = p_2 = 0");
  }
  if (!(r > 0.0)) throw DomainError("component size rate: r must lie in (0,1]");
  if (r > p.weights().total() + 1e-12) {
    throw FeasibilityError("component size rate: no q with q <= p and sum q_k = r");
  }

  SizeSearch search(p, r);
  const auto& support = search.support();

  std::vector<double> best_q = search.proportional_start();
  double best = search.descend(best_q, options.max_sweeps);

  std::mt19937_64 gen(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < options.restarts && support.size() > 1; ++i) {
    std::vector<double> w(support.size());
    for (auto& v : w) v = 0.05 + unit(gen);
    std::vector<double> q = search.water_fill(w);
    const double v = search.descend(q, options.max_sweeps);
    if (v < best) {
      best = v;
      best_q = q;
    }
  }

  bool validated = false;
  if (static_cast<int>(support.size()) <= options.grid_max_support && options.grid_step > 0.0) {
    auto [grid_best, grid_q] = search.grid(options.grid_step);
    validated = true;
    if (!grid_q.empty() && grid_best < best) {
      double polished = search.descend(grid_q, options.max_sweeps);
      best = polished;
      best_q = grid_q;
    }
  }

  std::vector<double> dense(static_cast<std::size_t>(p.max_degree()) + 1, 0.0);
  for (std::size_t i = 0; i < support.size(); ++i) dense[support[i]] = best_q[i];
  return {best, Profile(std::move(dense)), validated};
}

ConjecturalRate rate_conjectured_largest(int D, double x) {
  require_degree(D);
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("largest-component rate: x must lie in [0,1]");
  if (x == 0.0) return {0.0, true};
  double k = std::floor(1.0 / x);
  while (k > 1.0 && k * x > 1.0) k -= 1.0;
  while ((k + 1.0) * x <= 1.0) k += 1.0;
  const double xk = std::min(1.0, k * x);
  return {(1.0 - 0.5 * D) * (k * xlogx(x) + xlogx(1.0 - xk)), true};
}

ConjecturalRate rate_conjectured_multi(int D, std::span<const double> fractions) {
  require_degree(D);
  double used = 0.0, s = 0.0;
  for (double q : fractions) {
    if (!(q > 0.0 && q <= 1.0)) throw DomainError("multi-component rate: fractions must lie in (0,1]");
    used += q;
    s += xlogx(q);
  }
  if (used > 1.0 + 1e-12) throw FeasibilityError("multi-component rate: fractions sum above 1");
  s += xlogx(std::max(0.0, 1.0 - used));
  return {(1.0 - 0.5 * D) * s, true};
}

}  // namespace ldcm
