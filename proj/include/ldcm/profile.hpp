#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace ldcm {

/// Nonnegative finite-support sequence indexed by degree k >= 1. Stored
/// densely: slot 0 is always zero and trailing zeros are trimmed, so
/// max_degree() is the largest k carrying positive mass.
class Profile {
 public:
  Profile() = default;
  /// by_degree[k] is the mass at degree k; by_degree[0] must be zero.
  explicit Profile(std::vector<double> by_degree);
  static Profile from_map(const std::map<int, double>& weights);

  double operator[](int k) const {
    return k >= 0 && static_cast<std::size_t>(k) < w_.size() ? w_[k] : 0.0;
  }
  int max_degree() const { return w_.empty() ? 0 : static_cast<int>(w_.size()) - 1; }
  bool empty() const { return w_.empty(); }
  /// Degree-indexed view, size max_degree()+1 (or 0 when empty).
  std::span<const double> by_degree() const { return w_; }

  double total() const;       ///< sum_k w_k
  double half_edges() const;  ///< sum_k k w_k
  std::map<int, double> to_map() const;

  /// Componentwise a <= b + slack.
  static bool dominated(const Profile& a, const Profile& b, double slack = 1e-14);
  /// Componentwise difference clamped at zero; callers validate dominance.
  static Profile clamped_difference(const Profile& a, const Profile& b);

 private:
  std::vector<double> w_;
};

/// Probability distribution on degrees k >= 1 with finite support.
class DegreeDistribution {
 public:
  explicit DegreeDistribution(Profile weights);
  static DegreeDistribution from_map(const std::map<int, double>& weights) {
    return DegreeDistribution(Profile::from_map(weights));
  }

  const Profile& weights() const { return p_; }
  double operator[](int k) const { return p_[k]; }
  int max_degree() const { return p_.max_degree(); }
  /// mu = sum_k k p_k
  double mean() const { return p_.half_edges(); }

 private:
  Profile p_;
};

/// Fluid exploration state: active half-edge density x0 and sleeping
/// vertex masses x_k.
struct StatePoint {
  double x0 = 0.0;
  Profile xk;

  /// r(x) = x0^+ + sum_k k x_k
  double r() const;
  /// r_0(x) = x0^+ / r(x) when r(x) > 0, else 0.
  double r0() const;
  /// r_k(x) = k x_k / r(x) when r(x) > 0, else 0.
  double rk(int k) const;
};

}  // namespace ldcm
