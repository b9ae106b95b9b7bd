#include "ldcm/profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ldcm/errors.hpp"

namespace ldcm {

Profile::Profile(std::vector<double> by_degree) : w_(std::move(by_degree)) {
  if (!w_.empty() && w_[0] != 0.0) {
    throw DomainError("profile: degree 0 must carry no mass");
  }
  for (std::size_t k = 0; k < w_.size(); ++k) {
    if (!std::isfinite(w_[k]) || w_[k] < 0.0) {
      throw DomainError("profile: mass at degree " + std::to_string(k) +
                        " must be finite and nonnegative");
    }
  }
  while (!w_.empty() && w_.back() == 0.0) w_.pop_back();
}

Profile Profile::from_map(const std::map<int, double>& weights) {
  int kmax = 0;
  for (const auto& [k, v] : weights) {
    if (k < 1) throw DomainError("profile: degrees must be positive integers");
    kmax = std::max(kmax, k);
  }
  std::vector<double> w(static_cast<std::size_t>(kmax) + 1, 0.0);
  for (const auto& [k, v] : weights) w[k] = v;
  if (kmax == 0) w.clear();
  return Profile(std::move(w));
}

double Profile::total() const {
  double s = 0.0;
  for (double v : w_) s += v;
  return s;
}

double Profile::half_edges() const {
  double s = 0.0;
  for (std::size_t k = 1; k < w_.size(); ++k) s += static_cast<double>(k) * w_[k];
  return s;
}

std::map<int, double> Profile::to_map() const {
  std::map<int, double> out;
  for (std::size_t k = 1; k < w_.size(); ++k) {
    if (w_[k] > 0.0) out[static_cast<int>(k)] = w_[k];
  }
  return out;
}

bool Profile::dominated(const Profile& a, const Profile& b, double slack) {
  for (int k = 1; k <= a.max_degree(); ++k) {
    if (a[k] > b[k] + slack) return false;
  }
  return true;
}

Profile Profile::clamped_difference(const Profile& a, const Profile& b) {
  const int kmax = std::max(a.max_degree(), b.max_degree());
  std::vector<double> w(static_cast<std::size_t>(kmax) + 1, 0.0);
  for (int k = 1; k <= kmax; ++k) w[k] = std::max(0.0, a[k] - b[k]);
  if (kmax == 0) w.clear();
  return Profile(std::move(w));
}

DegreeDistribution::DegreeDistribution(Profile weights) : p_(std::move(weights)) {
  if (p_.empty()) throw DomainError("degree distribution: empty support");
  const double s = p_.total();
  if (std::abs(s - 1.0) > 1e-12) {
    throw DomainError("degree distribution: weights sum to " + std::to_string(s) +
                      ", expected 1");
  }
}

double StatePoint::r() const { return std::max(x0, 0.0) + xk.half_edges(); }

double StatePoint::r0() const {
  const double rr = r();
  return rr > 0.0 && std::isfinite(rr) ? std::max(x0, 0.0) / rr : 0.0;
}

double StatePoint::rk(int k) const {
  const double rr = r();
  return rr > 0.0 && std::isfinite(rr) ? k * xk[k] / rr : 0.0;
}

}  // namespace ldcm
