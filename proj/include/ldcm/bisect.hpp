#pragma once

#include <cmath>

namespace ldcm::detail {

/// Root of a strictly monotone f on [lo, hi] where f(lo) and f(hi) have
/// opposite signs. Halves until f vanishes, the bracket stops shrinking or
/// max_iter is reached; returns the midpoint of the final bracket.
template <class F>
double bisect_monotone(F&& f, double lo, double hi, int max_iter = 200) {
  const bool increasing = f(lo) < f(hi);
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v = f(mid);
    if (v == 0.0) return mid;
    if ((v < 0.0) == increasing) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// (a - a^{k-1}) / (1 - a^k) for k >= 3 written as a ratio of geometric sums,
/// which stays accurate as a -> 1.
inline double edge_vertex_ratio(int k, double a) {
  double num = 0.0, den = 0.0, pw = 1.0;
  for (int j = 0; j < k; ++j) {
    if (j < k - 2) num += pw;
    den += pw;
    pw *= a;
  }
  return a * num / den;
}

}  // namespace ldcm::detail
