#pragma once

#include <functional>
#include <vector>

namespace ldcm {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule; nodes from Newton iteration on the Legendre recurrence.
/// Cached for repeated n.
const GaussRule& gauss_legendre(int n);

/// Composite rule over [a, b] with the given panel breakpoints (a and b are
/// added implicitly; breakpoints outside (a, b) are ignored).
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        std::vector<double> breaks, int points = 64);

/// Breakpoints clustered geometrically toward both ends of [a, b]: panel
/// widths shrink by `ratio` per level down to `smallest` relative width.
std::vector<double> graded_breaks(double a, double b, double ratio = 0.25,
                                  double smallest = 1e-6, int interior = 8);

}  // namespace ldcm
