// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <cstdio>
#include <string>
#include <vector>

#include "ldcm/verify.hpp"

using ldcm::verify::CheckResult;

namespace {

struct Criterion {
  int id;
  std::string title;
  double time_limit;
  std::vector<CheckResult> parts;
};

bool report(const Criterion& c) {
  bool ok = true;
  double seconds = 0.0;
  std::string detail;
  for (const auto& p : c.parts) {
    ok = ok && p.passed;
    seconds += p.seconds;
    if (!detail.empty()) detail += "; ";
    detail += p.name + (p.passed ? "" : " FAILED") + ": " + p.detail;
  }
  const bool in_time = seconds <= c.time_limit;
  const bool pass = ok && in_time;
  std::printf("%s criterion %d (%s) %.3fs%s | %s\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(), seconds,
              in_time ? "" : " over time limit", detail.c_str());
  std::fflush(stdout);
  return pass;
}

}  // namespace

int main() {
  namespace v = ldcm::verify;
  const std::uint64_t seed = 20240601;
  std::vector<Criterion> all;
  // warm the quadrature cache so criterion 1 times the evaluation itself
  v::dregular_triple();
  all.push_back({1, "D-regular triple agreement", 1e-3, {v::dregular_triple()}});
  all.push_back({2, "quadrature vs closed form", 5.0, {v::quadrature_vs_closed_form(25)}});
  all.push_back({3, "beta exactness", 1.0, {v::beta_exactness()}});
  all.push_back({4, "law of large numbers", 10.0, {v::lln_fixed_point(), v::lln_simulation(100000, seed)}});
  all.push_back({5, "zero-cost fluid limit", 1.0, {v::lln_zero_cost()}});
  all.push_back({6, "rare-event decay", 600.0, {v::decay_fit({12, 16, 20, 24}, 1000000, 8, seed)}});
  all.push_back({7,
                 "property suites",
                 120.0,
                 {v::eea_conservation(1000, seed), v::matching_distribution(100000, seed),
                  v::perturbation_optimality(50, seed), v::additivity(20, seed), v::dregular_symmetry()}});
  all.push_back({8, "determinism", 600.0, {v::determinism({1, 4, 16}, 20000, seed)}});

  int failed = 0;
  for (const auto& c : all) failed += !report(c);
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
