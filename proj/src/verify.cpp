#include "ldcm/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "ldcm/errors.hpp"
#include "ldcm/estimate.hpp"
#include "ldcm/explore.hpp"
#include "ldcm/lln.hpp"
#include "ldcm/optimal_path.hpp"
#include "ldcm/rates.hpp"

namespace ldcm::verify {

namespace {

CheckResult timed(const std::string& name, const std::function<bool(std::ostringstream&)>& body) {
  CheckResult out;
  out.name = name;
  std::ostringstream detail;
  detail.precision(10);
  const auto start = std::chrono::steady_clock::now();
  try {
    out.passed = body(detail);
  } catch (const std::exception& e) {
    out.passed = false;
    detail << "error: " << e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.detail = detail.str();
  return out;
}

StatePoint state(double x0, const std::map<int, double>& xk) { return {x0, Profile::from_map(xk)}; }

double uniform(std::mt19937_64& gen, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(gen);
}

bool excess(const StatePoint& x1, const StatePoint& x2) {
  double edges = x1.x0 - x2.x0, vertices = 0.0;
  for (int k = 1; k <= x1.xk.max_degree(); ++k) {
    const double z = x1.xk[k] - x2.xk[k];
    edges += k * z;
    vertices += z;
  }
  return edges > 2.0 * vertices;
}

Segment random_case_i(std::mt19937_64& gen) {
  std::map<int, double> a, b;
  for (int k = 2; k <= 5; ++k) {
    a[k] = uniform(gen, 0.05, 0.5);
    b[k] = a[k] * uniform(gen, 0.1, 0.9);
  }
  if (uniform(gen, 0, 1) < 0.5) a[1] = b[1] = uniform(gen, 0.05, 0.3);
  const double x0 = uniform(gen, 0, 1) < 0.5 ? 0.0 : uniform(gen, 0.0, 0.5);
  return {state(x0, a), state(0.0, b)};
}

Segment random_case_ii(std::mt19937_64& gen) {
  for (;;) {
    std::map<int, double> a, b;
    a[1] = uniform(gen, 0.05, 0.4);
    b[1] = a[1] * uniform(gen, 0.1, 0.9);
    for (int k = 3; k <= 5; ++k) {
      a[k] = uniform(gen, 0.05, 0.5);
      b[k] = a[k] * uniform(gen, 0.1, 0.9);
    }
    const double x0a = uniform(gen, 0.0, 0.6);
    const double x0b = uniform(gen, 0, 1) < 0.5 ? 0.0 : uniform(gen, 0.0, 0.4);
    Segment s{state(x0a, a), state(x0b, b)};
    if (excess(s.first, s.second) && varsigma(s.first, s.second) > 0.0) return s;
  }
}

/// Components of a multigraph on n vertices, as sorted vertex counts.
std::vector<int> component_sizes(int n, const std::vector<Edge>& edges) {
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  for (const auto& [u, v] : edges) parent[find(u)] = find(v);
  std::map<int, int> sizes;
  for (int v = 0; v < n; ++v) ++sizes[find(v)];
  std::vector<int> out;
  for (const auto& [root, s] : sizes) out.push_back(s);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

void enumerate_matchings(std::vector<int>& stubs, std::vector<Edge>& acc,
                         const std::function<void(const std::vector<Edge>&)>& visit) {
  if (stubs.empty()) {
    visit(acc);
    return;
  }
  const int first = stubs.front();
  for (std::size_t j = 1; j < stubs.size(); ++j) {
    std::vector<int> rest;
    for (std::size_t i = 1; i < stubs.size(); ++i) {
      if (i != j) rest.push_back(stubs[i]);
    }
    acc.emplace_back(first, stubs[j]);
    enumerate_matchings(rest, acc, visit);
    acc.pop_back();
  }
}

}  // namespace

std::vector<Segment> segment_battery(int count, std::uint64_t seed) {
  std::vector<Segment> out = {
      {state(0.0, {{3, 1.0}}), state(0.0, {{3, 0.5}})},
      {state(1.0, {{3, 1.0}}), state(0.5, {{3, 0.5}})},
      {state(0.0, {{1, 0.5}, {3, 0.5}}), state(0.0, {{1, 0.4}, {3, 0.2}})},
  };
  std::mt19937_64 gen(seed);
  for (int i = 0; static_cast<int>(out.size()) < count; ++i) {
    out.push_back(i % 2 == 0 ? random_case_i(gen) : random_case_ii(gen));
  }
  out.resize(static_cast<std::size_t>(std::max(count, 0)));
  return out;
}

CheckResult dregular_triple() {
  return timed("D-regular triple agreement", [](std::ostringstream& d) {
    const double target = 0.5 * std::numbers::ln2;
    const double a = rate_d_regular(3, 0.5);
    const double b =
        rate_component_degree(DegreeDistribution::from_map({{3, 1.0}}), Profile::from_map({{3, 0.5}})).I1;
    const double c = cost_closed_form(state(0.0, {{3, 1.0}}), state(0.0, {{3, 0.5}})).cost;
    d << "dreg " << a << ", I1 " << b << ", closed " << c;
    return std::abs(a - target) <= 1e-9 && std::abs(b - target) <= 1e-9 && std::abs(c - target) <= 1e-9;
  });
}

CheckResult quadrature_vs_closed_form(int count, double tolerance) {
  return timed("quadrature vs closed form", [=](std::ostringstream& d) {
    double worst = 0.0;
    int case_i = 0, case_ii = 0;
    for (const auto& [x1, x2] : segment_battery(count, 7)) {
      const PathSegmentSpec spec = make_segment(x1, x2);
      const double quad = path_cost(minimizer_trajectory(spec), spec.t1, spec.t1 + spec.varsigma).cost;
      const double closed = cost_closed_form(x1, x2).cost;
      worst = std::max(worst, std::abs(quad - closed));
      (spec.segment_case == SegmentCase::case_i ? case_i : case_ii) += 1;
    }
    d << count << " segments (" << case_i << " case i, " << case_ii << " case ii), max gap " << worst;
    return worst <= tolerance && case_i > 0 && case_ii > 0;
  });
}

CheckResult beta_exactness() {
  return timed("beta exactness", [](std::ostringstream& d) {
    const double b1 = beta_of_q(Profile::from_map({{1, 0.1}, {3, 0.3}}));
    const double b2 = beta_of_q(Profile::from_map({{1, 0.2}, {4, 0.2}}));
    const double k1 = K_of_q(Profile::from_map({{1, 0.1}, {3, 0.3}}));
    const double e1 = std::abs(b1 - (4.0 - std::sqrt(15.0)));
    const double e2 = std::abs(b2 - (2.0 - std::sqrt(3.0)));
    // extended-precision value of K at beta = 4 - sqrt(15)
    const double e3 = std::abs(k1 - 0.006066873509048356);
    d << "errors " << e1 << ", " << e2 << ", K " << e3;
    return e1 <= 1e-9 && e2 <= 1e-9 && e3 <= 1e-6;
  });
}

CheckResult rate_vs_closed_form(int count, std::uint64_t seed) {
  return timed("component rate vs closed-form cost", [=](std::ostringstream& d) {
    std::mt19937_64 gen(seed);
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
      std::map<int, double> p, q;
      double total = 0.0;
      for (int k = 1; k <= 5; ++k) total += p[k] = uniform(gen, 0.05, 1.0);
      if (i % 2 == 0) p.erase(1);
      total = 0.0;
      for (const auto& [k, v] : p) total += v;
      for (auto& [k, v] : p) v /= total;
      for (const auto& [k, v] : p) q[k] = v * uniform(gen, 0.05, 0.95);
      if (p.count(1)) q[1] = std::min(q[1], 0.3 * p[1]);
      const Profile qp = Profile::from_map(q);
      if (!has_edge_excess(qp)) continue;
      const DegreeDistribution dist = DegreeDistribution::from_map(p);
      const double I1 = rate_component_degree(dist, qp).I1;
      const double closed =
          cost_closed_form({0.0, dist.weights()}, {0.0, Profile::clamped_difference(dist.weights(), qp)}).cost;
      worst = std::max(worst, std::abs(I1 - closed));
    }
    d << "max |I1 - closed| " << worst;
    return worst <= 1e-12;
  });
}

CheckResult lln_fixed_point() {
  return timed("LLN fixed point", [](std::ostringstream& d) {
    const auto p = DegreeDistribution::from_map({{1, 0.5}, {3, 0.5}});
    const double rho = survival_rho(p), g = giant_fraction(p);
    d << "rho " << rho << ", giant " << g;
    return std::abs(rho - 1.0 / 3.0) <= 1e-10 && std::abs(g - 22.0 / 27.0) <= 1e-12;
  });
}

CheckResult lln_simulation(std::int64_t n, std::uint64_t seed, double fraction_tol, double sup_tol) {
  return timed("LLN simulation", [=](std::ostringstream& d) {
    const auto p = DegreeDistribution::from_map({{1, 0.5}, {3, 0.5}});
    const LlnCheck c = lln_check(p, n, seed);
    d << "n " << n << ", largest " << c.largest_fraction << " (target " << 22.0 / 27.0 << "), sup distance "
      << c.sup_distance;
    return std::abs(c.largest_fraction - 22.0 / 27.0) <= fraction_tol && c.sup_distance <= sup_tol;
  });
}

CheckResult lln_zero_cost(double tolerance) {
  return timed("LLN zero cost", [=](std::ostringstream& d) {
    const auto p = DegreeDistribution::from_map({{1, 0.5}, {3, 0.5}});
    const LlnSummary s = lln_summary(p);
    const PathCost c = path_cost(lln_trajectory(p), 0.0, s.tau);
    d << "cost on [0, tau] " << c.cost << ", pace residual " << c.pace_residual;
    return std::abs(c.cost) <= tolerance;
  });
}

CheckResult eea_conservation(int sequences, std::uint64_t seed) {
  return timed("EEA conservation", [=](std::ostringstream& d) {
    std::mt19937_64 gen(seed);
    int failures = 0;
    std::string first;
    auto fail = [&](int i, const std::string& why) {
      if (failures++ == 0) first = "sequence " + std::to_string(i) + ": " + why;
    };
    for (int i = 0; i < sequences; ++i) {
      const int n = std::uniform_int_distribution<int>(1, 200)(gen);
      const int dmax = std::uniform_int_distribution<int>(1, 7)(gen);
      DegreeSequence degrees(static_cast<std::size_t>(n));
      long long sum = 0;
      for (auto& v : degrees) sum += v = std::uniform_int_distribution<int>(1, dmax)(gen);
      if (sum % 2 != 0) ++degrees.front();
      CounterRng rng(seed, static_cast<std::uint64_t>(i));
      const ExplorationRecord rec = eea_run(std::span<const int>(degrees), rng, {.record_steps = true});
      if (!rec.complete) fail(i, "incomplete");
      if (rec.total_steps > rec.n_edges + rec.n_vertices) fail(i, "step bound");

      DegreeCounts sleeping = rec.initial_counts;
      long long S = 0;
      for (std::size_t k = 1; k < sleeping.size(); ++k) S += sleeping[k] * static_cast<long long>(k);
      long long prev_r = S;
      std::size_t excursion = 0;
      for (std::size_t j = 1; j < rec.steps.size(); ++j) {
        const auto& prev = rec.steps[j - 1];
        const auto& s = rec.steps[j];
        if (s.woken_degree > 0) {
          const int k = s.woken_degree;
          const long long expect = prev.active == 0 ? k : prev.active + k - 2;
          if (s.active != expect) fail(i, "wake step changed A wrongly");
          --sleeping[static_cast<std::size_t>(k)];
          S -= k;
        } else if (s.active != prev.active - 2) {
          fail(i, "kill step did not remove two half-edges");
        }
        const long long r = std::max<long long>(s.active - 1, 0) + S;
        if (r > prev_r) fail(i, "r increased");
        prev_r = r;
        if (s.active == 0) {
          if (excursion >= rec.excursions.size() ||
              rec.excursions[excursion].second != static_cast<std::int64_t>(j)) {
            fail(i, "A = 0 away from an excursion end");
          }
          ++excursion;
        }
      }
      if (excursion != rec.excursions.size()) fail(i, "excursion count");
      if (rec.eta_increments != static_cast<std::int64_t>(rec.components.size())) fail(i, "restart count");
      DegreeCounts total(rec.initial_counts.size(), 0);
      std::int64_t edges = 0;
      for (const auto& c : rec.components) {
        for (std::size_t k = 1; k < c.degree_config.size(); ++k) total[k] += c.degree_config[k];
        edges += c.n_edges;
      }
      for (std::size_t k = 1; k < total.size(); ++k) {
        if (total[k] != rec.initial_counts[k]) fail(i, "degree histogram not conserved");
      }
      if (edges != rec.n_edges) fail(i, "edge count");
    }
    d << sequences << " sequences, " << failures << " violations";
    if (failures > 0) d << "; first: " << first;
    return failures == 0;
  });
}

CheckResult matching_distribution(int runs, std::uint64_t seed, double tv_tol) {
  return timed("exploration vs matching enumeration", [=](std::ostringstream& d) {
    const DegreeSequence degrees = {1, 1, 1, 1, 2};
    std::vector<int> stubs;
    for (std::size_t v = 0; v < degrees.size(); ++v) stubs.insert(stubs.end(), degrees[v], static_cast<int>(v));
    std::map<std::vector<int>, double> exact;
    int matchings = 0;
    std::vector<Edge> acc;
    enumerate_matchings(stubs, acc, [&](const std::vector<Edge>& m) {
      exact[component_sizes(static_cast<int>(degrees.size()), m)] += 1.0;
      ++matchings;
    });
    for (auto& [k, v] : exact) v /= matchings;

    const DegreeCounts counts = degree_counts(degrees);
    std::map<std::vector<int>, double> seen;
    for (int i = 0; i < runs; ++i) {
      CounterRng rng(seed, static_cast<std::uint64_t>(i));
      const ExplorationRecord rec = eea_run(counts, rng);
      std::vector<int> sizes;
      for (const auto& c : rec.components) sizes.push_back(static_cast<int>(c.n_vertices));
      std::sort(sizes.begin(), sizes.end(), std::greater<>());
      seen[sizes] += 1.0 / runs;
    }
    double tv = 0.0;
    for (const auto& [k, v] : exact) tv += std::abs(v - (seen.count(k) ? seen.at(k) : 0.0));
    for (const auto& [k, v] : seen) {
      if (!exact.count(k)) tv += v;
    }
    tv *= 0.5;
    d << matchings << " matchings, " << runs << " runs, TV " << tv;
    return matchings == 15 && tv <= tv_tol;
  });
}

CheckResult perturbation_optimality(int count, std::uint64_t seed, double tolerance) {
  return timed("perturbation optimality", [=](std::ostringstream& d) {
    const PathSegmentSpec spec = make_segment(state(0.0, {{3, 1.0}}), state(0.0, {{3, 0.5}}));
    const double t1 = spec.t1, h = spec.varsigma;
    const Trajectory base = minimizer_trajectory(spec);
    const double base_cost = path_cost(base, t1, t1 + h).cost;

    std::mt19937_64 gen(seed);
    double worst = kInfinity;
    int evaluated = 0, shrunk = 0;
    for (int i = 0; i < count; ++i) {
      double a[4];
      for (double& v : a) v = uniform(gen, -1.0, 1.0);
      // theta(s) = s^2 (1-s)^2 g(s), g a short cosine series
      auto theta = [a](double s, double& ds) {
        double g = 0.0, dg = 0.0;
        for (int j = 0; j < 4; ++j) {
          g += a[j] * std::cos(j * std::numbers::pi * s);
          dg -= a[j] * j * std::numbers::pi * std::sin(j * std::numbers::pi * s);
        }
        const double b = s * s * (1 - s) * (1 - s);
        const double db = 2 * s * (1 - s) * (1 - 2 * s);
        ds = db * g + b * dg;
        return b * g;
      };
      for (double eps : {0.01, 0.05}) {
        double amp = eps;
        Trajectory perturbed = [&, amp_ref = &amp](double t) {
          PathPoint pt = base(t);
          const double s = std::clamp((t - t1) / h, 0.0, 1.0);
          double ds = 0.0;
          const double th = theta(s, ds);
          pt.zeta[3] += *amp_ref * th;
          pt.dzeta[3] += *amp_ref * ds / h;
          pt.zeta[0] -= 3.0 * *amp_ref * th;
          pt.dzeta[0] -= 3.0 * *amp_ref * ds / h;
          return pt;
        };
        auto feasible = [&] {
          for (int j = 1; j < 2000; ++j) {
            const PathPoint pt = perturbed(t1 + h * j / 2000.0);
            if (pt.zeta[3] < 0 || pt.zeta[0] < 0 || pt.dzeta[3] > 0 || pt.dzeta[3] < -1) return false;
          }
          return true;
        };
        while (!feasible()) {
          amp *= 0.5;
          ++shrunk;
        }
        const double c = path_cost(perturbed, t1, t1 + h).cost;
        worst = std::min(worst, c - base_cost);
        ++evaluated;
      }
    }
    d << evaluated << " perturbed paths (" << shrunk << " amplitude halvings for feasibility), base cost "
      << base_cost << ", min(cost - base) " << worst;
    return worst >= -tolerance;
  });
}

CheckResult additivity(int pairs, std::uint64_t seed, double tolerance) {
  return timed("additivity of minimizer costs", [=](std::ostringstream& d) {
    std::mt19937_64 gen(seed);
    double worst = 0.0;
    for (int i = 0; i < pairs; ++i) {
      std::map<int, double> p;
      double total = 0.0;
      for (int k = 3; k <= 5; ++k) total += p[k] = uniform(gen, 0.05, 1.0);
      for (auto& [k, v] : p) v /= total;
      std::map<int, double> q, qbar;
      for (const auto& [k, v] : p) {
        q[k] = v * uniform(gen, 0.05, 0.45);
        qbar[k] = v * uniform(gen, 0.05, 0.45);
      }
      const Profile P = Profile::from_map(p), Q = Profile::from_map(q), QB = Profile::from_map(qbar);
      const StatePoint full{0.0, P};
      const StatePoint minus_qb{0.0, Profile::clamped_difference(P, QB)};
      const StatePoint minus_q{0.0, Profile::clamped_difference(P, Q)};
      const StatePoint minus_both_a{0.0, Profile::clamped_difference(minus_qb.xk, Q)};
      const StatePoint minus_both_b{0.0, Profile::clamped_difference(minus_q.xk, QB)};
      const double lhs = cost_closed_form(full, minus_qb).cost + cost_closed_form(minus_qb, minus_both_a).cost;
      const double rhs = cost_closed_form(full, minus_q).cost + cost_closed_form(minus_q, minus_both_b).cost;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    d << pairs << " pairs, max difference " << worst;
    return worst <= tolerance;
  });
}

CheckResult dregular_symmetry() {
  return timed("D-regular q <-> 1-q symmetry", [](std::ostringstream& d) {
    std::mt19937_64 gen(11);
    int mismatches = 0, trials = 0;
    for (int D = 3; D <= 8; ++D) {
      for (int i = 0; i < 200; ++i) {
        // q in [1/2, 1) makes 1 - q exact, so both calls see the same pair
        const double q = uniform(gen, 0.5, 1.0);
        mismatches += rate_d_regular(D, q) != rate_d_regular(D, 1.0 - q);
        ++trials;
      }
      for (int j = 1; j < 64; ++j) {
        mismatches += rate_d_regular(D, j / 64.0) != rate_d_regular(D, 1.0 - j / 64.0);
        ++trials;
      }
    }
    d << trials << " pairs, " << mismatches << " mismatches";
    return mismatches == 0;
  });
}

CheckResult decay_fit(const std::vector<std::int64_t>& ns, std::int64_t reps, int workers, std::uint64_t seed,
                      double slope_lo, double slope_hi) {
  return timed("3-regular decay fit", [=](std::ostringstream& d) {
    const auto p = DegreeDistribution::from_map({{3, 1.0}});
    const Profile q = Profile::from_map({{3, 0.5}});
    std::vector<EstimateResult> results;
    for (std::int64_t n : ns) {
      results.push_back(estimate_event_prob(p, n, q, 1.0 / static_cast<double>(n), reps, seed, workers));
      d << "n=" << n << " p_hat=" << results.back().p_hat << "; ";
    }
    const RateFit fit = rate_fit(results);
    d << "slope " << fit.slope << " (theory " << 0.5 * std::numbers::ln2 << ")";
    return fit.slope >= slope_lo && fit.slope <= slope_hi;
  });
}

CheckResult determinism(const std::vector<int>& workers, std::int64_t reps, std::uint64_t seed) {
  return timed("determinism across workers", [=](std::ostringstream& d) {
    const auto p = DegreeDistribution::from_map({{3, 1.0}});
    const Profile q = Profile::from_map({{3, 0.5}});
    std::vector<EstimateResult> results;
    for (int w : workers) results.push_back(estimate_event_prob(p, 20, q, 0.05, reps, seed, w));
    bool same = true;
    for (const auto& r : results) same = same && r == results.front();
    d << "hits " << results.front().hits << " of " << reps << " for workers";
    for (int w : workers) d << ' ' << w;
    return same;
  });
}

std::vector<CheckResult> run_all(bool fast) {
  std::vector<CheckResult> out;
  out.push_back(dregular_triple());
  out.push_back(beta_exactness());
  out.push_back(dregular_symmetry());
  out.push_back(quadrature_vs_closed_form(fast ? 8 : 25));
  out.push_back(rate_vs_closed_form(fast ? 20 : 200, 3));
  out.push_back(additivity(20, 5));
  out.push_back(lln_fixed_point());
  out.push_back(lln_zero_cost());
  out.push_back(eea_conservation(fast ? 100 : 1000, 17));
  out.push_back(matching_distribution(fast ? 20000 : 100000, 23));
  if (!fast) {
    out.push_back(perturbation_optimality(50, 29));
    out.push_back(lln_simulation(100000, 31));
    out.push_back(determinism({1, 4, 16}, 20000, 37));
  }
  return out;
}

}  // namespace ldcm::verify
