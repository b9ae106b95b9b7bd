// Command-line front end: rates, fluid paths, simulation, estimation and the
// self-check battery.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "ldcm/errors.hpp"
#include "ldcm/estimate.hpp"
#include "ldcm/explore.hpp"
#include "ldcm/io.hpp"
#include "ldcm/lln.hpp"
#include "ldcm/optimal_path.hpp"
#include "ldcm/rates.hpp"
#include "ldcm/verify.hpp"

namespace io = ldcm::io;
using io::json;

namespace {

struct RateArgs {
  std::string p_file, q_file;
  int D = 3;
  double q = 0.5, r = 0.5, x = 0.5;
  bool as_json = false;
};

struct LlnArgs {
  std::string p_file, out, sidecar;
  double T = 0.0;
  int grid = 1001;
};

struct PathArgs {
  std::string x1_file, x2_file, out;
  int grid = 1001;
  double t1 = 0.0;
};

struct SimArgs {
  std::string p_file, out;
  std::int64_t n = 0;
  std::uint64_t seed = 1;
  bool trajectory = false;
  int grid = 2001;
  int max_components = 20;
};

struct EstimateArgs {
  std::string p_file, q_file, csv;
  std::vector<std::int64_t> n;
  double eps = 0.05;
  std::int64_t reps = 10000;
  std::uint64_t seed = 1;
  int workers = 1;
  bool fit = false;
};

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.7g", v);
  return buf;
}

void print_rate(const std::string& name, double rate, bool as_json, bool conjecture = false) {
  if (as_json) {
    json j = {{"quantity", name}, {"rate", rate}, {"limit", -rate}};
    if (conjecture) j["conjecture"] = true;
    std::cout << j.dump() << '\n';
    return;
  }
  std::cout << "rate " << short_number(rate) << '\n' << "limit " << short_number(-rate) << '\n';
  if (conjecture) std::cout << "conjecture true\n";
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw io::FormatError("cannot write " + path);
  return os;
}

int run_lln(const LlnArgs& a) {
  const auto p = io::distribution_from_json(io::read_json_file(a.p_file));
  const ldcm::LlnSummary s = ldcm::lln_summary(p);
  const double T = a.T > 0.0 ? a.T : std::max(0.5 * s.mu, s.tau_zeta);
  const ldcm::FluidPath path = ldcm::lln_path(p, ldcm::uniform_grid(T, a.grid));
  const json side = io::to_json(s);
  if (a.out.empty()) {
    io::write_path_csv(std::cout, path);
  } else {
    auto os = open_out(a.out);
    io::write_path_csv(os, path);
    std::cout << side.dump() << '\n';
  }
  if (!a.sidecar.empty() || !a.out.empty()) {
    auto os = open_out(a.sidecar.empty() ? a.out + ".json" : a.sidecar);
    os << side.dump(2) << '\n';
  }
  return 0;
}

int run_path(const PathArgs& a) {
  const auto x1 = io::state_from_json(io::read_json_file(a.x1_file));
  const auto x2 = io::state_from_json(io::read_json_file(a.x2_file));
  const ldcm::PathSegmentSpec spec = ldcm::make_segment(x1, x2, a.t1);
  const ldcm::ClosedFormCost closed = ldcm::cost_closed_form(x1, x2);
  const ldcm::PathCost quad =
      ldcm::path_cost(ldcm::minimizer_trajectory(spec), spec.t1, spec.t1 + spec.varsigma);
  const json report = {{"varsigma", spec.varsigma},
                       {"varsigma_tilde", spec.varsigma_tilde},
                       {"beta", spec.beta},
                       {"case", ldcm::to_string(spec.segment_case)},
                       {"cost_closed", closed.cost},
                       {"cost_quadrature", quad.cost},
                       {"residual", std::abs(quad.cost - closed.cost)},
                       {"pace_residual", quad.pace_residual}};
  std::cout << report.dump() << '\n';
  if (!a.out.empty()) {
    const double h = spec.varsigma > 0.0 ? spec.varsigma : 1.0;
    std::vector<double> grid = ldcm::uniform_grid(h, a.grid);
    for (double& t : grid) t += spec.t1;
    auto os = open_out(a.out);
    io::write_path_csv(os, ldcm::minimizer_path(spec, grid));
  }
  return 0;
}

int run_simulate(const SimArgs& a) {
  const auto input = io::degree_input_from_json(io::read_json_file(a.p_file));
  ldcm::DegreeCounts counts;
  int adjusted = 0;
  if (const auto* seq = std::get_if<ldcm::DegreeSequence>(&input)) {
    counts = ldcm::degree_counts(*seq);
  } else {
    if (a.n < 1) throw io::FormatError("--n is required when --p holds a distribution");
    const auto gen = ldcm::sequence_from_distribution(std::get<ldcm::DegreeDistribution>(input), a.n);
    counts = gen.counts;
    adjusted = gen.parity_adjusted_degree;
  }
  ldcm::CounterRng rng(a.seed, 0);
  const ldcm::ExplorationRecord rec = ldcm::eea_run(counts, rng, {.record_steps = a.trajectory});
  ldcm::ComponentSummary summary = ldcm::extract_components(rec);
  if (a.max_components >= 0 && summary.components.size() > static_cast<std::size_t>(a.max_components)) {
    summary.components.resize(static_cast<std::size_t>(a.max_components));
  }
  json out = io::to_json(summary);
  out["n"] = rec.n_vertices;
  out["m"] = rec.n_edges;
  out["steps"] = rec.total_steps;
  out["seed"] = a.seed;
  out["parity_adjusted_degree"] = adjusted;
  std::cout << out.dump() << '\n';
  if (a.trajectory) {
    const double T = static_cast<double>(rec.total_steps) / static_cast<double>(rec.n_vertices);
    const auto path = ldcm::empirical_path(rec, rec.n_vertices, ldcm::uniform_grid(T, a.grid));
    auto os = open_out(a.out);
    io::write_path_csv(os, path);
  }
  return 0;
}

int run_estimate(const EstimateArgs& a) {
  const auto input = io::degree_input_from_json(io::read_json_file(a.p_file));
  const ldcm::Profile q = io::profile_from_json(io::read_json_file(a.q_file));
  std::vector<ldcm::EstimateResult> results;
  if (const auto* seq = std::get_if<ldcm::DegreeSequence>(&input)) {
    results.push_back(ldcm::estimate_event_prob(ldcm::degree_counts(*seq), q, a.eps, a.reps, a.seed, a.workers));
  } else {
    if (a.n.empty()) throw io::FormatError("--n is required when --p holds a distribution");
    for (std::int64_t n : a.n) {
      results.push_back(ldcm::estimate_event_prob(std::get<ldcm::DegreeDistribution>(input), n, q, a.eps,
                                                  a.reps, a.seed, a.workers));
    }
  }
  for (const auto& r : results) std::cout << io::to_json(r).dump() << '\n';
  if (!a.csv.empty()) {
    auto os = open_out(a.csv);
    os << io::estimate_csv_header() << '\n';
    for (const auto& r : results) os << io::estimate_csv_row(r) << '\n';
  }
  if (a.fit) {
    const ldcm::RateFit fit = ldcm::rate_fit(results);
    std::cout << json{{"fit",
                       {{"slope", fit.slope},
                        {"intercept", fit.intercept},
                        {"points_used", fit.points_used},
                        {"warnings", fit.warnings}}}}
                     .dump()
              << '\n';
  }
  return 0;
}

int run_verify(bool fast) {
  const auto results = ldcm::verify::run_all(fast);
  bool all = true;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(40) << r.name << std::right
              << std::fixed << std::setprecision(3) << std::setw(9) << r.seconds << "s  "
              << std::defaultfloat << r.detail << '\n';
    all = all && r.passed;
  }
  std::cout << (all ? "all checks passed" : "some checks failed") << '\n';
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Large-deviation rates, fluid paths and simulation for the configuration model"};
  app.require_subcommand(1);

  RateArgs ra;
  auto* rate = app.add_subcommand("rate", "Static decay rates (nats per vertex)");
  rate->require_subcommand(1);
  rate->add_flag("--json", ra.as_json, "Full-precision JSON output");
  auto* r_degree = rate->add_subcommand("degree", "Component with degree configuration q");
  r_degree->add_option("--p", ra.p_file, "Degree distribution JSON")->required()->check(CLI::ExistingFile);
  r_degree->add_option("--q", ra.q_file, "Sub-profile JSON")->required()->check(CLI::ExistingFile);
  auto* r_dreg = rate->add_subcommand("dreg", "D-regular graph, component with a fraction q of vertices");
  r_dreg->add_option("--D", ra.D)->required();
  r_dreg->add_option("--q", ra.q)->required();
  auto* r_sub = rate->add_subcommand("dreg-sub", "D-regular component inside a graph with p_1 = 0");
  r_sub->add_option("--p", ra.p_file)->required()->check(CLI::ExistingFile);
  r_sub->add_option("--D", ra.D)->required();
  r_sub->add_option("--q", ra.q)->required();
  auto* r_size = rate->add_subcommand("size", "Component with a fraction r of the vertices");
  r_size->add_option("--p", ra.p_file)->required()->check(CLI::ExistingFile);
  r_size->add_option("--r", ra.r)->required();
  auto* r_largest = rate->add_subcommand("largest-conj", "Conjectured largest-component rate, D-regular");
  r_largest->add_option("--D", ra.D)->required();
  r_largest->add_option("--x", ra.x)->required();
  for (auto* sub : {r_degree, r_dreg, r_sub, r_size, r_largest}) sub->add_flag("--json", ra.as_json);

  LlnArgs la;
  auto* lln = app.add_subcommand("lln", "Fluid limit trajectory as CSV");
  lln->add_option("--p", la.p_file)->required()->check(CLI::ExistingFile);
  lln->add_option("--T", la.T, "Horizon (default: until the sleeping mass is exhausted)");
  lln->add_option("--grid", la.grid, "Number of grid points")->check(CLI::Range(2, 100000000));
  lln->add_option("--out", la.out, "CSV path (default stdout)");
  lln->add_option("--sidecar", la.sidecar, "Summary JSON path (default OUT.json)");

  PathArgs pa;
  auto* path = app.add_subcommand("path", "Optimal path between two states and its cost");
  path->add_option("--x1", pa.x1_file)->required()->check(CLI::ExistingFile);
  path->add_option("--x2", pa.x2_file)->required()->check(CLI::ExistingFile);
  path->add_option("--grid", pa.grid)->check(CLI::Range(2, 100000000));
  path->add_option("--t1", pa.t1, "Start time");
  path->add_option("--out", pa.out, "CSV path for the sampled minimizer");

  SimArgs sa;
  auto* sim = app.add_subcommand("simulate", "One exploration of a configuration-model graph");
  sim->add_option("--p", sa.p_file, "Distribution JSON or degree-sequence array")->required()->check(CLI::ExistingFile);
  sim->add_option("--n", sa.n, "Number of vertices (distribution input)");
  sim->add_option("--seed", sa.seed)->required();
  auto* traj_flag = sim->add_flag("--trajectory", sa.trajectory, "Write the empirical path CSV");
  sim->add_option("--out", sa.out, "CSV path for --trajectory");
  sim->add_option("--grid", sa.grid)->check(CLI::Range(2, 100000000));
  sim->add_option("--max-components", sa.max_components, "Components listed in the summary (-1: all)");
  traj_flag->needs(sim->get_option("--out"));

  EstimateArgs ea;
  auto* est = app.add_subcommand("estimate", "Monte Carlo probability of a component event");
  est->add_option("--p", ea.p_file)->required()->check(CLI::ExistingFile);
  est->add_option("--q", ea.q_file)->required()->check(CLI::ExistingFile);
  est->add_option("--n", ea.n, "Graph sizes (repeatable)");
  est->add_option("--eps", ea.eps)->required();
  est->add_option("--reps", ea.reps)->required();
  est->add_option("--seed", ea.seed)->required();
  est->add_option("--workers", ea.workers)->check(CLI::Range(1, 1024));
  est->add_option("--csv", ea.csv, "Also write a CSV table");
  est->add_flag("--fit", ea.fit, "Fit -log p_hat against n");

  bool fast = false;
  auto* ver = app.add_subcommand("verify", "Run the cross-consistency battery");
  ver->add_flag("--fast", fast, "Smaller sample sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*r_degree) {
      const auto p = io::distribution_from_json(io::read_json_file(ra.p_file));
      const auto q = io::profile_from_json(io::read_json_file(ra.q_file));
      const auto b = ldcm::rate_component_degree(p, q);
      if (ra.as_json) {
        std::cout << io::to_json(b).dump() << '\n';
      } else {
        print_rate("degree", b.I1, false);
        std::cout << "beta " << short_number(b.beta) << "\nbound_kind " << ldcm::to_string(b.bound_kind) << '\n';
      }
    } else if (*r_dreg) {
      print_rate("dreg", ldcm::rate_d_regular(ra.D, ra.q), ra.as_json);
    } else if (*r_sub) {
      const auto p = io::distribution_from_json(io::read_json_file(ra.p_file));
      print_rate("dreg-sub", ldcm::rate_d_regular_subgraph(p, ra.D, ra.q), ra.as_json);
    } else if (*r_size) {
      const auto p = io::distribution_from_json(io::read_json_file(ra.p_file));
      const auto res = ldcm::rate_component_size(p, ra.r);
      if (ra.as_json) {
        std::cout << json{{"quantity", "size"},
                          {"rate", res.rate},
                          {"limit", -res.rate},
                          {"argmin", io::profile_to_json(res.argmin).at("degrees")},
                          {"grid_validated", res.grid_validated}}
                         .dump()
                  << '\n';
      } else {
        print_rate("size", res.rate, false);
      }
    } else if (*r_largest) {
      const auto c = ldcm::rate_conjectured_largest(ra.D, ra.x);
      print_rate("largest-conj", c.rate, ra.as_json, c.conjecture);
    } else if (*lln) {
      return run_lln(la);
    } else if (*path) {
      return run_path(pa);
    } else if (*sim) {
      return run_simulate(sa);
    } else if (*est) {
      return run_estimate(ea);
    } else if (*ver) {
      return run_verify(fast);
    }
  } catch (const ldcm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
