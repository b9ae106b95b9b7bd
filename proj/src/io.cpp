#include "ldcm/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace ldcm::io {

namespace {

int parse_degree(const std::string& key) {
  int k = 0;
  const auto* end = key.data() + key.size();
  const auto [ptr, ec] = std::from_chars(key.data(), end, k);
  if (ec != std::errc{} || ptr != end || k < 1) throw FormatError("degree key '" + key + "' is not a positive integer");
  return k;
}

double number(const json& j, const char* what) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  if (!j.is_number()) throw FormatError(std::string(what) + " must be a number");
  return j.get<double>();
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

Profile profile_from_json(const json& j) {
  const json& m = j.is_object() && j.contains("degrees") ? j.at("degrees") : j;
  if (!m.is_object()) throw FormatError("expected an object mapping degrees to weights");
  std::map<int, double> w;
  for (const auto& [key, value] : m.items()) w[parse_degree(key)] = number(value, "weight");
  return Profile::from_map(w);
}

json profile_to_json(const Profile& p) {
  json m = json::object();
  for (const auto& [k, v] : p.to_map()) m[std::to_string(k)] = v;
  return {{"degrees", m}};
}

DegreeDistribution distribution_from_json(const json& j) { return DegreeDistribution(profile_from_json(j)); }

json distribution_to_json(const DegreeDistribution& p) { return profile_to_json(p.weights()); }

StatePoint state_from_json(const json& j) {
  if (!j.is_object() || !j.contains("x0") || !j.contains("xk")) {
    throw FormatError("state file must contain \"x0\" and \"xk\"");
  }
  StatePoint x;
  x.x0 = number(j.at("x0"), "x0");
  x.xk = profile_from_json(j.at("xk"));
  return x;
}

json state_to_json(const StatePoint& x) {
  return {{"x0", x.x0}, {"xk", profile_to_json(x.xk).at("degrees")}};
}

std::variant<DegreeSequence, DegreeDistribution> degree_input_from_json(const json& j) {
  if (j.is_array()) {
    DegreeSequence d;
    for (const auto& v : j) {
      if (!v.is_number_integer()) throw FormatError("degree sequence entries must be integers");
      d.push_back(v.get<int>());
    }
    return d;
  }
  return distribution_from_json(j);
}

json to_json(const RateBreakdown& r) {
  return {{"beta", r.beta},
          {"H_q", r.H_q},
          {"H_pq", r.H_pq},
          {"H_p", r.H_p},
          {"K", r.K},
          {"I1", r.I1},
          {"limit", -r.I1},
          {"feasible", r.feasible},
          {"bound_kind", to_string(r.bound_kind)}};
}

json to_json(const LlnSummary& s) {
  return {{"mu", s.mu},
          {"nu", s.nu},
          {"rho", s.rho},
          {"tau", s.tau},
          {"tau_zeta", s.tau_zeta},
          {"giant_fraction", s.giant_fraction},
          {"supercritical", s.supercritical}};
}

json to_json(const EstimateResult& r) {
  return {{"n", r.n},
          {"eps", r.eps},
          {"reps", r.reps},
          {"hits", r.hits},
          {"p_hat", r.p_hat},
          {"ci_low", r.ci_low},
          {"ci_high", r.ci_high},
          {"per_n_rate", finite_or_null(r.per_n_rate)},
          {"seed", r.seed},
          {"parity_adjusted_degree", r.parity_adjusted_degree}};
}

EstimateResult estimate_from_json(const json& j) {
  EstimateResult r;
  r.n = j.at("n").get<std::int64_t>();
  r.eps = number(j.at("eps"), "eps");
  r.reps = j.at("reps").get<std::int64_t>();
  r.hits = j.at("hits").get<std::int64_t>();
  r.p_hat = number(j.at("p_hat"), "p_hat");
  r.ci_low = number(j.at("ci_low"), "ci_low");
  r.ci_high = number(j.at("ci_high"), "ci_high");
  r.per_n_rate = number(j.at("per_n_rate"), "per_n_rate");
  r.seed = j.at("seed").get<std::uint64_t>();
  r.parity_adjusted_degree = j.value("parity_adjusted_degree", 0);
  return r;
}

json to_json(const ComponentSummary& s, bool with_components) {
  json out = {{"largest_fraction", s.largest_fraction}, {"n_components", s.n_components}};
  if (with_components) {
    json list = json::array();
    for (const auto& c : s.components) {
      json config = json::object();
      for (std::size_t k = 1; k < c.degree_config.size(); ++k) {
        if (c.degree_config[k] > 0) config[std::to_string(k)] = c.degree_config[k];
      }
      list.push_back({{"vertices", c.n_vertices}, {"edges", c.n_edges}, {"degrees", config}});
    }
    out["components"] = std::move(list);
  }
  return out;
}

void write_path_csv(std::ostream& os, const FluidPath& path) {
  const int K = path.max_degree();
  os << "t";
  for (int k = 0; k <= K; ++k) os << ",zeta_" << k;
  os << ",psi\n";
  for (std::size_t i = 0; i < path.size(); ++i) {
    os << csv_number(path.t[i]);
    for (double v : path.zeta[i]) os << ',' << csv_number(v);
    os << ',' << csv_number(path.psi[i]) << '\n';
  }
}

FluidPath read_path_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("path CSV: missing header");
  std::size_t columns = 1;
  for (char c : line) columns += c == ',' ? 1 : 0;
  if (columns < 3) throw FormatError("path CSV: expected t, zeta_0.., psi columns");
  FluidPath path;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc{} || ptr != cell.data() + cell.size()) throw FormatError("path CSV: bad number '" + cell + "'");
      row.push_back(v);
    }
    if (row.size() != columns) throw FormatError("path CSV: ragged row");
    path.t.push_back(row.front());
    path.psi.push_back(row.back());
    path.zeta.emplace_back(row.begin() + 1, row.end() - 1);
  }
  return path;
}

std::string estimate_csv_header() { return "n,p_hat,ci_low,ci_high,per_n_rate"; }

std::string estimate_csv_row(const EstimateResult& r) {
  return std::to_string(r.n) + ',' + csv_number(r.p_hat) + ',' + csv_number(r.ci_low) + ',' +
         csv_number(r.ci_high) + ',' + csv_number(r.per_n_rate);
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace ldcm::io
