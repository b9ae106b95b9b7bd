#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <vector>

#include "ldcm/errors.hpp"
#include "ldcm/estimate.hpp"
#include "ldcm/explore.hpp"
#include "ldcm/lln.hpp"
#include "ldcm/optimal_path.hpp"
#include "ldcm/rates.hpp"

namespace py = pybind11;
using namespace ldcm;

namespace {

using DegreeMap = std::map<int, double>;

DegreeMap to_map(const Profile& p) {
  DegreeMap m;
  for (int k = 0; k <= p.max_degree(); ++k) {
    if (p[k] != 0.0) m[k] = p[k];
  }
  return m;
}

DegreeDistribution dist(const DegreeMap& m) { return DegreeDistribution::from_map(m); }

StatePoint state(double x0, const DegreeMap& xk) { return {x0, Profile::from_map(xk)}; }

py::dict path_dict(const FluidPath& path) {
  py::dict d;
  d["t"] = path.t;
  d["zeta"] = path.zeta;
  d["psi"] = path.psi;
  d["markers"] = path.markers;
  return d;
}

}  // namespace

PYBIND11_MODULE(_ldcm, m) {
  m.doc() = "Large deviations of component structure in the configuration model";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<FeasibilityError>(m, "FeasibilityError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<ParityError>(m, "ParityError", base.ptr());
  py::register_exception<StateError>(m, "StateError", base.ptr());

  py::class_<RateBreakdown>(m, "RateBreakdown")
      .def_readonly("beta", &RateBreakdown::beta)
      .def_readonly("H_q", &RateBreakdown::H_q)
      .def_readonly("H_pq", &RateBreakdown::H_pq)
      .def_readonly("H_p", &RateBreakdown::H_p)
      .def_readonly("K", &RateBreakdown::K)
      .def_readonly("I1", &RateBreakdown::I1)
      .def_property_readonly("bound_kind", [](const RateBreakdown& r) { return to_string(r.bound_kind); });

  m.def("ell", &ell, py::arg("x"));
  m.def("entropy_H", [](const DegreeMap& r) { return entropy_H(Profile::from_map(r)); }, py::arg("r"));
  m.def("beta_of_q", [](const DegreeMap& q) { return beta_of_q(Profile::from_map(q)); }, py::arg("q"));
  m.def("K_of_q", [](const DegreeMap& q) { return K_of_q(Profile::from_map(q)); }, py::arg("q"));
  m.def(
      "rate_component_degree",
      [](const DegreeMap& p, const DegreeMap& q) { return rate_component_degree(dist(p), Profile::from_map(q)); },
      py::arg("p"), py::arg("q"));
  m.def("rate_d_regular", &rate_d_regular, py::arg("D"), py::arg("q"));
  m.def(
      "rate_d_regular_subgraph",
      [](const DegreeMap& p, int D, double q) { return rate_d_regular_subgraph(dist(p), D, q); }, py::arg("p"),
      py::arg("D"), py::arg("q"));
  m.def(
      "rate_component_size",
      [](const DegreeMap& p, double r) {
        const auto res = rate_component_size(dist(p), r);
        return py::make_tuple(res.rate, to_map(res.argmin));
      },
      py::arg("p"), py::arg("r"));
  m.def(
      "rate_conjectured_largest", [](int D, double x) { return rate_conjectured_largest(D, x).rate; }, py::arg("D"),
      py::arg("x"));

  py::class_<LlnSummary>(m, "LlnSummary")
      .def_readonly("mu", &LlnSummary::mu)
      .def_readonly("nu", &LlnSummary::nu)
      .def_readonly("rho", &LlnSummary::rho)
      .def_readonly("tau", &LlnSummary::tau)
      .def_readonly("tau_zeta", &LlnSummary::tau_zeta)
      .def_readonly("giant_fraction", &LlnSummary::giant_fraction)
      .def_readonly("supercritical", &LlnSummary::supercritical);
  m.def("survival_rho", [](const DegreeMap& p) { return survival_rho(dist(p)); }, py::arg("p"));
  m.def("giant_fraction", [](const DegreeMap& p) { return giant_fraction(dist(p)); }, py::arg("p"));
  m.def("lln_summary", [](const DegreeMap& p) { return lln_summary(dist(p)); }, py::arg("p"));
  m.def(
      "lln_path",
      [](const DegreeMap& p, const std::vector<double>& grid) { return path_dict(lln_path(dist(p), grid)); },
      py::arg("p"), py::arg("grid"));

  m.def(
      "beta_general",
      [](double a0, const DegreeMap& a, double b0, const DegreeMap& b) {
        const auto s = beta_general(state(a0, a), state(b0, b));
        return py::make_tuple(s.beta, to_string(s.segment_case));
      },
      py::arg("x1_0"), py::arg("x1"), py::arg("x2_0"), py::arg("x2"));
  m.def(
      "cost_closed_form",
      [](double a0, const DegreeMap& a, double b0, const DegreeMap& b) {
        return cost_closed_form(state(a0, a), state(b0, b)).cost;
      },
      py::arg("x1_0"), py::arg("x1"), py::arg("x2_0"), py::arg("x2"));
  m.def(
      "minimizer_cost_quadrature",
      [](double a0, const DegreeMap& a, double b0, const DegreeMap& b) {
        const auto spec = make_segment(state(a0, a), state(b0, b));
        return path_cost(minimizer_trajectory(spec), 0.0, spec.varsigma).cost;
      },
      py::arg("x1_0"), py::arg("x1"), py::arg("x2_0"), py::arg("x2"));
  m.def(
      "minimizer_path",
      [](double a0, const DegreeMap& a, double b0, const DegreeMap& b, int points) {
        const auto spec = make_segment(state(a0, a), state(b0, b));
        return path_dict(minimizer_path(spec, uniform_grid(spec.varsigma, points)));
      },
      py::arg("x1_0"), py::arg("x1"), py::arg("x2_0"), py::arg("x2"), py::arg("points") = 101);
  m.def(
      "skorokhod_map", [](const std::vector<double>& psi) { return skorokhod_map(psi); }, py::arg("psi"));

  m.def(
      "components",
      [](const std::vector<int>& degrees, std::uint64_t seed) {
        CounterRng rng(seed, 0);
        const auto s = extract_components(eea_run(degrees, rng));
        std::vector<std::int64_t> sizes;
        for (const auto& c : s.components) sizes.push_back(c.n_vertices);
        return sizes;
      },
      py::arg("degrees"), py::arg("seed"));

  py::class_<EstimateResult>(m, "EstimateResult")
      .def_readonly("p_hat", &EstimateResult::p_hat)
      .def_readonly("ci_low", &EstimateResult::ci_low)
      .def_readonly("ci_high", &EstimateResult::ci_high)
      .def_readonly("reps", &EstimateResult::reps)
      .def_readonly("hits", &EstimateResult::hits)
      .def_readonly("n", &EstimateResult::n)
      .def_readonly("per_n_rate", &EstimateResult::per_n_rate)
      .def("__eq__", [](const EstimateResult& a, const EstimateResult& b) { return a == b; });
  m.def(
      "estimate_event_prob",
      [](const DegreeMap& p, std::int64_t n, const DegreeMap& q, double eps, std::int64_t reps, std::uint64_t seed,
         int workers) {
        py::gil_scoped_release release;
        return estimate_event_prob(dist(p), n, Profile::from_map(q), eps, reps, seed, workers);
      },
      py::arg("p"), py::arg("n"), py::arg("q"), py::arg("eps"), py::arg("reps"), py::arg("seed"),
      py::arg("workers") = 1);
}
