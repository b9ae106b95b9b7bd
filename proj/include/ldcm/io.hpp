#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include <json.hpp>

#include "ldcm/estimate.hpp"
#include "ldcm/explore.hpp"
#include "ldcm/fluid_path.hpp"
#include "ldcm/lln.hpp"
#include "ldcm/optimal_path.hpp"
#include "ldcm/profile.hpp"
#include "ldcm/rates.hpp"

/// JSON and CSV formats. Degree files: {"degrees": {"k": p_k}}. State files:
/// {"x0": real, "xk": {"k": x_k}}. Paths: CSV with columns t, zeta_0..zeta_K,
/// psi, written with 17 significant digits.
namespace ldcm::io {

using nlohmann::json;

/// Thrown for unreadable files and malformed documents.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path);

/// {"degrees": {...}} or a bare {"k": value} map.
Profile profile_from_json(const json& j);
json profile_to_json(const Profile& p);

DegreeDistribution distribution_from_json(const json& j);
json distribution_to_json(const DegreeDistribution& p);

StatePoint state_from_json(const json& j);
json state_to_json(const StatePoint& x);

/// A JSON array is a degree sequence; an object is a distribution that
/// needs n to become counts.
std::variant<DegreeSequence, DegreeDistribution> degree_input_from_json(const json& j);

json to_json(const RateBreakdown& r);
json to_json(const LlnSummary& s);
json to_json(const EstimateResult& r);
EstimateResult estimate_from_json(const json& j);
json to_json(const ComponentSummary& s, bool with_components = true);

void write_path_csv(std::ostream& os, const FluidPath& path);
FluidPath read_path_csv(std::istream& is);

/// Header line and one row in the estimate CSV export.
std::string estimate_csv_header();
std::string estimate_csv_row(const EstimateResult& r);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

}  // namespace ldcm::io
