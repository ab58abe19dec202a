#pragma once

#include "sharpfw/analysis.hpp"
#include "sharpfw/geometry.hpp"
#include "sharpfw/objectives.hpp"
#include "sharpfw/solver.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace sharpfw {

/// Rate-analysis settings; every tolerance a verdict depends on lives here.
struct AnalysisOptions {
  std::optional<FitWindow> window;  // default: last decade
  std::size_t min_points = 50;
  double h_factor = 2.0;
  std::optional<double> h_from;  // default: t_max / 100
  std::optional<double> h_to;    // default: t_max
  /// Pass bound for the fitted slope, when the experiment declares one.
  std::optional<double> slope_max;
  std::optional<double> slope_min;
};

struct ExperimentConfig {
  std::string name;
  nlohmann::json set_spec;
  nlohmann::json objective_spec;
  FeasibleSet set;
  Objective objective;
  std::vector<std::string> rules;
  Vector x0;
  RunOptions run;
  ReferenceOptions reference;
  AnalysisOptions analysis;
};

/// {"kind": "l2_ball", "center": [..], "radius": r, "tie_break": "lexmin"} and
/// friends; see README for the full list of kinds and fields.
FeasibleSet parse_set(const nlohmann::json& spec);

/// The set is needed for defaults that depend on it (distance-power L).
Objective parse_objective(const nlohmann::json& spec, const FeasibleSet& set);

/// Throws InvalidArgument on unknown keys, wrong types or inconsistent
/// dimensions.
ExperimentConfig parse_config(const nlohmann::json& doc);

/// Applies `patch` key by key on top of `base` (nested objects merged).
nlohmann::json merge_config(nlohmann::json base, const nlohmann::json& patch);

nlohmann::json load_json_file(const std::string& path);

/// Attaches the closed-form optimum when one exists, otherwise runs
/// reference_solve and records its provenance.
Objective with_resolved_ground_truth(const FeasibleSet& set, const Objective& f, const ReferenceOptions& options);

Vector parse_vector(const nlohmann::json& v, const char* what);

}  // namespace sharpfw
