#pragma once

#include "sharpfw/analysis.hpp"
#include "sharpfw/config.hpp"
#include "sharpfw/solver.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace sharpfw {

struct RuleRun {
  std::string rule;
  Trace trace;
  nlohmann::json analysis;
};

struct ExperimentResult {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<RuleRun> runs;
  bool assertions_ok = true;
  nlohmann::json summary;
};

/// Runs every rule of the config (ground truth resolved once) and analyzes
/// the traces with the config's analysis options.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Slope fit and h decay of a gap series. Failures of the individual
/// analyses (exact convergence, too few records, short trace) are reported
/// in the document instead of thrown.
nlohmann::json analyze_series(const GapSeries& series, int offset, const AnalysisOptions& options);

/// "ol:3" -> "ol3"; used for trace file names.
std::string rule_file_stem(const std::string& rule);

/// Writes <dir>/<rule>.csv for every rule and <dir>/summary.json.
void write_experiment(const ExperimentResult& result, const std::filesystem::path& dir);

/// Output root: $SHARPFW_OUT when set, otherwise ./out.
std::filesystem::path output_root();

nlohmann::json to_json(const ExponentFit& fit);
nlohmann::json to_json(const HDecay& decay);
nlohmann::json to_json(const LdsEstimate& est);
nlohmann::json to_json(const LdsCertificate& cert);
nlohmann::json to_json(const VectorRef& v);

}  // namespace sharpfw
