#include "sharpfw/experiment.hpp"

#include "sharpfw/trace_io.hpp"

#include <cmath>
#include <cstdlib>

namespace sharpfw {

using nlohmann::json;

json to_json(const VectorRef& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json to_json(const ExponentFit& fit) {
  return {{"slope", fit.slope},
          {"intercept", fit.intercept},
          {"window", {fit.window.lo, fit.window.hi}},
          {"residual", fit.residual},
          {"points", fit.points}};
}

json to_json(const HDecay& d) {
  return {{"t_from", d.t_from}, {"t_to", d.t_to},   {"h_from", d.h_from},
          {"h_to", d.h_to},     {"ratio", d.ratio}, {"verdict", d.consistent ? "o(1/t)-consistent" : "not consistent"}};
}

json to_json(const LdsEstimate& est) {
  json doc = {{"A_hat", est.A_hat},
              {"points", est.points},
              {"directions", est.directions},
              {"pairs", est.pairs},
              {"provenance", to_string(LdsProvenance::Sampled)}};
  if (est.worst.x.size() > 0) {
    doc["worst_witness"] = {{"x", to_json(est.worst.x)},
                            {"g", to_json(est.worst.g)},
                            {"s", to_json(est.worst.s)},
                            {"ratio", est.worst.ratio}};
  }
  return doc;
}

json to_json(const LdsCertificate& cert) {
  return {{"A", cert.A},
          {"q", cert.q},
          {"rho", std::isfinite(cert.rho) ? json(cert.rho) : json("inf")},
          {"provenance", to_string(cert.provenance)}};
}

json analyze_series(const GapSeries& series, int offset, const AnalysisOptions& options) {
  json doc;
  bool have_gap = !series.F.empty() && !std::isnan(series.F.back());
  if (!have_gap) {
    doc["fit"] = {{"error", "no primal gap (dual-gap-only trace)"}};
    return doc;
  }
  try {
    const ExponentFit fit = fit_exponent(series, options.window, options.min_points);
    doc["fit"] = to_json(fit);
    if (options.slope_max || options.slope_min) {
      const bool ok = (!options.slope_max || fit.slope <= *options.slope_max) &&
                      (!options.slope_min || fit.slope >= *options.slope_min);
      doc["slope_verdict"] = ok ? "pass" : "fail";
    }
  } catch (const ExactConvergence& e) {
    doc["fit"] = {{"exact_convergence_t", e.t()}};
  } catch (const InvalidArgument& e) {
    doc["fit"] = {{"error", e.what()}};
  }
  try {
    const HDecay d = check_h_decay(series, offset, options.h_factor, options.h_from, options.h_to);
    doc["h_decay"] = to_json(d);
  } catch (const InvalidArgument& e) {
    doc["h_decay"] = {{"error", e.what()}};
  }
  return doc;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  ExperimentResult result;
  result.name = config.name;
  result.seed = config.run.seed;
  const Objective f = with_resolved_ground_truth(config.set, config.objective, config.reference);
  json runs = json::array();
  for (const auto& rule_text : config.rules) {
    const StepRule rule = StepRule::parse(rule_text, f.smoothness());
    RuleRun rr{rule_text, run(config.set, f, rule, config.x0, config.run), json()};
    rr.analysis = analyze_series(gap_series(rr.trace), rr.trace.offset, config.analysis);
    if (!rr.trace.checks.ok()) result.assertions_ok = false;
    json entry = trace_summary(rr.trace);
    entry["analysis"] = rr.analysis;
    entry["trace_file"] = rule_file_stem(rule_text) + ".csv";
    runs.push_back(entry);
    result.runs.push_back(std::move(rr));
  }
  result.summary = {{"name", config.name},
                    {"seed", config.run.seed},
                    {"set_spec", config.set_spec},
                    {"objective_spec", config.objective_spec},
                    {"x0", to_json(config.x0)},
                    {"t_max", config.run.t_max},
                    {"assertions_ok", result.assertions_ok},
                    {"runs", runs}};
  return result;
}

std::string rule_file_stem(const std::string& rule) {
  std::string out;
  for (char c : rule) {
    if (c != ':') out.push_back(c);
  }
  return out;
}

void write_experiment(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& rr : result.runs) write_trace_csv(rr.trace, dir / (rule_file_stem(rr.rule) + ".csv"));
  write_json(result.summary, dir / "summary.json");
}

std::filesystem::path output_root() {
  if (const char* env = std::getenv("SHARPFW_OUT"); env && *env) return env;
  return "out";
}

}  // namespace sharpfw
