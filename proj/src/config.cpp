#include "sharpfw/config.hpp"

#include "sharpfw/trace_io.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace sharpfw {
namespace {

using nlohmann::json;

// Rejects keys outside `allowed` so typos fail loudly.
void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw InvalidArgument(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : obj.items()) {
    if (!ok.count(item.key())) throw InvalidArgument(where + ": unknown key '" + item.key() + "'");
  }
}

const json& need(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw InvalidArgument(where + ": missing '" + key + "'");
  return obj.at(key);
}

double number(const json& v, const std::string& what) {
  if (!v.is_number()) throw InvalidArgument(what + ": expected a number");
  return v.get<double>();
}

long integer(const json& v, const std::string& what) {
  if (v.is_number_integer() || v.is_number_unsigned()) return v.get<long>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d == std::floor(d) && std::abs(d) < 9e15) return static_cast<long>(d);
  }
  throw InvalidArgument(what + ": expected an integer");
}

Matrix parse_rows(const json& v, const char* what) {
  if (!v.is_array() || v.empty()) throw InvalidArgument(std::string(what) + ": expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(v.size());
  const Vector first = parse_vector(v.at(0), what);
  Matrix m(rows, first.size());
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Vector row = parse_vector(v.at(static_cast<std::size_t>(i)), what);
    if (row.size() != first.size()) throw InvalidArgument(std::string(what) + ": ragged rows");
    m.row(i) = row.transpose();
  }
  return m;
}

TieBreak parse_tie_break(const json& spec) {
  if (!spec.contains("tie_break")) return TieBreak::LexMin;
  const auto& v = spec.at("tie_break");
  if (v == "lexmin") return TieBreak::LexMin;
  if (v == "lexmax") return TieBreak::LexMax;
  throw InvalidArgument("set: tie_break must be lexmin or lexmax");
}

}  // namespace

Vector parse_vector(const json& v, const char* what) {
  if (!v.is_array() || v.empty()) throw InvalidArgument(std::string(what) + ": expected a nonempty array of numbers");
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = number(v.at(i), what);
  return out;
}

FeasibleSet parse_set(const json& spec) {
  if (!spec.is_object()) throw InvalidArgument("set: expected an object");
  const std::string kind = need(spec, "kind", "set").get<std::string>();
  const std::string where = "set(" + kind + ")";
  FeasibleSet set = [&]() {
    if (kind == "l2_ball") {
      check_keys(spec, {"kind", "center", "radius", "tie_break"}, where);
      return FeasibleSet::l2_ball(parse_vector(need(spec, "center", where), "center"),
                                  number(need(spec, "radius", where), "radius"));
    }
    if (kind == "lp_ball") {
      check_keys(spec, {"kind", "center", "radius", "p", "tie_break"}, where);
      return FeasibleSet::lp_ball(parse_vector(need(spec, "center", where), "center"),
                                  number(need(spec, "radius", where), "radius"), number(need(spec, "p", where), "p"));
    }
    if (kind == "simplex") {
      check_keys(spec, {"kind", "dim", "tie_break"}, where);
      return FeasibleSet::simplex(integer(need(spec, "dim", where), "dim"));
    }
    if (kind == "box") {
      check_keys(spec, {"kind", "lo", "hi", "tie_break"}, where);
      return FeasibleSet::box(parse_vector(need(spec, "lo", where), "lo"), parse_vector(need(spec, "hi", where), "hi"));
    }
    if (kind == "ellipsoid") {
      check_keys(spec, {"kind", "center", "shape", "tie_break"}, where);
      return FeasibleSet::ellipsoid(parse_vector(need(spec, "center", where), "center"),
                                    parse_rows(need(spec, "shape", where), "shape"));
    }
    if (kind == "capsule") {
      check_keys(spec, {"kind", "a", "b", "radius", "tie_break"}, where);
      return FeasibleSet::capsule(parse_vector(need(spec, "a", where), "a"), parse_vector(need(spec, "b", where), "b"),
                                  number(need(spec, "radius", where), "radius"));
    }
    if (kind == "stadium") {
      check_keys(spec, {"kind", "half_length", "tie_break"}, where);
      return FeasibleSet::stadium(spec.contains("half_length") ? number(spec.at("half_length"), "half_length") : 1.0);
    }
    if (kind == "truncated_disk") {
      check_keys(spec, {"kind", "cut", "tie_break"}, where);
      return FeasibleSet::truncated_disk(number(need(spec, "cut", where), "cut"));
    }
    if (kind == "polytope") {
      check_keys(spec, {"kind", "vertices", "tie_break"}, where);
      // one vertex per row in the file, one per column in memory
      return FeasibleSet::vertex_polytope(parse_rows(need(spec, "vertices", where), "vertices").transpose());
    }
    if (kind == "superflat") {
      check_keys(spec, {"kind", "scale", "tie_break"}, where);
      return FeasibleSet::superflat_body(spec.contains("scale") ? number(spec.at("scale"), "scale") : 1.0);
    }
    throw InvalidArgument("set: unknown kind '" + kind + "'");
  }();
  return set.with_tie_break(parse_tie_break(spec));
}

Objective parse_objective(const json& spec, const FeasibleSet& set) {
  if (!spec.is_object()) throw InvalidArgument("objective: expected an object");
  const std::string kind = need(spec, "kind", "objective").get<std::string>();
  const std::string where = "objective(" + kind + ")";
  std::optional<double> L;
  if (spec.contains("L")) L = number(spec.at("L"), "L");
  Objective f = [&]() {
    if (kind == "quadratic") {
      check_keys(spec, {"kind", "Q", "c", "identity", "L"}, where);
      Matrix Q;
      if (spec.contains("identity")) {
        if (spec.contains("Q")) throw InvalidArgument(where + ": give Q or identity, not both");
        const double scale = number(spec.at("identity"), "identity");
        Q = scale * Matrix::Identity(set.dim(), set.dim());
      } else {
        Q = parse_rows(need(spec, "Q", where), "Q");
      }
      const Vector c = spec.contains("c") ? parse_vector(spec.at("c"), "c") : Vector(Vector::Zero(Q.rows()));
      return Objective::quadratic(Q, c, L);
    }
    if (kind == "linear") {
      check_keys(spec, {"kind", "c", "L"}, where);
      return Objective::linear(parse_vector(need(spec, "c", where), "c"), L.value_or(1.0));
    }
    if (kind == "distance_power") {
      check_keys(spec, {"kind", "center", "r", "L"}, where);
      const Vector center = parse_vector(need(spec, "center", where), "center");
      require_dim(center, set.dim(), "objective center");
      auto out = Objective::distance_power(center, number(need(spec, "r", where), "r"), set);
      return L ? out.with_smoothness(*L) : out;
    }
    if (kind == "stadium_psi") {
      check_keys(spec, {"kind", "c", "L"}, where);
      auto out = Objective::stadium_psi(spec.contains("c") ? number(spec.at("c"), "c") : 2.0);
      return L ? out.with_smoothness(*L) : out;
    }
    throw InvalidArgument("objective: unknown kind '" + kind + "'");
  }();
  if (f.dim() >= 0 && f.dim() != set.dim())
    throw InvalidArgument("objective dimension " + std::to_string(f.dim()) + " does not match set dimension " +
                          std::to_string(set.dim()));
  if (f.dim() < 0 && set.dim() != 2) throw InvalidArgument("objective: stadium_psi needs a planar set");
  return f;
}

ExperimentConfig parse_config(const json& doc) {
  check_keys(doc,
             {"name", "set", "objective", "rules", "x0", "t_max", "seed", "gap_tol", "full_resolution",
              "feasibility_tol", "feasibility_every", "assertion_tol", "reference", "analysis"},
             "config");
  const FeasibleSet set = parse_set(need(doc, "set", "config"));
  const Objective objective = parse_objective(need(doc, "objective", "config"), set);

  std::vector<std::string> rules;
  const auto& rj = need(doc, "rules", "config");
  if (rj.is_string()) {
    rules.push_back(rj.get<std::string>());
  } else if (rj.is_array() && !rj.empty()) {
    for (const auto& r : rj) {
      if (!r.is_string()) throw InvalidArgument("config: rules must be strings");
      rules.push_back(r.get<std::string>());
    }
  } else {
    throw InvalidArgument("config: rules must be a string or a nonempty array");
  }
  for (const auto& r : rules) StepRule::parse(r, objective.smoothness());

  const Vector x0 = parse_vector(need(doc, "x0", "config"), "x0");
  require_dim(x0, set.dim(), "config: x0");
  if (!set.contains(x0, 1e-9)) throw InvalidArgument("config: x0 is not in the feasible set");

  RunOptions run;
  run.t_max = integer(need(doc, "t_max", "config"), "t_max");
  if (run.t_max < 1) throw InvalidArgument("config: t_max must be at least 1");
  if (doc.contains("seed")) {
    const long seed = integer(doc.at("seed"), "seed");
    if (seed < 0) throw InvalidArgument("config: seed must be nonnegative");
    run.seed = static_cast<std::uint64_t>(seed);
  }
  if (doc.contains("gap_tol") && !doc.at("gap_tol").is_null()) run.gap_tol = number(doc.at("gap_tol"), "gap_tol");
  if (doc.contains("full_resolution")) run.full_resolution = doc.at("full_resolution").get<bool>();
  if (doc.contains("feasibility_tol")) run.feasibility_tol = number(doc.at("feasibility_tol"), "feasibility_tol");
  if (doc.contains("feasibility_every")) run.feasibility_every = integer(doc.at("feasibility_every"), "feasibility_every");
  if (doc.contains("assertion_tol")) run.assertion_tol = number(doc.at("assertion_tol"), "assertion_tol");
  if (run.feasibility_every < 1) throw InvalidArgument("config: feasibility_every must be positive");

  ReferenceOptions reference;
  if (doc.contains("reference")) {
    const auto& r = doc.at("reference");
    check_keys(r, {"gap_tol", "max_iterations"}, "config.reference");
    if (r.contains("gap_tol")) reference.gap_tol = number(r.at("gap_tol"), "reference.gap_tol");
    if (r.contains("max_iterations")) reference.max_iterations = integer(r.at("max_iterations"), "reference.max_iterations");
  }

  AnalysisOptions analysis;
  if (doc.contains("analysis")) {
    const auto& a = doc.at("analysis");
    check_keys(a, {"window", "min_points", "h_factor", "h_from", "h_to", "slope_max", "slope_min"}, "config.analysis");
    if (a.contains("window") && !a.at("window").is_null()) {
      const Vector w = parse_vector(a.at("window"), "analysis.window");
      if (w.size() != 2 || !(w[0] > 0.0 && w[0] < w[1])) throw InvalidArgument("config: analysis.window must be [lo, hi]");
      analysis.window = FitWindow{w[0], w[1]};
    }
    if (a.contains("min_points")) analysis.min_points = static_cast<std::size_t>(integer(a.at("min_points"), "min_points"));
    if (a.contains("h_factor")) analysis.h_factor = number(a.at("h_factor"), "h_factor");
    if (a.contains("h_from")) analysis.h_from = number(a.at("h_from"), "h_from");
    if (a.contains("h_to")) analysis.h_to = number(a.at("h_to"), "h_to");
    if (a.contains("slope_max")) analysis.slope_max = number(a.at("slope_max"), "slope_max");
    if (a.contains("slope_min")) analysis.slope_min = number(a.at("slope_min"), "slope_min");
  }

  std::string name = doc.contains("name") ? doc.at("name").get<std::string>() : "experiment";
  if (name.empty() || name.find_first_of("/\\") != std::string::npos)
    throw InvalidArgument("config: name must be a nonempty file-name-safe string");

  return ExperimentConfig{name, doc.at("set"), doc.at("objective"), set, objective, rules, x0, run, reference, analysis};
}

json merge_config(json base, const json& patch) {
  base.merge_patch(patch);
  return base;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("config '" + path + "': " + e.what());
  }
}

Objective with_resolved_ground_truth(const FeasibleSet& set, const Objective& f, const ReferenceOptions& options) {
  if (f.ground_truth()) return f;
  if (auto truth = known_ground_truth(set, f)) return f.with_ground_truth(*truth);
  const ReferenceSolution ref = reference_solve(set, f, options);
  GroundTruth truth;
  truth.f_star = ref.f_star_est;
  truth.provenance = "reference-solve (line search, " + std::to_string(ref.iterations) +
                     " iterations, certificate gap " + format_double(ref.f_star_est - ref.lower_bound) + ")";
  return f.with_ground_truth(truth);
}

}  // namespace sharpfw
