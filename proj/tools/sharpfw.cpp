// Command-line driver: run, sweep, lds-check, rate-fit, reproduce, oracle.

#include "sharpfw/analysis.hpp"
#include "sharpfw/config.hpp"
#include "sharpfw/experiment.hpp"
#include "sharpfw/scenarios.hpp"
#include "sharpfw/trace_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

namespace {

using namespace sharpfw;
using nlohmann::json;

enum ExitCode { kOk = 0, kConfigError = 1, kAssertionFailure = 2, kNumericFailure = 3 };

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument(std::string(what) + ": bad number '" + item + "'");
    }
  }
  if (out.empty()) throw InvalidArgument(std::string(what) + ": empty list");
  return out;
}

void print_experiment(const ExperimentResult& result, const std::filesystem::path& dir) {
  for (const auto& rr : result.runs) {
    const auto& c = rr.trace.checks;
    std::cout << result.name << " [" << rr.rule << "] t=" << rr.trace.meta.t_final
              << " assertions=" << (c.ok() ? "ok" : "VIOLATED");
    if (!c.ok()) std::cout << " (first: " << c.first_violation_kind << " at t=" << c.first_violation << ")";
    const auto& fit = rr.analysis["fit"];
    if (fit.contains("slope")) std::cout << " slope=" << fit["slope"].get<double>();
    if (fit.contains("exact_convergence_t"))
      std::cout << " exact convergence at t=" << fit["exact_convergence_t"].get<double>();
    if (rr.analysis.contains("h_decay") && rr.analysis["h_decay"].contains("verdict"))
      std::cout << " h: " << rr.analysis["h_decay"]["verdict"].get<std::string>();
    std::cout << '\n';
  }
  std::cout << "wrote " << dir.string() << '\n';
}

// --------------------------------------------------------------- run

struct RunArgs {
  std::string config_path;
  std::string scenario;
  std::vector<std::string> rules;
  long t_max = 0;
  long seed = -1;
  double gap_tol = 0.0;
  bool full_resolution = false;
  std::string out;
};

json load_config_doc(const std::string& path, const std::string& scenario) {
  if (!path.empty() && !scenario.empty()) throw InvalidArgument("give --config or --scenario, not both");
  if (!scenario.empty()) return scenario_config(scenario);
  if (!path.empty()) return load_json_file(path);
  throw InvalidArgument("need --config or --scenario");
}

int cmd_run(const RunArgs& a) {
  json doc = load_config_doc(a.config_path, a.scenario);
  if (!a.rules.empty()) doc["rules"] = a.rules;
  if (a.t_max > 0) doc["t_max"] = a.t_max;
  if (a.seed >= 0) doc["seed"] = a.seed;
  if (a.gap_tol > 0.0) doc["gap_tol"] = a.gap_tol;
  if (a.full_resolution) doc["full_resolution"] = true;
  const ExperimentConfig cfg = parse_config(doc);
  const ExperimentResult result = run_experiment(cfg);
  const std::filesystem::path dir = a.out.empty() ? output_root() / cfg.name : std::filesystem::path(a.out);
  write_experiment(result, dir);
  print_experiment(result, dir);
  return result.assertions_ok ? kOk : kAssertionFailure;
}

// --------------------------------------------------------------- sweep

struct SweepArgs {
  std::vector<std::string> configs;
  std::vector<std::string> scenarios;
  bool all_scenarios = false;
  std::string seeds = "0";
  int jobs = 0;
  std::string out;
};

int cmd_sweep(const SweepArgs& a) {
  std::vector<json> docs;
  for (const auto& p : a.configs) docs.push_back(load_json_file(p));
  std::vector<std::string> names = a.scenarios;
  if (a.all_scenarios) names = scenario_names();
  for (const auto& n : names) docs.push_back(scenario_config(n));
  if (docs.empty()) throw InvalidArgument("sweep: nothing to run (use --config, --scenario or --all-scenarios)");

  struct Task {
    ExperimentConfig config;
  };
  std::vector<Task> tasks;
  for (const auto& doc : docs) {
    for (double s : parse_list(a.seeds, "--seeds")) {
      if (s < 0 || s != std::floor(s)) throw InvalidArgument("--seeds: seeds must be nonnegative integers");
      json d = doc;
      d["seed"] = static_cast<long>(s);
      ExperimentConfig cfg = parse_config(d);
      tasks.push_back(Task{std::move(cfg)});
    }
  }
  std::sort(tasks.begin(), tasks.end(), [](const Task& x, const Task& y) {
    return std::tie(x.config.name, x.config.run.seed) < std::tie(y.config.name, y.config.run.seed);
  });
  for (std::size_t i = 1; i < tasks.size(); ++i) {
    if (tasks[i].config.name == tasks[i - 1].config.name && tasks[i].config.run.seed == tasks[i - 1].config.run.seed)
      throw InvalidArgument("sweep: duplicate experiment '" + tasks[i].config.name + "' with the same seed");
  }

  const std::filesystem::path root = a.out.empty() ? output_root() / "sweep" : std::filesystem::path(a.out);
  std::vector<json> summaries(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::vector<bool> ok(tasks.size(), true);
  std::atomic<std::size_t> next{0};
  std::mutex print;
  auto worker = [&]() {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        const auto& cfg = tasks[i].config;
        const ExperimentResult result = run_experiment(cfg);
        const auto dir = root / cfg.name / ("seed-" + std::to_string(cfg.run.seed));
        write_experiment(result, dir);
        summaries[i] = result.summary;
        ok[i] = result.assertions_ok;
        std::lock_guard<std::mutex> lock(print);
        std::cout << "done " << cfg.name << " seed " << cfg.run.seed << (result.assertions_ok ? "" : " (assertions violated)")
                  << '\n';
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int jobs = a.jobs > 0 ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (int j = 0; j < std::min<int>(jobs, static_cast<int>(tasks.size())); ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  json merged = {{"experiments", json::array()}};
  bool all_ok = true;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    merged["experiments"].push_back(summaries[i]);
    all_ok = all_ok && ok[i];
  }
  merged["assertions_ok"] = all_ok;
  write_json(merged, root / "sweep-summary.json");
  std::cout << "wrote " << (root / "sweep-summary.json").string() << '\n';
  return all_ok ? kOk : kAssertionFailure;
}

// --------------------------------------------------------------- lds-check

struct LdsArgs {
  std::string set = "stadium";
  std::string config_path;
  std::vector<std::string> M;
  double q = 2.0;
  double rho = 0.3;
  double shell = 0.0;
  bool rho_sweep = false;
  std::string rhos = "0.3,0.1,0.03";
  bool uc_bruteforce = false;
  bool patch = false;
  long nx = 1000;
  long ng = 1000;
  long seed = 0;
  std::string out;
};

FeasibleSet preset_set(const std::string& name) {
  if (name == "l2ball") return FeasibleSet::l2_ball(Vector::Zero(2), 1.0);
  if (name == "stadium") return FeasibleSet::stadium(1.0);
  if (name == "superflat") return FeasibleSet::superflat_body(1.0);
  if (name == "truncated-disk") return FeasibleSet::truncated_disk(0.5);
  if (name == "lp4") return FeasibleSet::lp_ball(Vector::Zero(2), 1.0, 4.0);
  throw InvalidArgument("unknown set preset '" + name + "' (l2ball, stadium, superflat, truncated-disk, lp4)");
}

Vector preset_point(const std::string& set, const std::string& name, Eigen::Index dim) {
  if (name == "origin") return Vector::Zero(dim);
  if (name == "cap-point") {
    if (set == "stadium") return Eigen::Vector2d(2.0, 0.0);
    if (set == "l2ball") return Eigen::Vector2d(0.0, -1.0);
    if (set == "truncated-disk") return Eigen::Vector2d(-1.0, 0.0);
    if (set == "lp4") return Eigen::Vector2d(-1.0, 0.0);
    if (set == "superflat") return Vector::Zero(2);
    throw InvalidArgument("cap-point is only defined for the set presets");
  }
  const auto values = parse_list(name, "--M");
  Vector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<Eigen::Index>(i)] = values[i];
  require_dim(v, dim, "--M");
  return v;
}

int cmd_lds_check(const LdsArgs& a) {
  const FeasibleSet set = a.config_path.empty() ? preset_set(a.set) : parse_set(load_json_file(a.config_path).at("set"));
  const std::string label = a.config_path.empty() ? a.set : "config";
  ReferenceSet M;
  for (const auto& m : a.M.empty() ? std::vector<std::string>{"cap-point"} : a.M)
    M.points.push_back(preset_point(label, m, set.dim()));
  if (a.seed < 0) throw InvalidArgument("--seed must be nonnegative");
  LdsSampler sampler{a.nx, a.ng, static_cast<std::uint64_t>(a.seed), a.shell};

  json report = {{"set", set.describe()}, {"q", a.q}, {"seed", a.seed}, {"M", json::array()}};
  for (const auto& m : M.points) report["M"].push_back(to_json(m));

  if (a.rho_sweep) {
    if (a.shell == 0.0) sampler.shell = 0.5;
    report["shell"] = sampler.shell;
    json rows = json::array();
    double prev = -1.0;
    bool decreasing = true;
    for (double rho : parse_list(a.rhos, "--rhos")) {
      const LdsEstimate est = estimate_lds(set, M, a.q, rho, sampler);
      json row = to_json(est);
      row["rho"] = rho;
      rows.push_back(row);
      if (prev >= 0.0 && !(est.A_hat * 10.0 <= prev)) decreasing = false;
      prev = est.A_hat;
    }
    report["sweep"] = rows;
    report["verdict"] = decreasing ? "decreasing by >= 10x per step" : "not decreasing by 10x";
  } else {
    report["rho"] = a.rho;
    report["estimate"] = to_json(estimate_lds(set, M, a.q, a.rho, sampler));
  }

  if (a.uc_bruteforce) {
    const UcSampler uc{std::max(1L, a.nx), 64, static_cast<std::uint64_t>(a.seed)};
    const double alpha = estimate_uc_alpha(set, a.q, uc);
    const UcCheck check = check_uc(set, alpha, a.q, uc);
    json doc = {{"alpha_hat", alpha}, {"check_uc", check.ok}};
    if (check.ok) {
      const LdsCertificate cert = lds_from_uc(UcParams{alpha, a.q});
      const LdsEstimate val = estimate_lds(set, M, a.q, a.rho, sampler);
      doc["certificate"] = to_json(cert);
      doc["validation_A_hat"] = val.A_hat;
      doc["validated"] = val.A_hat >= cert.A - 1e-6;
    }
    report["uc_bruteforce"] = doc;
  }

  if (a.patch) {
    const auto* st = std::get_if<Stadium>(&set.kind());
    if (!st) throw InvalidArgument("--patch is implemented for the stadium");
    const double beta = stadium_residual_gap(st->half_length, M, a.rho);
    const double alpha =
        estimate_uc_alpha(FeasibleSet::l2_ball(Vector::Zero(2), 1.0), 2.0, UcSampler{2000, 64, static_cast<std::uint64_t>(a.seed)});
    const LdsCertificate cert = lds_from_patch(UcParams{alpha, 2.0}, beta, set.diameter(), 2.0, a.rho);
    const LdsEstimate val = estimate_lds(set, M, 2.0, a.rho, sampler);
    report["patch"] = {{"beta", beta},
                       {"alpha_patch", alpha},
                       {"certificate", to_json(cert)},
                       {"validation_A_hat", val.A_hat},
                       {"validated", val.A_hat >= cert.A - 1e-6}};
  }

  std::cout << report.dump(2) << '\n';
  const std::filesystem::path path = a.out.empty() ? output_root() / ("lds-check-" + label + ".json") : std::filesystem::path(a.out);
  write_json(report, path);
  return kOk;
}

// --------------------------------------------------------------- rate-fit

struct FitArgs {
  std::string trace;
  std::string window;
  int ell = 0;
  long min_points = 50;
  double h_factor = 2.0;
  std::string out;
};

int infer_offset(const std::vector<TraceRow>& rows) {
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    if (it->F && it->h && *it->F > 0.0) {
      const long ell = std::lround(*it->h / *it->F - static_cast<double>(it->t));
      if (ell >= 2) return static_cast<int>(ell);
    }
  }
  return 2;
}

int cmd_rate_fit(const FitArgs& a) {
  const auto rows = read_trace_csv(std::filesystem::path(a.trace));
  if (rows.empty()) throw InvalidArgument("rate-fit: trace has no rows");
  AnalysisOptions opts;
  if (!a.window.empty()) {
    const auto w = parse_list(a.window, "--window");
    if (w.size() != 2) throw InvalidArgument("--window expects lo,hi");
    opts.window = FitWindow{w[0], w[1]};
  }
  if (a.min_points < 2) throw InvalidArgument("--min-points must be at least 2");
  opts.min_points = static_cast<std::size_t>(a.min_points);
  opts.h_factor = a.h_factor;
  const int ell = a.ell > 0 ? a.ell : infer_offset(rows);
  json report = analyze_series(gap_series(rows), ell, opts);
  report["trace"] = a.trace;
  report["ell"] = ell;
  report["records"] = rows.size();
  std::cout << report.dump(2) << '\n';
  if (!a.out.empty()) write_json(report, a.out);
  return kOk;
}

// --------------------------------------------------------------- oracle

struct OracleArgs {
  double a0 = 1.0;
  double eta = 0.5;
  double r = 1.0;
  long T = 1000000;
  std::string out;
};

int cmd_oracle(const OracleArgs& a) {
  const auto values = power_descent_oracle(a.a0, a.eta, a.r, a.T);
  const GapSeries s = subsample(values);
  Trace trace;
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    IterateRecord rec;
    rec.t = static_cast<long>(s.t[i]);
    rec.F = s.F[i];
    rec.g = s.F[i];
    rec.h = (s.t[i] + 2.0) * s.F[i];
    trace.records.push_back(rec);
  }
  const std::filesystem::path path =
      a.out.empty() ? output_root() / ("power-descent-r" + format_double(a.r) + ".csv") : std::filesystem::path(a.out);
  write_trace_csv(trace, path);
  std::cout << "wrote " << path.string() << " (" << trace.records.size() << " records)\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frank-Wolfe rate experiments on sharp and non-sharp feasible sets"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "run one experiment and write traces plus summary");
  auto* run_src = run->add_option_group("source");
  run_src->add_option("--config", run_args.config_path, "JSON experiment config");
  run_src->add_option("--scenario", run_args.scenario, "built-in scenario name");
  run_src->require_option(1);
  run->add_option("--step,--rule", run_args.rules, "step rule(s): ss, ls, ol:<ell> (overrides the config)");
  run->add_option("--t-max", run_args.t_max, "iteration budget (overrides the config)");
  run->add_option("--seed", run_args.seed, "seed recorded in the metadata");
  run->add_option("--gap-tol", run_args.gap_tol, "stop once the Frank-Wolfe gap reaches this value");
  run->add_flag("--full-resolution", run_args.full_resolution, "store every iterate");
  run->add_option("--out", run_args.out, "output directory (default: $SHARPFW_OUT/<name>)");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "run many experiments in parallel workers");
  sweep->add_option("--config", sweep_args.configs, "JSON experiment config (repeatable)");
  sweep->add_option("--scenario", sweep_args.scenarios, "built-in scenario (repeatable)");
  sweep->add_flag("--all-scenarios", sweep_args.all_scenarios, "every built-in scenario");
  sweep->add_option("--seeds", sweep_args.seeds, "comma-separated seeds");
  sweep->add_option("--jobs", sweep_args.jobs, "worker threads (default: hardware threads)");
  sweep->add_option("--out", sweep_args.out, "output directory (default: $SHARPFW_OUT/sweep)");

  LdsArgs lds_args;
  auto* lds = app.add_subcommand("lds-check", "estimate or certify local dual sharpness constants");
  lds->add_option("--set", lds_args.set, "preset: l2ball, stadium, superflat, truncated-disk, lp4");
  lds->add_option("--config", lds_args.config_path, "take the set from a JSON config instead");
  lds->add_option("--M", lds_args.M, "reference point: cap-point, origin or x,y (repeatable)");
  lds->add_option("--q", lds_args.q, "sharpness exponent");
  lds->add_option("--rho", lds_args.rho, "neighbourhood radius");
  lds->add_option("--shell", lds_args.shell, "keep points with dist(x, M) >= shell * rho");
  lds->add_flag("--rho-sweep", lds_args.rho_sweep, "estimate across --rhos (shell 0.5 unless given)");
  lds->add_option("--rhos", lds_args.rhos, "radii for --rho-sweep");
  lds->add_flag("--uc-bruteforce", lds_args.uc_bruteforce, "estimate alpha, certify A = alpha / 2, validate");
  lds->add_flag("--patch", lds_args.patch, "uniformly convex patch certificate (stadium)");
  lds->add_option("--nx", lds_args.nx, "sampled points");
  lds->add_option("--ng", lds_args.ng, "sampled directions");
  lds->add_option("--seed", lds_args.seed, "sampler seed");
  lds->add_option("--out", lds_args.out, "report path");

  FitArgs fit_args;
  auto* fit = app.add_subcommand("rate-fit", "fit the tail exponent of a trace CSV");
  fit->add_option("trace", fit_args.trace, "trace CSV")->required();
  fit->add_option("--window", fit_args.window, "lo,hi (default: last decade)");
  fit->add_option("--ell", fit_args.ell, "offset in h = (t + ell) F (default: inferred)");
  fit->add_option("--min-points", fit_args.min_points, "minimum records in the window");
  fit->add_option("--h-factor", fit_args.h_factor, "required decrease of h over two decades");
  fit->add_option("--out", fit_args.out, "report path");

  std::string reproduce_name;
  std::string reproduce_out;
  auto* reproduce = app.add_subcommand("reproduce", "run a built-in scenario end to end");
  reproduce->add_option("scenario", reproduce_name, "scenario name")->required();
  reproduce->add_option("--out", reproduce_out, "output directory");

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "write the power-descent recursion as a trace CSV");
  oracle->add_option("--a0", oracle_args.a0, "initial value in [0, 1]");
  oracle->add_option("--eta", oracle_args.eta, "step in (0, 1]");
  oracle->add_option("--r", oracle_args.r, "exponent in (0, 1]");
  oracle->add_option("--T", oracle_args.T, "steps");
  oracle->add_option("--out", oracle_args.out, "CSV path");

  auto* list = app.add_subcommand("scenarios", "list built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) return cmd_run(run_args);
    if (*sweep) return cmd_sweep(sweep_args);
    if (*lds) return cmd_lds_check(lds_args);
    if (*fit) return cmd_rate_fit(fit_args);
    if (*reproduce) {
      RunArgs a;
      a.scenario = reproduce_name;
      a.out = reproduce_out;
      return cmd_run(a);
    }
    if (*oracle) return cmd_oracle(oracle_args);
    if (*list) {
      for (const auto& n : scenario_names()) std::cout << n << '\n';
      return kOk;
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const AssertionFailure& e) {
    std::cerr << "assertion failure: " << e.what() << '\n';
    return kAssertionFailure;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericFailure;
  }
  return kOk;
}
