#pragma once

#include "sharpfw/core.hpp"
#include "sharpfw/geometry.hpp"
#include "sharpfw/objectives.hpp"
#include "sharpfw/stepping.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sharpfw {

struct RunOptions {
  long t_max = 1000;
  /// Stop once the Frank-Wolfe gap drops to this value.
  std::optional<double> gap_tol;
  /// Keep every iterate instead of the geometric schedule.
  bool full_resolution = false;
  double feasibility_tol = 1e-9;
  long feasibility_every = 1000;
  double assertion_tol = 1e-9;
  /// Carried into the trace metadata; the solver itself is deterministic.
  std::uint64_t seed = 0;
};

/// One row of a trace. F and h are NaN in dual-gap-only mode.
struct IterateRecord {
  long t = 0;
  Vector x;
  Vector s;
  double gamma = 0.0;
  double F = 0.0;
  double g = 0.0;
  double d = 0.0;
  std::optional<double> delta;
  double h = 0.0;
};

/// Violation counters for the runtime assertions, evaluated on every step
/// (not only on stored records).
struct AssertionCounts {
  long progress = 0;     // F_{t+1} <= F_t - gamma g + (L/2) gamma^2 d^2
  long half_min = 0;     // F_{t+1} <= F_t - min{g, g^2 / (L d^2)} / 2   (ss, ls)
  long envelope = 0;     // F_t <= 2 L D^2 / (t + 2), t >= 1
  long monotone = 0;     // F_{t+1} <= F_t                               (ss, ls)
  long feasibility = 0;  // periodic membership of x_t
  long steps_checked = 0;
  long first_violation = -1;
  std::string first_violation_kind;

  bool ok() const { return progress + half_min + envelope + monotone + feasibility == 0; }
};

struct TraceMetadata {
  std::string set;
  std::string objective;
  std::string rule;
  std::uint64_t seed = 0;
  double L = 0.0;
  double D = 0.0;
  double line_search_tol = 0.0;
  double feasibility_tol = 0.0;
  double assertion_tol = 0.0;
  std::optional<double> f_star;
  std::string f_star_provenance;
  long t_final = 0;
  std::string stop_reason;
  double seconds = 0.0;
};

struct Trace {
  std::vector<IterateRecord> records;
  TraceMetadata meta;
  AssertionCounts checks;
  int offset = 2;  // ell in h_t = (t + ell) F_t
};

/// Vanilla Frank-Wolfe from x0 for at most t_max steps. Records are stored
/// at every t <= 1000 and then whenever t is the rounding of a power of
/// 1.02 (plus the final iterate). Throws InvalidArgument for an infeasible
/// x0 and NumericError when an iterate stops being finite.
Trace run(const FeasibleSet& set, const Objective& f, const StepRule& rule, const VectorRef& x0,
          const RunOptions& options);

struct ReferenceOptions {
  double gap_tol = 1e-10;
  long max_iterations = 10'000'000;
};

/// High-accuracy line-search run used when no closed-form optimum exists.
struct ReferenceSolution {
  double f_star_est = 0.0;   // best f(x_t): an upper bound on f*
  double lower_bound = 0.0;  // max_t f(x_t) - g_t
  Vector minimizer_est;
  long iterations = 0;
};

ReferenceSolution reference_solve(const FeasibleSet& set, const Objective& f, const ReferenceOptions& options = {});

/// True when t belongs to the default downsampling schedule.
bool on_record_schedule(long t);

}  // namespace sharpfw
