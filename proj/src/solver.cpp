#include "sharpfw/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace sharpfw {
namespace {

constexpr long kDenseRecords = 1000;
constexpr double kRecordRatio = 1.02;

void note(AssertionCounts& c, long& counter, long t, const char* kind) {
  ++counter;
  if (c.first_violation < 0) {
    c.first_violation = t;
    c.first_violation_kind = kind;
  }
}

}  // namespace

bool on_record_schedule(long t) {
  if (t <= kDenseRecords) return true;
  // round(1.02^k) == t for some k
  const double k = std::log(static_cast<double>(t)) / std::log(kRecordRatio);
  for (double kk : {std::floor(k), std::ceil(k)}) {
    if (std::llround(std::pow(kRecordRatio, kk)) == t) return true;
  }
  return false;
}

Trace run(const FeasibleSet& set, const Objective& f, const StepRule& rule, const VectorRef& x0,
          const RunOptions& options) {
  require_dim(x0, set.dim(), "run: x0");
  if (f.dim() != set.dim()) throw InvalidArgument("run: objective and set dimensions differ");
  if (options.t_max < 1) throw InvalidArgument("run: t_max must be at least 1");
  if (!x0.allFinite() || !set.contains(x0, options.feasibility_tol))
    throw InvalidArgument("run: x0 is not in the feasible set");

  const auto started = std::chrono::steady_clock::now();
  const auto& truth = f.ground_truth();
  const bool monotone_rule = rule.is_monotone();
  const double L = f.smoothness();
  const double D = set.diameter();
  const double tol = options.assertion_tol;

  Trace trace;
  trace.offset = rule.offset();
  trace.meta.set = set.describe();
  trace.meta.objective = f.describe();
  trace.meta.rule = rule.describe();
  trace.meta.seed = options.seed;
  trace.meta.L = L;
  trace.meta.D = D;
  if (const auto* ls = std::get_if<LineSearch>(&rule.kind())) trace.meta.line_search_tol = ls->tol;
  trace.meta.feasibility_tol = options.feasibility_tol;
  trace.meta.assertion_tol = tol;
  if (truth) {
    trace.meta.f_star = truth->f_star;
    trace.meta.f_star_provenance = truth->provenance;
  } else {
    trace.meta.f_star_provenance = "none (dual-gap-only)";
  }
  auto& checks = trace.checks;

  Vector x = x0;
  Vector grad(x.size());
  Vector dir(x.size());
  Vector probe(x.size());
  Vector probe_grad(x.size());

  const SegmentSlope slope = [&](double gamma) {
    probe.noalias() = x + gamma * dir;
    f.gradient(probe, probe_grad);
    return probe_grad.dot(dir);
  };

  double prev_F = 0.0;
  double prev_g = 0.0;
  double prev_d = 0.0;
  double prev_gamma = 0.0;

  for (long t = 0;; ++t) {
    const double fx = f.value(x);
    f.gradient(x, grad);
    if (!std::isfinite(fx) || !grad.allFinite())
      throw NumericError("run: non-finite objective or gradient at t=" + std::to_string(t));
    const Vector s = set.lmo(grad);
    dir.noalias() = s - x;
    const double g = -grad.dot(dir);
    const double d = dir.norm();
    const double F = truth ? f.primal_gap(x) : std::numeric_limits<double>::quiet_NaN();

    if (truth) {
      if (t >= 1) {
        ++checks.steps_checked;
        const double bound = prev_F - prev_gamma * prev_g + 0.5 * L * prev_gamma * prev_gamma * prev_d * prev_d;
        if (F > bound + tol) note(checks, checks.progress, t, "progress");
        if (monotone_rule) {
          const double quad = prev_d > 0.0 ? prev_g * prev_g / (L * prev_d * prev_d) : prev_g;
          if (F > prev_F - 0.5 * std::min(prev_g, quad) + tol) note(checks, checks.half_min, t, "half-min");
          if (F > prev_F + tol) note(checks, checks.monotone, t, "monotone");
        }
        if (F > 2.0 * L * D * D / static_cast<double>(t + 2) + tol) note(checks, checks.envelope, t, "envelope");
      }
    }

    const bool stop_gap = options.gap_tol && g <= *options.gap_tol;
    const bool stop = t >= options.t_max || stop_gap;
    double gamma = 0.0;
    if (!stop) gamma = step_size(rule, t, g, d, slope);

    if (options.full_resolution || stop || on_record_schedule(t)) {
      IterateRecord rec;
      rec.t = t;
      rec.x = x;
      rec.s = s;
      rec.gamma = gamma;
      rec.F = F;
      rec.g = g;
      rec.d = d;
      if (truth && truth->minimizer) rec.delta = (x - *truth->minimizer).norm();
      rec.h = static_cast<double>(t + trace.offset) * F;
      trace.records.push_back(std::move(rec));
    }

    if (stop) {
      trace.meta.t_final = t;
      trace.meta.stop_reason = stop_gap ? "gap_tol" : "t_max";
      break;
    }

    x = x + gamma * (s - x);
    if (!x.allFinite()) throw NumericError("run: non-finite iterate at t=" + std::to_string(t + 1));
    if ((t + 1) % options.feasibility_every == 0 && !set.contains(x, options.feasibility_tol)) {
      note(checks, checks.feasibility, t + 1, "feasibility");
    }
    prev_F = F;
    prev_g = g;
    prev_d = d;
    prev_gamma = gamma;
  }

  trace.meta.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return trace;
}

ReferenceSolution reference_solve(const FeasibleSet& set, const Objective& f, const ReferenceOptions& options) {
  if (f.dim() != set.dim()) throw InvalidArgument("reference_solve: objective and set dimensions differ");
  const StepRule rule = StepRule::line_search();
  Vector x = set.interior_point();
  Vector grad(x.size());
  Vector dir(x.size());
  Vector probe(x.size());
  Vector probe_grad(x.size());
  const SegmentSlope slope = [&](double gamma) {
    probe.noalias() = x + gamma * dir;
    f.gradient(probe, probe_grad);
    return probe_grad.dot(dir);
  };

  ReferenceSolution out;
  out.f_star_est = std::numeric_limits<double>::infinity();
  out.lower_bound = -std::numeric_limits<double>::infinity();
  for (long t = 0; t < options.max_iterations; ++t) {
    const double fx = f.value(x);
    f.gradient(x, grad);
    const Vector s = set.lmo(grad);
    dir.noalias() = s - x;
    const double g = -grad.dot(dir);
    if (fx < out.f_star_est) {
      out.f_star_est = fx;
      out.minimizer_est = x;
    }
    out.lower_bound = std::max(out.lower_bound, fx - g);
    out.iterations = t;
    if (g <= options.gap_tol || out.f_star_est - out.lower_bound <= options.gap_tol) return out;
    const double gamma = step_size(rule, t, g, dir.norm(), slope);
    x = x + gamma * (s - x);
    if (!x.allFinite()) throw NumericError("reference_solve: non-finite iterate");
  }
  throw NumericError("reference_solve: certificate gap " + std::to_string(out.f_star_est - out.lower_bound) +
                     " above tolerance after " + std::to_string(options.max_iterations) + " iterations");
}

}  // namespace sharpfw
