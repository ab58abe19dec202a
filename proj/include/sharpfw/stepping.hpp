#pragma once

#include <functional>
#include <string>
#include <variant>

namespace sharpfw {

/// gamma = min{g / (L d^2), 1}.
struct ShortStep {
  double L;
};

/// gamma minimizing f on the segment, by bisection on the directional
/// derivative down to a bracket of width `tol`.
struct LineSearch {
  double tol = 1e-12;
};

/// gamma = ell / (t + ell).
struct OpenLoop {
  int ell = 2;
};

class StepRule {
 public:
  using Kind = std::variant<ShortStep, LineSearch, OpenLoop>;

  static StepRule short_step(double L);
  static StepRule line_search(double tol = 1e-12);
  static StepRule open_loop(int ell = 2);

  /// Parses "ss", "ls" or "ol:<ell>" ("ol" alone means ell = 2). The short
  /// step takes its L from the caller.
  static StepRule parse(const std::string& text, double L);

  const Kind& kind() const { return kind_; }

  /// The ell in h_t = (t + ell) F_t: the open-loop offset, 2 otherwise.
  int offset() const;
  bool is_monotone() const { return !std::holds_alternative<OpenLoop>(kind_); }

  std::string describe() const;

 private:
  explicit StepRule(Kind kind) : kind_(kind) {}
  Kind kind_;
};

/// Derivative of gamma -> f(x + gamma (s - x)).
using SegmentSlope = std::function<double(double)>;

/// Step size in [0, 1] for iteration t with Frank-Wolfe gap `gap` and
/// displacement `d`. Throws NumericError for gap < -1e-12.
double step_size(const StepRule& rule, long t, double gap, double d, const SegmentSlope& slope);

/// Exact line search on [0, 1] for a convex restriction.
double bisect_segment(const SegmentSlope& slope, double tol);

}  // namespace sharpfw
