#include <doctest.h>

#include "sharpfw/core.hpp"
#include "sharpfw/stepping.hpp"

#include <cmath>

using namespace sharpfw;

namespace {

// Derivative of (gamma - m)^2.
SegmentSlope parabola(double m) {
  return [m](double gamma) { return 2.0 * (gamma - m); };
}

}  // namespace

TEST_CASE("short step") {
  const auto ss = StepRule::short_step(1.0);
  CHECK(step_size(ss, 0, 2.0, 1.0, nullptr) == 1.0);
  CHECK(step_size(ss, 5, 0.25, 1.0, nullptr) == 0.25);
  CHECK(step_size(StepRule::short_step(4.0), 0, 1.0, 0.5, nullptr) == 1.0);
  CHECK(step_size(StepRule::short_step(8.0), 0, 1.0, 0.5, nullptr) == 0.5);
  // A degenerate segment takes the full step.
  CHECK(step_size(ss, 3, 0.0, 0.0, nullptr) == 1.0);
  CHECK(step_size(ss, 3, 0.0, 1.0, nullptr) == 0.0);
}

TEST_CASE("open loop") {
  const auto ol = StepRule::open_loop(2);
  CHECK(step_size(ol, 0, 1.0, 1.0, nullptr) == 1.0);
  CHECK(step_size(ol, 2, 1.0, 1.0, nullptr) == 0.5);
  for (int ell : {2, 3, 4, 7}) {
    const auto rule = StepRule::open_loop(ell);
    CHECK(rule.offset() == ell);
    for (long t : {0L, 1L, 10L, 999999L}) {
      CHECK(step_size(rule, t, 0.5, 2.0, nullptr) == double(ell) / double(t + ell));
    }
  }
}

TEST_CASE("line search on a parabola") {
  const auto ls = StepRule::line_search();
  CHECK(std::abs(step_size(ls, 0, 1.0, 1.0, parabola(0.3)) - 0.3) <= 1e-12);
  CHECK(std::abs(bisect_segment(parabola(0.7), 1e-9) - 0.7) <= 1e-9);
  // Minimizers outside [0, 1] clamp to the end points.
  CHECK(step_size(ls, 0, 1.0, 1.0, parabola(1.7)) == 1.0);
  CHECK(step_size(ls, 0, 1.0, 1.0, parabola(-0.4)) == 0.0);
}

TEST_CASE("line search brackets a sign change") {
  for (double m : {0.0, 1e-9, 0.123456789, 0.5, 0.999, 1.0}) {
    // A skewed convex slope: derivative of exp(gamma) - e^m gamma.
    const SegmentSlope slope = [m](double gamma) { return std::exp(gamma) - std::exp(m); };
    const double tol = 1e-12;
    const double gamma = bisect_segment(slope, tol);
    REQUIRE(gamma >= 0.0);
    REQUIRE(gamma <= 1.0);
    if (gamma > 0.0 && gamma < 1.0) {
      CHECK(slope(std::max(0.0, gamma - tol)) <= 0.0);
      CHECK(slope(std::min(1.0, gamma + tol)) >= 0.0);
    } else if (gamma == 0.0) {
      CHECK(slope(0.0) >= -1e-12);
    } else {
      CHECK(slope(1.0) <= 1e-12);
    }
    CHECK(std::abs(gamma - m) <= tol);
  }
}

TEST_CASE("negative gap is rejected") {
  for (const auto& rule : {StepRule::short_step(1.0), StepRule::line_search(), StepRule::open_loop(2)}) {
    CHECK_THROWS_AS(step_size(rule, 0, -1e-6, 1.0, parabola(0.5)), NumericError);
    CHECK_NOTHROW(step_size(rule, 0, -1e-13, 1.0, parabola(0.5)));
  }
}

TEST_CASE("rule parsing and validation") {
  CHECK(std::holds_alternative<ShortStep>(StepRule::parse("ss", 2.0).kind()));
  CHECK(std::get<ShortStep>(StepRule::parse("ss", 2.0).kind()).L == 2.0);
  CHECK(std::holds_alternative<LineSearch>(StepRule::parse("ls", 1.0).kind()));
  CHECK(StepRule::parse("ol", 1.0).offset() == 2);
  CHECK(StepRule::parse("ol:5", 1.0).offset() == 5);
  CHECK(StepRule::parse("ss", 1.0).is_monotone());
  CHECK_FALSE(StepRule::parse("ol:3", 1.0).is_monotone());
  CHECK(StepRule::parse("ss", 1.0).offset() == 2);
  CHECK_THROWS_AS(StepRule::parse("ol:1", 1.0), InvalidArgument);
  CHECK_THROWS_AS(StepRule::parse("ol:x", 1.0), InvalidArgument);
  CHECK_THROWS_AS(StepRule::parse("fw", 1.0), InvalidArgument);
  CHECK_THROWS_AS(StepRule::short_step(0.0), InvalidArgument);
  CHECK_THROWS_AS(StepRule::line_search(1e-3), InvalidArgument);
  CHECK_THROWS_AS(StepRule::line_search(0.0), InvalidArgument);
  CHECK_THROWS_AS(StepRule::open_loop(1), InvalidArgument);
}
