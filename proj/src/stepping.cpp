#include "sharpfw/stepping.hpp"

#include "sharpfw/core.hpp"

#include <algorithm>
#include <cmath>

namespace sharpfw {

StepRule StepRule::short_step(double L) {
  if (!(L > 0.0) || !std::isfinite(L)) throw InvalidArgument("short step: L must be positive");
  return StepRule(ShortStep{L});
}

StepRule StepRule::line_search(double tol) {
  if (!(tol > 0.0 && tol <= 1e-6)) throw InvalidArgument("line search: tolerance must lie in (0, 1e-6]");
  return StepRule(LineSearch{tol});
}

StepRule StepRule::open_loop(int ell) {
  if (ell < 2) throw InvalidArgument("open loop: ell must be at least 2");
  return StepRule(OpenLoop{ell});
}

StepRule StepRule::parse(const std::string& text, double L) {
  if (text == "ss") return short_step(L);
  if (text == "ls") return line_search();
  if (text == "ol") return open_loop(2);
  if (text.rfind("ol:", 0) == 0) {
    std::size_t used = 0;
    int ell = 0;
    try {
      ell = std::stoi(text.substr(3), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size() - 3) throw InvalidArgument("step rule: bad open-loop offset in '" + text + "'");
    return open_loop(ell);
  }
  throw InvalidArgument("step rule: expected ss, ls or ol:<ell>, got '" + text + "'");
}

int StepRule::offset() const {
  if (const auto* ol = std::get_if<OpenLoop>(&kind_)) return ol->ell;
  return 2;
}

std::string StepRule::describe() const {
  if (std::holds_alternative<ShortStep>(kind_)) return "ss";
  if (std::holds_alternative<LineSearch>(kind_)) return "ls";
  return "ol:" + std::to_string(std::get<OpenLoop>(kind_).ell);
}

double bisect_segment(const SegmentSlope& slope, double tol) {
  if (slope(0.0) >= 0.0) return 0.0;
  if (slope(1.0) <= 0.0) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double v = slope(mid);
    if (v < 0.0)
      lo = mid;
    else if (v > 0.0)
      hi = mid;
    else
      return mid;
  }
  return 0.5 * (lo + hi);
}

double step_size(const StepRule& rule, long t, double gap, double d, const SegmentSlope& slope) {
  if (t < 0) throw InvalidArgument("step_size: negative iteration index");
  if (gap < -1e-12) throw NumericError("step_size: negative Frank-Wolfe gap " + std::to_string(gap));
  if (d < 0.0) throw InvalidArgument("step_size: negative displacement");
  return std::visit(
      [&](const auto& r) -> double {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, ShortStep>) {
          if (d == 0.0) return 1.0;
          return std::clamp(std::max(gap, 0.0) / (r.L * d * d), 0.0, 1.0);
        } else if constexpr (std::is_same_v<R, LineSearch>) {
          if (d == 0.0) return 1.0;
          return bisect_segment(slope, r.tol);
        } else {
          return static_cast<double>(r.ell) / static_cast<double>(t + r.ell);
        }
      },
      rule.kind());
}

}  // namespace sharpfw
