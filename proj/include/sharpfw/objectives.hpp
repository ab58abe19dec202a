#pragma once

#include "sharpfw/core.hpp"
#include "sharpfw/geometry.hpp"

#include <optional>
#include <string>
#include <variant>

namespace sharpfw {

/// 1/2 x'Qx + c'x with Q symmetric positive semidefinite.
struct Quadratic {
  Matrix Q;
  Vector c;
};

struct Linear {
  Vector c;
};

/// ||x - center||^r, r >= 2.
struct DistancePower {
  Vector center;
  double r;
};

/// 1/2 x_2^2 + psi(c - x_1) with psi(u) = u - arctan(u).
struct StadiumPsi {
  double c;
};

/// Local Holder error bound dist(x, M)^r <= B (f(x) - f*) for dist(x, M) < rho.
struct HebCertificate {
  double B;
  double r;
  double rho;
};

HebCertificate make_heb_certificate(double B, double r, double rho);

/// Known optimum of an (objective, set) pair. `minimizer` is a point of the
/// minimizer set M; it is set only when M is that single point.
struct GroundTruth {
  double f_star = 0.0;
  std::optional<Vector> minimizer;
  std::optional<HebCertificate> heb;
  std::string provenance = "closed-form";
};

double psi(double u);
double psi_prime(double u);

class Objective {
 public:
  using Kind = std::variant<Quadratic, Linear, DistancePower, StadiumPsi>;

  /// L defaults to the largest eigenvalue of Q.
  static Objective quadratic(Matrix Q, Vector c, std::optional<double> smoothness = std::nullopt);
  /// Any L > 0 is a valid smoothness constant for a linear function.
  static Objective linear(Vector c, double smoothness = 1.0);
  /// L = r (r - 1) R^(r - 2) with R bounding ||x - center|| over `set`.
  static Objective distance_power(Vector center, double r, const FeasibleSet& set);
  static Objective stadium_psi(double c = 2.0);

  Objective with_ground_truth(GroundTruth truth) const;
  Objective with_smoothness(double smoothness) const;

  const Kind& kind() const { return kind_; }
  Eigen::Index dim() const { return dim_; }
  double smoothness() const { return smoothness_; }
  const std::optional<GroundTruth>& ground_truth() const { return truth_; }

  double value(const VectorRef& x) const;
  Vector gradient(const VectorRef& x) const;
  void gradient(const VectorRef& x, Vector& out) const;

  /// f(x) - f*, clipped to 0 for round-off below 1e-12. Throws when no f* is
  /// known (run in dual-gap-only mode instead) or the gap is clearly negative.
  double primal_gap(const VectorRef& x) const;

  /// Euclidean distance to the recorded minimizer.
  double dist_to_minimizers(const VectorRef& x) const;

  std::string describe() const;

 private:
  explicit Objective(Kind kind, double smoothness);

  Kind kind_;
  Eigen::Index dim_ = -1;  // -1: any dimension (StadiumPsi is planar)
  double smoothness_ = 1.0;
  std::optional<GroundTruth> truth_;
};

inline double value(const Objective& f, const VectorRef& x) { return f.value(x); }
inline Vector grad(const Objective& f, const VectorRef& x) { return f.gradient(x); }
inline double primal_gap(const Objective& f, const VectorRef& x) { return f.primal_gap(x); }
inline double dist_to_minimizers(const Objective& f, const VectorRef& x) { return f.dist_to_minimizers(x); }

/// Closed-form optimum over `set` when one is available: distance powers,
/// the stadium objective on a stadium, linear functions, isotropic
/// quadratics. std::nullopt means a reference solve is needed.
std::optional<GroundTruth> known_ground_truth(const FeasibleSet& set, const Objective& f);

}  // namespace sharpfw
