#pragma once

#include "sharpfw/core.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sharpfw {

/// How an LMO picks an atom when the minimizing face is not a single point.
/// LexMin is the default everywhere; LexMax is the alternative selection
/// used to probe selection-dependence of sharpness constants.
enum class TieBreak { LexMin, LexMax };

struct L2Ball {
  Vector center;
  double radius;
};

/// {x : ||x - center||_p <= radius}, p >= 2.
struct LpBall {
  Vector center;
  double radius;
  double p;
};

/// Probability simplex {x >= 0, sum x = 1} in R^dim.
struct Simplex {
  Eigen::Index dim;
};

struct Box {
  Vector lo;
  Vector hi;
};

/// {center + shape * u : ||u|| <= 1}, shape symmetric positive definite.
struct Ellipsoid {
  Vector center;
  Matrix shape;
};

/// Segment [a, b] thickened by a Euclidean ball of the given radius.
struct Capsule {
  Vector a;
  Vector b;
  double radius;
};

/// ([-a, a] x {0}) + B_2(0, 1) in the plane.
struct Stadium {
  double half_length;
};

/// B_2(0, 1) intersected with {x_1 <= cut}, 0 < cut < 1.
struct TruncatedDisk {
  double cut;
};

/// Convex hull of the columns of `vertices`.
struct VertexPolytope {
  Matrix vertices;
};

/// Strictly convex planar body whose lower boundary is y = exp(-1/x^2) on
/// |x| <= 1/2, closed by a half-disk on top; the whole body is scaled by
/// `scale`. It supports the vertical direction at the origin with zero
/// curvature of every order.
struct SuperflatBody {
  double scale;
};

/// A compact convex set with an exact linear minimization oracle.
///
/// Objects are immutable after construction; every query is const and safe
/// to call concurrently. Constructors validate their parameters and throw
/// InvalidArgument on nonsense (p < 2, radius <= 0, empty vertex list, ...).
class FeasibleSet {
 public:
  using Kind = std::variant<L2Ball, LpBall, Simplex, Box, Ellipsoid, Capsule, Stadium, TruncatedDisk,
                            VertexPolytope, SuperflatBody>;

  static FeasibleSet l2_ball(Vector center, double radius);
  static FeasibleSet lp_ball(Vector center, double radius, double p);
  static FeasibleSet simplex(Eigen::Index dim);
  static FeasibleSet box(Vector lo, Vector hi);
  static FeasibleSet ellipsoid(Vector center, Matrix shape);
  static FeasibleSet capsule(Vector a, Vector b, double radius);
  static FeasibleSet stadium(double half_length = 1.0);
  static FeasibleSet truncated_disk(double cut);
  static FeasibleSet vertex_polytope(Matrix vertices);
  static FeasibleSet superflat_body(double scale = 1.0);

  FeasibleSet with_tie_break(TieBreak rule) const;

  const Kind& kind() const { return kind_; }
  Eigen::Index dim() const { return dim_; }
  TieBreak tie_break() const { return tie_break_; }

  /// Atom minimizing <g, .> over the set, chosen deterministically: ties are
  /// broken lexicographically (per tie_break()), and g = 0 returns the
  /// canonical atom of the kind.
  Vector lmo(const VectorRef& g) const;

  /// min over the set of <g, y>.
  double support_min(const VectorRef& g) const { return g.dot(lmo(g)); }

  /// True iff x lies within Euclidean distance tol of the set.
  bool contains(const VectorRef& x, double tol = 0.0) const;

  /// Euclidean distance from x to the set (0 inside).
  double distance(const VectorRef& x) const;

  double diameter() const { return diameter_; }

  /// Atom returned for g = 0.
  Vector canonical_atom() const;

  /// A point of the set, used as an anchor for boundary searches.
  Vector interior_point() const;

  /// Directions that expose flat or degenerate faces; adversarial samplers
  /// include them next to random directions.
  std::vector<Vector> critical_normals() const;

  std::string describe() const;

 private:
  explicit FeasibleSet(Kind kind);

  Kind kind_;
  Eigen::Index dim_ = 0;
  double diameter_ = 0.0;
  TieBreak tie_break_ = TieBreak::LexMin;
};

inline Vector lmo(const FeasibleSet& set, const VectorRef& g) { return set.lmo(g); }
inline bool membership(const FeasibleSet& set, const VectorRef& x, double tol) {
  return set.contains(x, tol);
}
inline double diameter(const FeasibleSet& set) { return set.diameter(); }

/// Power-type uniform convexity constants (alpha, q).
struct UcParams {
  double alpha;
  double q;
};

UcParams make_uc_params(double alpha, double q);

namespace detail {

/// Nearest point of the set to x (x itself when inside). Used for
/// membership tolerances and ground-truth minimizers, never inside the
/// optimization loop.
Vector nearest_point(const FeasibleSet& set, const VectorRef& x);

/// exp(-1/x^2) with the continuous extension at 0.
double superflat_profile(double x);

constexpr double kSuperflatHalfWidth = 0.5;

}  // namespace detail

}  // namespace sharpfw
