#include "sharpfw/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace sharpfw {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kHalfWidth = detail::kSuperflatHalfWidth;

// Pick between two candidate atoms on a flat face.
const Vector& lex_pick(const Vector& a, const Vector& b, TieBreak rule) {
  const bool a_first = !lex_less(b, a);
  if (rule == TieBreak::LexMin) return a_first ? a : b;
  return a_first ? b : a;
}

std::string fmt_vec(const VectorRef& v) {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------- simplex

Vector project_to_simplex(const VectorRef& y) {
  std::vector<double> u(y.data(), y.data() + y.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumulative += u[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (u[k] - candidate > 0.0) theta = candidate;
  }
  return (y.array() - theta).max(0.0).matrix();
}

// ---------------------------------------------------------------- lp ball

double lp_norm(const VectorRef& y, double p) {
  const double m = y.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  return m * std::pow((y.cwiseAbs() / m).array().pow(p).sum(), 1.0 / p);
}

// Solves t + mu * p * t^(p-1) = a for t in [0, a].
double lp_shrink(double a, double mu, double p) {
  double lo = 0.0;
  double hi = a;
  for (int it = 0; it < 200 && hi - lo > 1e-17 * a; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid + mu * p * std::pow(mid, p - 1.0) > a)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

Vector lp_nearest(const LpBall& ball, const VectorRef& x) {
  const Vector y = x - ball.center;
  if (lp_norm(y, ball.p) <= ball.radius) return x;
  const double target = std::pow(ball.radius, ball.p);
  auto mass = [&](double mu) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) s += std::pow(lp_shrink(std::abs(y[i]), mu, ball.p), ball.p);
    return s;
  };
  double mu_hi = 1.0;
  while (mass(mu_hi) > target) mu_hi *= 2.0;
  double mu_lo = 0.0;
  for (int it = 0; it < 200 && mu_hi - mu_lo > 1e-16 * mu_hi; ++it) {
    const double mid = 0.5 * (mu_lo + mu_hi);
    if (mass(mid) > target)
      mu_lo = mid;
    else
      mu_hi = mid;
  }
  Vector z(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    z[i] = std::copysign(lp_shrink(std::abs(y[i]), mu_hi, ball.p), y[i]);
  }
  return ball.center + z;
}

// ---------------------------------------------------------------- ellipsoid

Vector ellipsoid_nearest(const Ellipsoid& e, const VectorRef& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(e.shape);
  const Vector sigma = eig.eigenvalues();
  const Matrix& basis = eig.eigenvectors();
  const Vector y = basis.transpose() * (x - e.center);
  if ((y.array() / sigma.array()).matrix().squaredNorm() <= 1.0) return x;
  auto level = [&](double mu) {
    return (sigma.array() * y.array() / (sigma.array().square() + mu)).matrix().squaredNorm();
  };
  double lo = 0.0;
  double hi = sigma.maxCoeff() * y.norm();
  for (int it = 0; it < 300 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (level(mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  const Vector z = (sigma.array().square() * y.array() / (sigma.array().square() + hi)).matrix();
  return e.center + basis * z;
}

// ---------------------------------------------------------------- capsule

Vector capsule_nearest(const VectorRef& a, const VectorRef& b, double radius, const VectorRef& x) {
  const Vector ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0.0 ? std::clamp((x - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  const Vector core = a + t * ab;
  const Vector off = x - core;
  const double r = off.norm();
  if (r <= radius) return x;
  return core + (radius / r) * off;
}

Vector capsule_lmo(const VectorRef& a, const VectorRef& b, double radius, const VectorRef& g, TieBreak rule) {
  const double va = g.dot(a);
  const double vb = g.dot(b);
  Vector end;
  if (va < vb)
    end = a;
  else if (vb < va)
    end = b;
  else
    end = lex_pick(Vector(a), Vector(b), rule);
  return end - (radius / g.norm()) * g;
}

// ---------------------------------------------------------------- truncated disk

Vector truncated_disk_nearest(double cut, const VectorRef& x) {
  if (x.norm() <= 1.0 && x[0] <= cut) return x;
  const double n = x.norm();
  if (n > 0.0) {
    Vector on_disk = x / std::max(n, 1.0);
    if (on_disk[0] <= cut) return on_disk;
  }
  Vector on_plane = x;
  on_plane[0] = std::min(x[0], cut);
  if (on_plane.norm() <= 1.0) return on_plane;
  const double h = std::sqrt(1.0 - cut * cut);
  Vector upper(2), lower(2);
  upper << cut, h;
  lower << cut, -h;
  return (x - upper).norm() <= (x - lower).norm() ? upper : lower;
}

// ---------------------------------------------------------------- polytope

// Nearest point of conv(columns) via accelerated projected gradient on the
// barycentric weights, stopped on the Frank-Wolfe duality gap.
Vector polytope_nearest(const Matrix& vertices, const VectorRef& x) {
  const Eigen::Index m = vertices.cols();
  if (m == 1) return vertices.col(0);
  const Matrix gram = vertices.transpose() * vertices;
  const double lipschitz = std::max(gram.selfadjointView<Eigen::Upper>().eigenvalues().maxCoeff(), 1e-300);
  const Vector vx = vertices.transpose() * x;
  Vector w = Vector::Constant(m, 1.0 / static_cast<double>(m));
  Vector w_prev = w;
  Vector y = w;
  double momentum = 1.0;
  for (int it = 0; it < 50000; ++it) {
    const Vector grad_w = gram * w - vx;
    const double gap = grad_w.dot(w) - grad_w.minCoeff();
    const double res2 = (vertices * w - x).squaredNorm();
    if (gap <= 1e-13 * std::max(res2, 1e-12)) break;
    const Vector grad_y = gram * y - vx;
    w_prev = w;
    w = project_to_simplex(y - grad_y / lipschitz);
    const double next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    y = w + ((momentum - 1.0) / next) * (w - w_prev);
    momentum = next;
  }
  return vertices * w;
}

// ---------------------------------------------------------------- superflat

// Minimizes g1 * x + g2 * phi(x) over [-w, w] for g2 > 0 by bisection on
// log phi'(|x|) = log|c|, c = -g1 / g2, so the flat region never underflows.
double superflat_lower_argmin(double g1, double g2) {
  const double c = -g1 / g2;
  if (c == 0.0) return 0.0;
  const double target = std::log(std::abs(c));
  auto log_slope = [](double y) { return std::log(2.0) - 3.0 * std::log(y) - 1.0 / (y * y); };
  double lo = 0.0;
  double hi = kHalfWidth;
  if (log_slope(hi) <= target) return std::copysign(hi, c);
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (log_slope(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return std::copysign(0.5 * (lo + hi), c);
}

Vector superflat_lower_point(double x) {
  Vector p(2);
  p << x, detail::superflat_profile(x);
  return p;
}

Vector superflat_upper_point(double theta) {
  Vector p(2);
  p << kHalfWidth * std::cos(theta), detail::superflat_profile(kHalfWidth) + kHalfWidth * std::sin(theta);
  return p;
}

bool superflat_inside(const VectorRef& z) {
  if (std::abs(z[0]) > kHalfWidth) return false;
  const double top =
      detail::superflat_profile(kHalfWidth) + std::sqrt(std::max(0.0, kHalfWidth * kHalfWidth - z[0] * z[0]));
  return z[1] >= detail::superflat_profile(z[0]) && z[1] <= top;
}

template <class Curve>
Vector nearest_on_curve(const Curve& curve, double lo, double hi, const VectorRef& z) {
  constexpr int kSamples = 4096;
  const double step = (hi - lo) / kSamples;
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kSamples; ++i) {
    const double d = (curve(lo + i * step) - z).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  double a = lo + std::max(best - 1, 0) * step;
  double b = lo + std::min(best + 1, kSamples) * step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  while (b - a > 1e-15) {
    const double c = b - inv_phi * (b - a);
    const double d = a + inv_phi * (b - a);
    if ((curve(c) - z).squaredNorm() < (curve(d) - z).squaredNorm())
      b = d;
    else
      a = c;
    if (c == a && d == b) break;
  }
  return curve(0.5 * (a + b));
}

Vector superflat_nearest(double scale, const VectorRef& x) {
  const Vector z = x / scale;
  if (superflat_inside(z)) return x;
  const Vector lower = nearest_on_curve(superflat_lower_point, -kHalfWidth, kHalfWidth, z);
  const Vector upper = nearest_on_curve(superflat_upper_point, 0.0, M_PI, z);
  return scale * ((lower - z).squaredNorm() <= (upper - z).squaredNorm() ? lower : upper);
}

}  // namespace

// ================================================================ construction

UcParams make_uc_params(double alpha, double q) {
  if (!(alpha > 0.0) || !(q >= 2.0)) throw InvalidArgument("UcParams: need alpha > 0 and q >= 2");
  return {alpha, q};
}

FeasibleSet::FeasibleSet(Kind kind) : kind_(std::move(kind)) {
  std::visit(
      Overloaded{
          [&](const L2Ball& s) {
            dim_ = s.center.size();
            diameter_ = 2.0 * s.radius;
          },
          [&](const LpBall& s) {
            dim_ = s.center.size();
            diameter_ = 2.0 * s.radius * std::pow(static_cast<double>(dim_), 0.5 - 1.0 / s.p);
          },
          [&](const Simplex& s) {
            dim_ = s.dim;
            diameter_ = s.dim > 1 ? std::sqrt(2.0) : 0.0;
          },
          [&](const Box& s) {
            dim_ = s.lo.size();
            diameter_ = (s.hi - s.lo).norm();
          },
          [&](const Ellipsoid& s) {
            dim_ = s.center.size();
            diameter_ = 2.0 * Eigen::SelfAdjointEigenSolver<Matrix>(s.shape, Eigen::EigenvaluesOnly)
                                  .eigenvalues()
                                  .maxCoeff();
          },
          [&](const Capsule& s) {
            dim_ = s.a.size();
            diameter_ = (s.b - s.a).norm() + 2.0 * s.radius;
          },
          [&](const Stadium& s) {
            dim_ = 2;
            diameter_ = 2.0 * s.half_length + 2.0;
          },
          [&](const TruncatedDisk&) {
            dim_ = 2;
            diameter_ = 2.0;
          },
          [&](const VertexPolytope& s) {
            dim_ = s.vertices.rows();
            double best = 0.0;
            for (Eigen::Index i = 0; i < s.vertices.cols(); ++i)
              for (Eigen::Index j = i + 1; j < s.vertices.cols(); ++j)
                best = std::max(best, (s.vertices.col(i) - s.vertices.col(j)).norm());
            diameter_ = best;
          },
          // The body sits inside the disk of radius w around (0, phi(w)),
          // touching it at both corners.
          [&](const SuperflatBody& s) {
            dim_ = 2;
            diameter_ = 2.0 * kHalfWidth * s.scale;
          },
      },
      kind_);
}

FeasibleSet FeasibleSet::l2_ball(Vector center, double radius) {
  if (center.size() < 1) throw InvalidArgument("l2_ball: empty center");
  require_finite(center, "l2_ball center");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("l2_ball: radius must be positive");
  return FeasibleSet(L2Ball{std::move(center), radius});
}

FeasibleSet FeasibleSet::lp_ball(Vector center, double radius, double p) {
  if (center.size() < 1) throw InvalidArgument("lp_ball: empty center");
  require_finite(center, "lp_ball center");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("lp_ball: radius must be positive");
  if (!(p >= 2.0) || !std::isfinite(p)) throw InvalidArgument("lp_ball: need finite p >= 2");
  return FeasibleSet(LpBall{std::move(center), radius, p});
}

FeasibleSet FeasibleSet::simplex(Eigen::Index dim) {
  if (dim < 1) throw InvalidArgument("simplex: dim must be positive");
  return FeasibleSet(Simplex{dim});
}

FeasibleSet FeasibleSet::box(Vector lo, Vector hi) {
  if (lo.size() < 1 || lo.size() != hi.size()) throw InvalidArgument("box: bounds must have equal positive size");
  require_finite(lo, "box lo");
  require_finite(hi, "box hi");
  if ((hi.array() < lo.array()).any()) throw InvalidArgument("box: lo must not exceed hi");
  return FeasibleSet(Box{std::move(lo), std::move(hi)});
}

FeasibleSet FeasibleSet::ellipsoid(Vector center, Matrix shape) {
  if (center.size() < 1 || shape.rows() != center.size() || shape.cols() != center.size())
    throw InvalidArgument("ellipsoid: shape must be square and match center");
  require_finite(center, "ellipsoid center");
  if (!shape.allFinite() || !shape.isApprox(shape.transpose(), 1e-12))
    throw InvalidArgument("ellipsoid: shape must be finite and symmetric");
  const Matrix sym = 0.5 * (shape + shape.transpose());
  if (Eigen::SelfAdjointEigenSolver<Matrix>(sym, Eigen::EigenvaluesOnly).eigenvalues().minCoeff() <= 0.0)
    throw InvalidArgument("ellipsoid: shape must be positive definite");
  return FeasibleSet(Ellipsoid{std::move(center), sym});
}

FeasibleSet FeasibleSet::capsule(Vector a, Vector b, double radius) {
  if (a.size() < 1 || a.size() != b.size()) throw InvalidArgument("capsule: endpoints must have equal size");
  require_finite(a, "capsule a");
  require_finite(b, "capsule b");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("capsule: radius must be positive");
  return FeasibleSet(Capsule{std::move(a), std::move(b), radius});
}

FeasibleSet FeasibleSet::stadium(double half_length) {
  if (!(half_length > 0.0) || !std::isfinite(half_length))
    throw InvalidArgument("stadium: half-length must be positive");
  return FeasibleSet(Stadium{half_length});
}

FeasibleSet FeasibleSet::truncated_disk(double cut) {
  if (!(cut > 0.0 && cut < 1.0)) throw InvalidArgument("truncated_disk: cut level must lie in (0, 1)");
  return FeasibleSet(TruncatedDisk{cut});
}

FeasibleSet FeasibleSet::vertex_polytope(Matrix vertices) {
  if (vertices.cols() < 1 || vertices.rows() < 1) throw InvalidArgument("vertex_polytope: empty vertex list");
  if (!vertices.allFinite()) throw InvalidArgument("vertex_polytope: non-finite vertex");
  return FeasibleSet(VertexPolytope{std::move(vertices)});
}

FeasibleSet FeasibleSet::superflat_body(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw InvalidArgument("superflat_body: scale must be positive");
  return FeasibleSet(SuperflatBody{scale});
}

FeasibleSet FeasibleSet::with_tie_break(TieBreak rule) const {
  FeasibleSet copy = *this;
  copy.tie_break_ = rule;
  return copy;
}

// ================================================================ queries

Vector FeasibleSet::canonical_atom() const {
  return std::visit(
      Overloaded{
          [&](const L2Ball& s) -> Vector { return s.center - s.radius * unit(dim_, 0); },
          [&](const LpBall& s) -> Vector { return s.center - s.radius * unit(dim_, 0); },
          [&](const Simplex&) -> Vector { return unit(dim_, 0); },
          [&](const Box& s) -> Vector { return s.lo; },
          [&](const Ellipsoid& s) -> Vector {
            const Vector axis = s.shape.col(0);
            return s.center - s.shape * axis / axis.norm();
          },
          [&](const Capsule& s) -> Vector {
            return (lex_less(s.b, s.a) ? s.b : s.a) - s.radius * unit(dim_, 0);
          },
          [&](const Stadium& s) -> Vector {
            Vector v(2);
            v << -s.half_length - 1.0, 0.0;
            return v;
          },
          [&](const TruncatedDisk&) -> Vector { return -unit(2, 0); },
          [&](const VertexPolytope& s) -> Vector { return s.vertices.col(0); },
          [&](const SuperflatBody& s) -> Vector { return s.scale * superflat_upper_point(M_PI); },
      },
      kind_);
}

Vector FeasibleSet::lmo(const VectorRef& g) const {
  require_dim(g, dim_, "lmo");
  require_finite(g, "lmo gradient");
  if (g.isZero(0.0)) return canonical_atom();
  const TieBreak rule = tie_break_;
  return std::visit(
      Overloaded{
          [&](const L2Ball& s) -> Vector { return s.center - (s.radius / g.norm()) * g; },
          [&](const LpBall& s) -> Vector {
            const double m = g.cwiseAbs().maxCoeff();
            const Vector w = (g.cwiseAbs() / m).array().pow(1.0 / (s.p - 1.0)).matrix();
            const double norm = lp_norm(w, s.p);
            Vector out = s.center;
            for (Eigen::Index i = 0; i < dim_; ++i) {
              if (g[i] != 0.0) out[i] -= std::copysign(s.radius * w[i] / norm, g[i]);
            }
            return out;
          },
          [&](const Simplex&) -> Vector {
            const double best = g.minCoeff();
            // Lex-min point of conv{e_i : i tied} is e_{max i}; lex-max is e_{min i}.
            Eigen::Index pick = -1;
            for (Eigen::Index i = 0; i < dim_; ++i) {
              if (g[i] == best) {
                pick = i;
                if (rule == TieBreak::LexMax) break;
              }
            }
            return unit(dim_, pick);
          },
          [&](const Box& s) -> Vector {
            Vector out(dim_);
            for (Eigen::Index i = 0; i < dim_; ++i) {
              if (g[i] > 0.0)
                out[i] = s.lo[i];
              else if (g[i] < 0.0)
                out[i] = s.hi[i];
              else
                out[i] = rule == TieBreak::LexMin ? s.lo[i] : s.hi[i];
            }
            return out;
          },
          [&](const Ellipsoid& s) -> Vector {
            const Vector pg = s.shape * g;
            return s.center - s.shape * pg / pg.norm();
          },
          [&](const Capsule& s) -> Vector { return capsule_lmo(s.a, s.b, s.radius, g, rule); },
          [&](const Stadium& s) -> Vector {
            Vector a(2), b(2);
            a << -s.half_length, 0.0;
            b << s.half_length, 0.0;
            return capsule_lmo(a, b, 1.0, g, rule);
          },
          [&](const TruncatedDisk& s) -> Vector {
            const Vector u = g / g.norm();
            if (-u[0] <= s.cut) return -u;
            const double h = std::sqrt(1.0 - s.cut * s.cut);
            Vector out(2);
            double x2;
            if (g[1] > 0.0)
              x2 = -h;
            else if (g[1] < 0.0)
              x2 = h;
            else
              x2 = rule == TieBreak::LexMin ? -h : h;
            out << s.cut, x2;
            return out;
          },
          [&](const VertexPolytope& s) -> Vector {
            const Vector values = s.vertices.transpose() * g;
            const double best = values.minCoeff();
            Eigen::Index pick = -1;
            for (Eigen::Index j = 0; j < values.size(); ++j) {
              if (values[j] != best) continue;
              if (pick < 0) {
                pick = j;
                continue;
              }
              const Vector cand = s.vertices.col(j);
              const Vector held = s.vertices.col(pick);
              if (rule == TieBreak::LexMin ? lex_less(cand, held) : lex_less(held, cand)) pick = j;
            }
            return s.vertices.col(pick);
          },
          [&](const SuperflatBody& s) -> Vector {
            if (g[1] > 0.0) return s.scale * superflat_lower_point(superflat_lower_argmin(g[0], g[1]));
            if (g[1] < 0.0) {
              Vector top(2);
              top << 0.0, detail::superflat_profile(kHalfWidth);
              return s.scale * (top - (kHalfWidth / g.norm()) * g);
            }
            return s.scale * superflat_upper_point(g[0] > 0.0 ? M_PI : 0.0);
          },
      },
      kind_);
}

Vector detail::nearest_point(const FeasibleSet& set, const VectorRef& x) {
  require_dim(x, set.dim(), "nearest_point");
  require_finite(x, "nearest_point");
  return std::visit(
      Overloaded{
          [&](const L2Ball& s) -> Vector {
            const Vector off = x - s.center;
            const double r = off.norm();
            if (r <= s.radius) return x;
            return s.center + (s.radius / r) * off;
          },
          [&](const LpBall& s) -> Vector { return lp_nearest(s, x); },
          [&](const Simplex&) -> Vector { return project_to_simplex(x); },
          [&](const Box& s) -> Vector { return x.cwiseMax(s.lo).cwiseMin(s.hi); },
          [&](const Ellipsoid& s) -> Vector { return ellipsoid_nearest(s, x); },
          [&](const Capsule& s) -> Vector { return capsule_nearest(s.a, s.b, s.radius, x); },
          [&](const Stadium& s) -> Vector {
            Vector a(2), b(2);
            a << -s.half_length, 0.0;
            b << s.half_length, 0.0;
            return capsule_nearest(a, b, 1.0, x);
          },
          [&](const TruncatedDisk& s) -> Vector { return truncated_disk_nearest(s.cut, x); },
          [&](const VertexPolytope& s) -> Vector { return polytope_nearest(s.vertices, x); },
          [&](const SuperflatBody& s) -> Vector { return superflat_nearest(s.scale, x); },
      },
      set.kind());
}

double detail::superflat_profile(double x) {
  if (x == 0.0) return 0.0;
  return std::exp(-1.0 / (x * x));
}

bool FeasibleSet::contains(const VectorRef& x, double tol) const {
  require_dim(x, dim_, "contains");
  if (tol < 0.0) throw InvalidArgument("contains: tolerance must be nonnegative");
  if (!x.allFinite()) return false;
  const bool exact = std::visit(
      Overloaded{
          [&](const L2Ball& s) { return (x - s.center).norm() <= s.radius; },
          [&](const LpBall& s) { return lp_norm(x - s.center, s.p) <= s.radius; },
          [&](const Simplex&) { return (x.array() >= 0.0).all() && x.sum() == 1.0; },
          [&](const Box& s) { return (x.array() >= s.lo.array()).all() && (x.array() <= s.hi.array()).all(); },
          [&](const VertexPolytope&) { return false; },
          [&](const SuperflatBody& s) { return superflat_inside(x / s.scale); },
          [&](const auto&) { return false; },
      },
      kind_);
  if (exact) return true;
  // These tests are exact, so a zero tolerance needs no projection.
  const bool decided = std::holds_alternative<L2Ball>(kind_) || std::holds_alternative<LpBall>(kind_) ||
                       std::holds_alternative<Box>(kind_) || std::holds_alternative<SuperflatBody>(kind_);
  if (decided && tol == 0.0) return false;
  return distance(x) <= tol;
}

double FeasibleSet::distance(const VectorRef& x) const { return (x - detail::nearest_point(*this, x)).norm(); }

Vector FeasibleSet::interior_point() const {
  return std::visit(
      Overloaded{
          [&](const L2Ball& s) -> Vector { return s.center; },
          [&](const LpBall& s) -> Vector { return s.center; },
          [&](const Simplex&) -> Vector { return Vector::Constant(dim_, 1.0 / static_cast<double>(dim_)); },
          [&](const Box& s) -> Vector { return 0.5 * (s.lo + s.hi); },
          [&](const Ellipsoid& s) -> Vector { return s.center; },
          [&](const Capsule& s) -> Vector { return 0.5 * (s.a + s.b); },
          [&](const Stadium&) -> Vector { return Vector::Zero(2); },
          [&](const TruncatedDisk&) -> Vector { return Vector::Zero(2); },
          [&](const VertexPolytope& s) -> Vector { return s.vertices.rowwise().mean(); },
          [&](const SuperflatBody& s) -> Vector {
            Vector v(2);
            v << 0.0, 0.5 * s.scale * (detail::superflat_profile(kHalfWidth) + kHalfWidth);
            return v;
          },
      },
      kind_);
}

std::vector<Vector> FeasibleSet::critical_normals() const {
  std::vector<Vector> out;
  auto axes = [&] {
    for (Eigen::Index i = 0; i < dim_; ++i) {
      out.push_back(unit(dim_, i));
      out.push_back(-unit(dim_, i));
    }
  };
  std::visit(Overloaded{
                 [&](const Box&) { axes(); },
                 [&](const Simplex&) { axes(); },
                 [&](const VertexPolytope&) { axes(); },
                 [&](const Stadium&) {
                   out.push_back(unit(2, 1));
                   out.push_back(-unit(2, 1));
                 },
                 [&](const Capsule& s) {
                   if (dim_ == 2) {
                     Vector n(2);
                     n << -(s.b - s.a)[1], (s.b - s.a)[0];
                     if (n.norm() > 0.0) {
                       out.push_back(n / n.norm());
                       out.push_back(-n / n.norm());
                     }
                   }
                 },
                 [&](const TruncatedDisk&) { out.push_back(-unit(2, 0)); },
                 [&](const SuperflatBody&) { out.push_back(unit(2, 1)); },
                 [&](const auto&) {},
             },
             kind_);
  return out;
}

std::string FeasibleSet::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const L2Ball& s) { os << "l2ball(center=" << fmt_vec(s.center) << ",radius=" << s.radius << ")"; },
                 [&](const LpBall& s) {
                   os << "lpball(center=" << fmt_vec(s.center) << ",radius=" << s.radius << ",p=" << s.p << ")";
                 },
                 [&](const Simplex& s) { os << "simplex(dim=" << s.dim << ")"; },
                 [&](const Box& s) { os << "box(lo=" << fmt_vec(s.lo) << ",hi=" << fmt_vec(s.hi) << ")"; },
                 [&](const Ellipsoid& s) { os << "ellipsoid(center=" << fmt_vec(s.center) << ")"; },
                 [&](const Capsule& s) {
                   os << "capsule(a=" << fmt_vec(s.a) << ",b=" << fmt_vec(s.b) << ",radius=" << s.radius << ")";
                 },
                 [&](const Stadium& s) { os << "stadium(a=" << s.half_length << ")"; },
                 [&](const TruncatedDisk& s) { os << "truncated_disk(b=" << s.cut << ")"; },
                 [&](const VertexPolytope& s) { os << "polytope(vertices=" << s.vertices.cols() << ")"; },
                 [&](const SuperflatBody& s) { os << "superflat(scale=" << s.scale << ")"; },
             },
             kind_);
  if (tie_break_ == TieBreak::LexMax) os << "[lexmax]";
  return os.str();
}

}  // namespace sharpfw
