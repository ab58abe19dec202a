#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <type_traits>
#include <variant>

namespace oracle {

using namespace sharpfw;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Vector> fibonacci_sphere(int n) {
  std::vector<Vector> out;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double r = std::sqrt(1.0 - z * z);
    Vector u(3);
    u << r * std::cos(golden * i), r * std::sin(golden * i), z;
    out.push_back(u);
  }
  return out;
}

double pnorm(const Vector& u, double p) {
  double s = 0.0;
  for (double v : u) s += std::pow(std::abs(v), p);
  return std::pow(s, 1.0 / p);
}

void push_segment(std::vector<Vector>& out, const Vector& a, const Vector& b, int n) {
  for (int i = 0; i <= n; ++i) out.push_back(a + (b - a) * (double(i) / n));
}

}  // namespace

Vector polar(double theta) {
  Vector u(2);
  u << std::cos(theta), std::sin(theta);
  return u;
}

std::vector<Vector> directions(Eigen::Index dim, int n, unsigned seed) {
  if (dim == 2) {
    std::vector<Vector> out;
    for (int i = 0; i < n; ++i) out.push_back(polar(2.0 * kPi * (i + 0.5) / n));
    return out;
  }
  if (dim == 3) return fibonacci_sphere(n);
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Vector> out;
  for (int i = 0; i < n; ++i) {
    Vector u(dim);
    for (auto& v : u) v = normal(rng);
    out.push_back(u.normalized());
  }
  return out;
}

std::vector<Vector> boundary_points(const FeasibleSet& set, int n) {
  std::vector<Vector> out;
  const Eigen::Index dim = set.dim();
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, L2Ball>) {
          for (const auto& u : directions(dim, n)) out.push_back(k.center + k.radius * u);
        } else if constexpr (std::is_same_v<K, LpBall>) {
          for (const auto& u : directions(dim, n)) out.push_back(k.center + k.radius * u / pnorm(u, k.p));
        } else if constexpr (std::is_same_v<K, Simplex>) {
          for (Eigen::Index i = 0; i < k.dim; ++i) out.push_back(Vector::Unit(k.dim, i));
        } else if constexpr (std::is_same_v<K, Box>) {
          for (long mask = 0; mask < (1L << dim); ++mask) {
            Vector v(dim);
            for (Eigen::Index i = 0; i < dim; ++i) v[i] = (mask >> i) & 1 ? k.hi[i] : k.lo[i];
            out.push_back(v);
          }
        } else if constexpr (std::is_same_v<K, Ellipsoid>) {
          for (const auto& u : directions(dim, n)) out.push_back(k.center + k.shape * u);
        } else if constexpr (std::is_same_v<K, Capsule>) {
          for (const auto& u : directions(dim, n)) {
            out.push_back(k.a + k.radius * u);
            out.push_back(k.b + k.radius * u);
          }
        } else if constexpr (std::is_same_v<K, Stadium>) {
          const double a = k.half_length;
          for (int i = 0; i <= n; ++i) {
            const double th = -kPi / 2 + kPi * i / n;
            Vector right(2), left(2), top(2), bottom(2);
            right << a + std::cos(th), std::sin(th);
            left << -a - std::cos(th), std::sin(th);
            const double x = -a + 2.0 * a * i / n;
            top << x, 1.0;
            bottom << x, -1.0;
            out.insert(out.end(), {right, left, top, bottom});
          }
        } else if constexpr (std::is_same_v<K, TruncatedDisk>) {
          const double b = k.cut;
          const double th0 = std::acos(b);
          for (int i = 0; i <= n; ++i) {
            const double th = th0 + (2.0 * kPi - 2.0 * th0) * i / n;
            out.push_back(polar(th));
            Vector chord(2);
            chord << b, -std::sin(th0) + 2.0 * std::sin(th0) * i / n;
            out.push_back(chord);
          }
        } else if constexpr (std::is_same_v<K, VertexPolytope>) {
          for (Eigen::Index j = 0; j < k.vertices.cols(); ++j) out.push_back(k.vertices.col(j));
        } else if constexpr (std::is_same_v<K, SuperflatBody>) {
          // Lower curve y = exp(-1/x^2) on |x| <= 1/2, half-disk of radius
          // 1/2 on top of the chord at height exp(-4).
          const double w = 0.5;
          const double top = std::exp(-1.0 / (w * w));
          for (int i = 0; i <= n; ++i) {
            const double x = -w + 2.0 * w * i / n;
            Vector lower(2), upper(2);
            lower << x, x == 0.0 ? 0.0 : std::exp(-1.0 / (x * x));
            const double th = kPi * i / n;
            upper << w * std::cos(th), top + w * std::sin(th);
            out.push_back(k.scale * lower);
            out.push_back(k.scale * upper);
          }
        }
      },
      set.kind());
  return out;
}

double sample_min(const std::vector<Vector>& points, const Vector& g) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& y : points) best = std::min(best, g.dot(y));
  return best;
}

Vector sample_argmin(const std::vector<Vector>& points, const Vector& g) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (g.dot(points[i]) < g.dot(points[best])) best = i;
  }
  return points[best];
}

double sample_diameter(const std::vector<Vector>& points) {
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) best = std::max(best, (points[i] - points[j]).norm());
  }
  return best;
}

Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x, double h) {
  Vector g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vector up = x, down = x;
    up[i] += h;
    down[i] -= h;
    g[i] = (f(up) - f(down)) / (2.0 * h);
  }
  return g;
}

double simplex_grid_min_half_norm(int n) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      const double a = double(i) / n, b = double(j) / n, c = 1.0 - a - b;
      best = std::min(best, 0.5 * (a * a + b * b + c * c));
    }
  }
  return best;
}

}  // namespace oracle
