#include "sharpfw/objectives.hpp"

#include <cmath>
#include <sstream>

namespace sharpfw {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Kinds whose nearest_point is a closed form or a bracketed 1-D solve.
bool has_exact_nearest(const FeasibleSet& set) {
  return !std::holds_alternative<VertexPolytope>(set.kind()) && !std::holds_alternative<SuperflatBody>(set.kind());
}

bool strictly_convex(const FeasibleSet& set) {
  return std::holds_alternative<L2Ball>(set.kind()) || std::holds_alternative<LpBall>(set.kind()) ||
         std::holds_alternative<Ellipsoid>(set.kind()) || std::holds_alternative<SuperflatBody>(set.kind());
}

}  // namespace

double psi(double u) {
  // u - atan(u) cancels catastrophically near 0; use the odd series there.
  if (std::abs(u) < 0.1) {
    const double u2 = u * u;
    double term = u * u2;
    double sum = 0.0;
    for (int k = 3; k <= 23; k += 2) {
      sum += ((k / 2) % 2 == 1 ? 1.0 : -1.0) * term / k;
      term *= u2;
    }
    return sum;
  }
  return u - std::atan(u);
}

double psi_prime(double u) { return u * u / (1.0 + u * u); }

HebCertificate make_heb_certificate(double B, double r, double rho) {
  if (!(B > 0.0) || !(r >= 2.0) || !(rho > 0.0)) throw InvalidArgument("HebCertificate: need B > 0, r >= 2, rho > 0");
  return {B, r, rho};
}

Objective::Objective(Kind kind, double smoothness) : kind_(std::move(kind)), smoothness_(smoothness) {
  std::visit(Overloaded{
                 [&](const Quadratic& q) { dim_ = q.c.size(); },
                 [&](const Linear& l) { dim_ = l.c.size(); },
                 [&](const DistancePower& d) { dim_ = d.center.size(); },
                 [&](const StadiumPsi&) { dim_ = 2; },
             },
             kind_);
  if (!(smoothness_ > 0.0) || !std::isfinite(smoothness_))
    throw InvalidArgument("objective: smoothness constant must be positive");
}

Objective Objective::quadratic(Matrix Q, Vector c, std::optional<double> smoothness) {
  if (Q.rows() != Q.cols() || Q.rows() != c.size() || c.size() < 1)
    throw InvalidArgument("quadratic: Q must be square and match c");
  if (!Q.allFinite() || !c.allFinite()) throw InvalidArgument("quadratic: non-finite data");
  if (!Q.isApprox(Q.transpose(), 1e-12) && !(Q - Q.transpose()).isZero(1e-14))
    throw InvalidArgument("quadratic: Q must be symmetric");
  Matrix sym = 0.5 * (Q + Q.transpose());
  const Vector eig = Eigen::SelfAdjointEigenSolver<Matrix>(sym, Eigen::EigenvaluesOnly).eigenvalues();
  if (eig.minCoeff() < -1e-12 * std::max(1.0, eig.cwiseAbs().maxCoeff()))
    throw InvalidArgument("quadratic: Q must be positive semidefinite");
  const double L = smoothness.value_or(eig.maxCoeff());
  return Objective(Quadratic{std::move(sym), std::move(c)}, L);
}

Objective Objective::linear(Vector c, double smoothness) {
  if (c.size() < 1 || !c.allFinite()) throw InvalidArgument("linear: need finite nonempty c");
  return Objective(Linear{std::move(c)}, smoothness);
}

Objective Objective::distance_power(Vector center, double r, const FeasibleSet& set) {
  if (!(r >= 2.0) || !std::isfinite(r)) throw InvalidArgument("distance_power: need r >= 2");
  require_dim(center, set.dim(), "distance_power center");
  require_finite(center, "distance_power center");
  const double reach = (center - set.interior_point()).norm() + set.diameter();
  const double L = r == 2.0 ? 2.0 : r * (r - 1.0) * std::pow(reach, r - 2.0);
  return Objective(DistancePower{std::move(center), r}, L);
}

Objective Objective::stadium_psi(double c) {
  if (!(c >= 2.0) || !std::isfinite(c)) throw InvalidArgument("stadium_psi: need c >= 2");
  return Objective(StadiumPsi{c}, 1.0);
}

Objective Objective::with_ground_truth(GroundTruth truth) const {
  if (truth.minimizer) require_dim(*truth.minimizer, dim_, "ground truth minimizer");
  Objective copy = *this;
  copy.truth_ = std::move(truth);
  return copy;
}

Objective Objective::with_smoothness(double smoothness) const {
  if (!(smoothness > 0.0)) throw InvalidArgument("objective: smoothness constant must be positive");
  Objective copy = *this;
  copy.smoothness_ = smoothness;
  return copy;
}

double Objective::value(const VectorRef& x) const {
  require_dim(x, dim_, "objective value");
  return std::visit(Overloaded{
                        [&](const Quadratic& q) { return 0.5 * x.dot(q.Q * x) + q.c.dot(x); },
                        [&](const Linear& l) { return l.c.dot(x); },
                        [&](const DistancePower& d) {
                          const double n = (x - d.center).norm();
                          return d.r == 2.0 ? n * n : std::pow(n, d.r);
                        },
                        [&](const StadiumPsi& s) { return 0.5 * x[1] * x[1] + psi(s.c - x[0]); },
                    },
                    kind_);
}

void Objective::gradient(const VectorRef& x, Vector& out) const {
  require_dim(x, dim_, "objective gradient");
  std::visit(Overloaded{
                 [&](const Quadratic& q) { out.noalias() = q.Q * x + q.c; },
                 [&](const Linear& l) { out = l.c; },
                 [&](const DistancePower& d) {
                   out = x - d.center;
                   if (d.r == 2.0) {
                     out *= 2.0;
                   } else {
                     const double n = out.norm();
                     out *= n > 0.0 ? d.r * std::pow(n, d.r - 2.0) : 0.0;
                   }
                 },
                 [&](const StadiumPsi& s) {
                   out.resize(2);
                   out << -psi_prime(s.c - x[0]), x[1];
                 },
             },
             kind_);
}

Vector Objective::gradient(const VectorRef& x) const {
  Vector out(x.size());
  gradient(x, out);
  return out;
}

double Objective::primal_gap(const VectorRef& x) const {
  if (!truth_) throw InvalidArgument("primal_gap: no known optimal value; use dual-gap-only mode");
  const double gap = value(x) - truth_->f_star;
  if (gap >= 0.0) return gap;
  if (gap >= -1e-12) return 0.0;
  throw NumericError("primal_gap: f(x) is below the recorded optimum by " + std::to_string(-gap));
}

double Objective::dist_to_minimizers(const VectorRef& x) const {
  if (!truth_ || !truth_->minimizer) throw InvalidArgument("dist_to_minimizers: no minimizer witness recorded");
  return (x - *truth_->minimizer).norm();
}

std::string Objective::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const Quadratic&) { os << "quadratic"; },
                 [&](const Linear& l) { os << "linear(|c|=" << l.c.norm() << ")"; },
                 [&](const DistancePower& d) { os << "distance_power(r=" << d.r << ")"; },
                 [&](const StadiumPsi& s) { os << "stadium_psi(c=" << s.c << ")"; },
             },
             kind_);
  os << "[L=" << smoothness_ << "]";
  return os.str();
}

std::optional<GroundTruth> known_ground_truth(const FeasibleSet& set, const Objective& f) {
  if (f.dim() != set.dim()) throw InvalidArgument("known_ground_truth: objective and set dimensions differ");
  return std::visit(
      Overloaded{
          [&](const DistancePower& d) -> std::optional<GroundTruth> {
            if (set.contains(d.center, 0.0)) {
              return GroundTruth{0.0, d.center, HebCertificate{1.0, d.r, std::max(1.0, set.diameter())}, "closed-form"};
            }
            if (!has_exact_nearest(set)) return std::nullopt;
            const Vector p = detail::nearest_point(set, d.center);
            GroundTruth truth{f.value(p), p, std::nullopt, "closed-form"};
            if (d.r == 2.0) truth.heb = HebCertificate{1.0, 2.0, std::max(1.0, set.diameter())};
            return truth;
          },
          [&](const StadiumPsi& s) -> std::optional<GroundTruth> {
            const auto* stadium = std::get_if<Stadium>(&set.kind());
            if (stadium == nullptr || s.c < stadium->half_length + 1.0) return std::nullopt;
            Vector p(2);
            p << stadium->half_length + 1.0, 0.0;
            return GroundTruth{psi(s.c - p[0]), p, std::nullopt, "closed-form"};
          },
          [&](const Linear& l) -> std::optional<GroundTruth> {
            const Vector s = set.lmo(l.c);
            GroundTruth truth{l.c.dot(s), std::nullopt, std::nullopt, "closed-form"};
            if (!l.c.isZero(0.0) && strictly_convex(set)) truth.minimizer = s;
            return truth;
          },
          [&](const Quadratic& q) -> std::optional<GroundTruth> {
            const double mu = q.Q(0, 0);
            const Eigen::Index n = q.Q.rows();
            if (!(mu > 0.0) || !(q.Q - mu * Matrix::Identity(n, n)).isZero(0.0)) return std::nullopt;
            if (!has_exact_nearest(set)) return std::nullopt;
            const Vector p = detail::nearest_point(set, -q.c / mu);
            return GroundTruth{f.value(p), p, HebCertificate{2.0 / mu, 2.0, std::max(1.0, set.diameter())},
                               "closed-form"};
          },
      },
      f.kind());
}

}  // namespace sharpfw
