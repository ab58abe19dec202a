#include <doctest.h>

#include "oracles.hpp"
#include "sharpfw/analysis.hpp"
#include "sharpfw/objectives.hpp"

#include <cmath>
#include <random>

using namespace sharpfw;

namespace {

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

struct Instance {
  FeasibleSet set;
  Objective f;
};

std::vector<Instance> instances() {
  Matrix Q(3, 3);
  Q << 2, 1, 0, 1, 2, 0.5, 0, 0.5, 1;
  Vector c3(3);
  c3 << 0.3, -1, 0.2;
  const auto ball3 = FeasibleSet::l2_ball(Vector::Zero(3), 1.0);
  const auto stadium = FeasibleSet::stadium(1.0);
  const auto lp = FeasibleSet::lp_ball(v2(1, 0), 1.0, 4.0);
  const auto disk = FeasibleSet::l2_ball(v2(0, 1), 1.0);
  return {
      {stadium, Objective::stadium_psi(2.0)},
      {stadium, Objective::stadium_psi(3.5)},
      {ball3, Objective::quadratic(Q, c3)},
      {FeasibleSet::simplex(3), Objective::quadratic(Matrix::Identity(3, 3), Vector::Zero(3))},
      {disk, Objective::linear(v2(0.6, 0.8))},
      {disk, Objective::distance_power(v2(0, 0), 2.0, disk)},
      {lp, Objective::distance_power(v2(-2, 0), 2.0, lp)},
      {disk, Objective::distance_power(v2(0.5, 0.5), 3.0, disk)},
      {disk, Objective::distance_power(v2(0, -1), 4.0, disk)},
  };
}

}  // namespace

TEST_CASE("value and gradient examples") {
  const auto f = Objective::stadium_psi(2.0);
  CHECK(f.value(v2(2, 0)) == 0.0);
  CHECK(f.gradient(v2(2, 0)).norm() == 0.0);

  const auto disk = FeasibleSet::l2_ball(v2(0, 0), 1.0);
  const auto dp = Objective::distance_power(v2(0.3, 0.4), 2.0, disk);
  CHECK(dp.value(v2(0.3, 0.4)) == 0.0);
  CHECK(dp.gradient(v2(0.3, 0.4)).norm() == 0.0);

  const auto q = Objective::quadratic(Matrix::Identity(2, 2), Vector::Zero(2));
  CHECK(q.value(v2(1, 1)) == doctest::Approx(1.0));
  CHECK((q.gradient(v2(1, 1)) - v2(1, 1)).norm() == 0.0);

  CHECK_THROWS_AS(q.value(Vector::Zero(3)), InvalidArgument);
  CHECK_THROWS_AS(q.gradient(Vector::Zero(3)), InvalidArgument);
}

TEST_CASE("primal gap examples") {
  const auto stadium = FeasibleSet::stadium(1.0);
  const auto f = Objective::stadium_psi(2.0);
  const auto truth = known_ground_truth(stadium, f);
  REQUIRE(truth);
  const auto fs = f.with_ground_truth(*truth);
  CHECK(fs.primal_gap(v2(2, 0)) == 0.0);
  CHECK(fs.dist_to_minimizers(v2(2, 0)) == 0.0);
  CHECK(fs.primal_gap(v2(0, 1)) > 0.0);

  const auto disk = FeasibleSet::l2_ball(v2(0, 0), 2.0);
  const Vector star = v2(0.5, -0.5);
  const auto dp = Objective::distance_power(star, 2.0, disk);
  const auto dps = dp.with_ground_truth(*known_ground_truth(disk, dp));
  CHECK(dps.primal_gap(star + v2(0.6, 0.8)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(dps.dist_to_minimizers(v2(-1, 1)) == doctest::Approx((v2(-1, 1) - star).norm()));
}

TEST_CASE("isotropic quadratic over the simplex") {
  // Minimum of 1/2 ||x||^2 on the simplex sits at the barycenter: 1/(2d).
  CHECK(oracle::simplex_grid_min_half_norm(300) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  for (int d : {2, 3, 10, 50}) {
    const auto simplex = FeasibleSet::simplex(d);
    const auto half = Objective::quadratic(Matrix::Identity(d, d), Vector::Zero(d));
    const auto truth = known_ground_truth(simplex, half);
    REQUIRE(truth);
    CHECK(truth->f_star == doctest::Approx(0.5 / d).epsilon(1e-14));
    const auto f = half.with_ground_truth(*truth);
    CHECK(f.primal_gap(Vector::Unit(d, 0)) == doctest::Approx(0.5 * (1.0 - 1.0 / d)).epsilon(1e-14));

    // ||x||^2 has gap exactly 1 - 1/d at a vertex.
    const auto full = Objective::quadratic(2.0 * Matrix::Identity(d, d), Vector::Zero(d));
    const auto g = full.with_ground_truth(*known_ground_truth(simplex, full));
    CHECK(g.primal_gap(Vector::Unit(d, 0)) == doctest::Approx(1.0 - 1.0 / d).epsilon(1e-14));
  }
}

TEST_CASE("linear objective over a ball: closed-form minimizer") {
  const Vector center = v2(1, -2);
  const auto ball = FeasibleSet::l2_ball(center, 3.0);
  const Vector c = v2(3, 4);
  const auto f = Objective::linear(c);
  const auto truth = known_ground_truth(ball, f);
  REQUIRE(truth);
  REQUIRE(truth->minimizer);
  const Vector star = center - 3.0 * c / c.norm();
  CHECK((*truth->minimizer - star).norm() < 1e-14);
  CHECK(truth->f_star == doctest::Approx(c.dot(center) - 3.0 * c.norm()));
  const auto fs = f.with_ground_truth(*truth);
  CHECK(fs.dist_to_minimizers(center) == doctest::Approx(3.0));
}

TEST_CASE("missing ground truth is an error") {
  const auto f = Objective::linear(v2(1, 0));
  CHECK_THROWS_AS(f.primal_gap(v2(0, 0)), InvalidArgument);
  CHECK_THROWS_AS(f.dist_to_minimizers(v2(0, 0)), InvalidArgument);
  GroundTruth truth;
  truth.f_star = 0.0;
  const auto g = f.with_ground_truth(truth);
  CHECK(g.primal_gap(v2(-1e-13, 0)) == 0.0);
  CHECK_THROWS_AS(g.primal_gap(v2(-1e-6, 0)), NumericError);
  CHECK_THROWS_AS(g.dist_to_minimizers(v2(0, 0)), InvalidArgument);
}

TEST_CASE("invalid objectives are rejected") {
  Matrix indefinite(2, 2);
  indefinite << 1, 0, 0, -1;
  CHECK_THROWS_AS(Objective::quadratic(indefinite, Vector::Zero(2)), InvalidArgument);
  Matrix skew(2, 2);
  skew << 1, 1, 0, 1;
  CHECK_THROWS_AS(Objective::quadratic(skew, Vector::Zero(2)), InvalidArgument);
  CHECK_THROWS_AS(Objective::quadratic(Matrix::Identity(2, 2), Vector::Zero(3)), InvalidArgument);
  CHECK_THROWS_AS(Objective::distance_power(v2(0, 0), 1.5, FeasibleSet::stadium(1.0)), InvalidArgument);
  CHECK_THROWS_AS(Objective::stadium_psi(1.5), InvalidArgument);
  CHECK_THROWS_AS(Objective::linear(v2(1, 0), 0.0), InvalidArgument);
  CHECK_THROWS_AS(make_heb_certificate(0.0, 2.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_heb_certificate(1.0, 1.0, 1.0), InvalidArgument);
}

TEST_CASE("convexity and smoothness on sampled pairs") {
  for (const auto& inst : instances()) {
    CAPTURE(inst.f.describe());
    CAPTURE(inst.set.describe());
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unif;
    const double L = inst.f.smoothness();
    for (int i = 0; i < 1000; ++i) {
      const Vector x = sample_in_set(inst.set, rng);
      const Vector y = sample_in_set(inst.set, rng);
      const double lam = unif(rng);
      const double fx = inst.f.value(x), fy = inst.f.value(y);
      REQUIRE(inst.f.value(lam * x + (1 - lam) * y) <= lam * fx + (1 - lam) * fy + 1e-9);
      const Vector gx = inst.f.gradient(x);
      REQUIRE(fy <= fx + gx.dot(y - x) + 0.5 * L * (y - x).squaredNorm() + 1e-9);
      // Convexity also gives the first-order lower model.
      REQUIRE(fy >= fx + gx.dot(y - x) - 1e-9);
    }
  }
}

TEST_CASE("gradients match central differences") {
  for (const auto& inst : instances()) {
    CAPTURE(inst.f.describe());
    std::mt19937_64 rng(8);
    const auto value = [&](const Vector& x) { return inst.f.value(x); };
    for (int i = 0; i < 100; ++i) {
      const Vector x = sample_in_set(inst.set, rng);
      const Vector g = inst.f.gradient(x);
      const Vector fd = oracle::fd_gradient(value, x);
      const double scale = std::max(1.0, g.norm());
      REQUIRE((g - fd).norm() <= 1e-6 * scale);
      Vector out;
      inst.f.gradient(x, out);
      REQUIRE(out == g);
    }
  }
}

TEST_CASE("distance powers satisfy the error bound with B = 1") {
  const auto disk = FeasibleSet::l2_ball(v2(0, 1), 1.0);
  for (double r : {2.0, 3.0, 4.0}) {
    const auto f = Objective::distance_power(v2(0, 0), r, disk);
    const auto fs = f.with_ground_truth(*known_ground_truth(disk, f));
    const HebCheck check = check_heb(disk, fs, make_heb_certificate(1.0, r, 2.0), 5000, 4);
    CHECK(check.ok);
    CHECK(check.samples > 0);
    CHECK(check.worst_slack <= 1e-9);
  }
  // An exterior center: the minimizer is the nearest point; r = 2 still
  // satisfies the bound with B = 1 (strong convexity on a convex set).
  const auto f = Objective::distance_power(v2(0, -1), 2.0, disk);
  const auto truth = known_ground_truth(disk, f);
  REQUIRE(truth);
  REQUIRE(truth->heb);
  CHECK(check_heb(disk, f.with_ground_truth(*truth), *truth->heb, 5000, 4).ok);
}

TEST_CASE("a too-optimistic error bound is caught") {
  const auto disk = FeasibleSet::l2_ball(v2(0, 1), 1.0);
  const auto f = Objective::distance_power(v2(0, 0), 4.0, disk);
  const auto fs = f.with_ground_truth(*known_ground_truth(disk, f));
  // dist^2 <= B dist^4 fails near the minimizer for any fixed B.
  const HebCheck check = check_heb(disk, fs, make_heb_certificate(1.0, 2.0, 1.0), 5000, 4);
  CHECK_FALSE(check.ok);
  CHECK(check.worst_slack > 0.0);
}

TEST_CASE("psi is monotone with curvature at most one") {
  for (int i = -4000; i <= 4000; ++i) {
    const double u = i * 1e-3;
    REQUIRE(psi_prime(u) >= 0.0);
    REQUIRE(psi_prime(u) == doctest::Approx(u * u / (1 + u * u)).epsilon(1e-14));
    const double h = 1e-5;
    const double second = (psi_prime(u + h) - psi_prime(u - h)) / (2 * h);
    REQUIRE(second <= 1.0 + 1e-8);
    REQUIRE((psi(u + h) - psi(u - h)) / (2 * h) == doctest::Approx(psi_prime(u)).epsilon(1e-8));
  }
  CHECK(psi(0.0) == 0.0);
}

TEST_CASE("stadium objective is 1-smooth on the stadium") {
  const auto stadium = FeasibleSet::stadium(1.0);
  const auto f = Objective::stadium_psi(2.0);
  CHECK(f.smoothness() == 1.0);
  std::mt19937_64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    const Vector x = sample_in_set(stadium, rng);
    const Vector y = sample_in_set(stadium, rng);
    REQUIRE(f.value(y) <= f.value(x) + f.gradient(x).dot(y - x) + 0.5 * (y - x).squaredNorm() + 1e-9);
  }
}
