#include <doctest.h>

#include "oracles.hpp"
#include "sharpfw/analysis.hpp"

#include <cmath>

using namespace sharpfw;

namespace {

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

GapSeries dense(long T, const std::function<double(double)>& F) {
  std::vector<double> values;
  for (long t = 0; t <= T; ++t) values.push_back(F(double(t)));
  return subsample(values);
}

ReferenceSet point(const Vector& p) { return ReferenceSet{{p}}; }

}  // namespace

TEST_CASE("slope of a synthetic power law") {
  const GapSeries s = dense(100000, [](double t) { return t == 0 ? 1.0 : 1.0 / (t * t); });
  const ExponentFit fit = fit_exponent(s);
  CHECK(std::abs(fit.slope + 2.0) <= 1e-6);
  CHECK(fit.window.lo == doctest::Approx(10000));
  CHECK(fit.window.hi == doctest::Approx(100000));
  CHECK(fit.residual <= 1e-9);
  CHECK(fit.points >= 50);

  const ExponentFit custom = fit_exponent(s, FitWindow{100, 1000}, 50);
  CHECK(std::abs(custom.slope + 2.0) <= 1e-6);
}

TEST_CASE("slope fit errors") {
  const GapSeries s = dense(100000, [](double t) { return t < 50000 ? 1.0 / (t + 1) : 0.0; });
  CHECK_THROWS_AS(fit_exponent(s), ExactConvergence);
  try {
    fit_exponent(s);
  } catch (const ExactConvergence& e) {
    CHECK(e.t() == doctest::Approx(50000).epsilon(0.02));
  }
  const GapSeries short_series = dense(30, [](double t) { return 1.0 / (t + 1); });
  CHECK_THROWS_AS(fit_exponent(short_series), InvalidArgument);
  const GapSeries nan_series = dense(100000, [](double) { return NAN; });
  CHECK_THROWS_AS(fit_exponent(nan_series), InvalidArgument);
}

TEST_CASE("power-descent recursion") {
  for (double r : {1.0, 0.5, 0.25}) {
    const auto a = power_descent_oracle(1.0, 0.5, r, 1'000'000);
    REQUIRE(a.size() == 1'000'001);
    for (std::size_t i = 1; i < a.size(); ++i) REQUIRE(a[i] <= a[i - 1]);
    const ExponentFit fit = fit_exponent(subsample(a));
    CAPTURE(r);
    CHECK(std::abs(fit.slope + 1.0 / r) <= 0.05);
  }
  const auto zeros = power_descent_oracle(0.0, 0.5, 0.5, 1000);
  CHECK(zeros.size() == 1001);
  for (double v : zeros) CHECK(v == 0.0);
  CHECK_THROWS_AS(power_descent_oracle(1.5, 0.5, 0.5, 10), InvalidArgument);
  CHECK_THROWS_AS(power_descent_oracle(1.0, 0.0, 0.5, 10), InvalidArgument);
  CHECK_THROWS_AS(power_descent_oracle(1.0, 0.5, 0.0, 10), InvalidArgument);
  CHECK_THROWS_AS(power_descent_oracle(1.0, 0.5, 1.5, 10), InvalidArgument);
}

TEST_CASE("h decay verdicts") {
  const GapSeries fast = dense(100000, [](double t) { return 1.0 / ((t + 1) * (t + 1)); });
  const HDecay a = check_h_decay(fast, 2);
  CHECK(a.consistent);
  CHECK(a.t_to == 100000);
  CHECK(a.t_from == doctest::Approx(1000).epsilon(0.02));
  CHECK(a.ratio < 0.02);

  const GapSeries classic = dense(100000, [](double t) { return 1.0 / (t + 2); });
  const HDecay b = check_h_decay(classic, 2);
  CHECK_FALSE(b.consistent);
  CHECK(b.ratio == doctest::Approx(1.0));

  // Oscillation is judged by its envelope.
  const GapSeries wobble =
      dense(100000, [](double t) { return (long(t) % 2 == 0 ? 1.0 : 1e-6) / (t + 2); });
  CHECK_FALSE(check_h_decay(wobble, 2).consistent);

  const GapSeries tiny = dense(10, [](double t) { return 1.0 / (t + 1); });
  CHECK_THROWS_AS(check_h_decay(tiny, 2), InvalidArgument);
}

TEST_CASE("certificates from uniform convexity and patches") {
  const LdsCertificate a = lds_from_uc(make_uc_params(1.0, 2.0));
  CHECK(a.A == 0.5);
  CHECK(a.q == 2.0);
  CHECK(a.provenance == LdsProvenance::AnalyticFromUc);
  const LdsCertificate b = lds_from_uc(make_uc_params(0.5, 4.0));
  CHECK(b.A == 0.25);
  CHECK(b.q == 4.0);

  CHECK(lds_from_patch(make_uc_params(1.0, 2.0), 0.1, 4.0, 2.0).A == doctest::Approx(0.00625));
  CHECK(lds_from_patch(make_uc_params(1.0, 2.0), 10.0, 0.5, 2.0).A == 0.5);
  CHECK(lds_from_patch(make_uc_params(1.0, 2.0), 0.1, 4.0, 2.0).provenance == LdsProvenance::AnalyticFromPatch);
  CHECK_THROWS_AS(lds_from_patch(make_uc_params(1.0, 2.0), 0.0, 4.0, 2.0), InvalidArgument);
  CHECK(to_string(LdsProvenance::Sampled) == "sampled");
  CHECK(to_string(LdsProvenance::AnalyticFromUc) == "analytic-from-UC");
  CHECK(to_string(LdsProvenance::AnalyticFromPatch) == "analytic-from-patch");

  CHECK(lbg_contraction(0.5, 1.0, 1.0) == 0.25);
  CHECK(lbg_contraction(4.0, 1.0, 1.0) == 0.5);
}

TEST_CASE("sampled sharpness of the unit ball") {
  // On the unit ball <g, x - s> = ||g|| ||x - s||^2 / 2 exactly when x is
  // on the sphere, so the infimum of the ratio is 1/2.
  const auto ball = FeasibleSet::l2_ball(v2(0, 0), 1.0);
  LdsSampler sampler;
  sampler.n_x = 300;
  sampler.n_g = 300;
  sampler.seed = 1;
  const LdsEstimate est = estimate_lds(ball, point(v2(0, -1)), 2.0, 0.5, sampler);
  CHECK(est.A_hat == doctest::Approx(0.5).epsilon(0.02));
  CHECK(est.A_hat >= 0.5 - 1e-9);
  CHECK(est.pairs > 0);
  CHECK(est.worst.x.size() == 2);
  const Vector s = ball.lmo(est.worst.g);
  CHECK((s - est.worst.s).norm() == 0.0);
  CHECK(est.worst.ratio ==
        doctest::Approx(est.worst.g.dot(est.worst.x - s) / (est.worst.g.norm() * (est.worst.x - s).squaredNorm())));
}

TEST_CASE("sampled sharpness is monotone under nested sampling") {
  const auto stadium = FeasibleSet::stadium(1.0);
  double previous = INFINITY;
  for (long n : {50L, 100L, 200L, 400L}) {
    LdsSampler sampler;
    sampler.n_x = n;
    sampler.n_g = n;
    sampler.seed = 3;
    const double a = estimate_lds(stadium, point(v2(2, 0)), 2.0, 0.3, sampler).A_hat;
    CHECK(a <= previous);
    CHECK(a > 0.0);
    previous = a;
  }
}

TEST_CASE("analytic certificates pass sampled validation") {
  // Ball of radius R is (1/(2R), 2)-uniformly convex.
  for (double R : {0.5, 1.0, 3.0}) {
    const auto ball = FeasibleSet::l2_ball(v2(1, -1), R);
    const LdsCertificate cert = lds_from_uc(make_uc_params(0.5 / R, 2.0));
    LdsSampler sampler;
    sampler.n_x = 400;
    sampler.n_g = 250;
    for (const Vector& m : {Vector(v2(1, -1 - R)), Vector(v2(1, -1)), Vector(v2(1 + R * 0.6, -1 + R * 0.8))}) {
      const LdsEstimate est = estimate_lds(ball, point(m), 2.0, R, sampler);
      CHECK(est.pairs >= 90'000);
      CHECK(est.A_hat >= cert.A - 1e-6);
    }
  }

  // Stadium: residual gap of the right cap gives a patch certificate.
  const auto stadium = FeasibleSet::stadium(1.0);
  const ReferenceSet M = point(v2(2, 0));
  const double beta = stadium_residual_gap(1.0, M, 0.3, 200);
  CHECK(beta > 0.0);
  const LdsCertificate patch = lds_from_patch(make_uc_params(0.5, 2.0), beta, stadium.diameter(), 2.0, 0.3);
  LdsSampler sampler;
  sampler.n_x = 400;
  sampler.n_g = 250;
  CHECK(estimate_lds(stadium, M, 2.0, 0.3, sampler).A_hat >= patch.A - 1e-6);
}

TEST_CASE("stadium residual gap needs the neighbourhood inside the cap") {
  CHECK_THROWS_AS(stadium_residual_gap(1.0, point(v2(2, 0)), 3.0, 50), InvalidArgument);
}

TEST_CASE("uniform convexity checks") {
  UcSampler sampler;
  sampler.seed = 2;
  const UcCheck stadium = check_uc(FeasibleSet::stadium(1.0), 1e-3, 2.0, sampler);
  CHECK_FALSE(stadium.ok);
  REQUIRE(stadium.worst);
  // The witness chord hugs a flat side.
  for (const Vector& end : {stadium.worst->x, stadium.worst->y}) {
    CHECK(std::abs(std::abs(end[1]) - 1.0) <= 1e-4);
    CHECK(std::abs(end[0]) <= 1.0 + 1e-2);
  }

  CHECK(check_uc(FeasibleSet::l2_ball(v2(0, 0), 1.0), 1e-6, 2.0, sampler).ok);
  CHECK(check_uc(FeasibleSet::l2_ball(v2(0, 0), 1.0), 0.5, 2.0, sampler).ok);
  CHECK_FALSE(check_uc(FeasibleSet::l2_ball(v2(0, 0), 1.0), 0.6, 2.0, sampler).ok);
  for (double alpha : {1e-6, 1e-3, 1.0}) {
    CHECK_FALSE(check_uc(FeasibleSet::box(v2(0, 0), v2(1, 1)), alpha, 2.0, sampler).ok);
  }
  CHECK_FALSE(check_uc(FeasibleSet::truncated_disk(0.5), 1e-3, 2.0, sampler).ok);
}

TEST_CASE("uniform convexity implies sampled sharpness") {
  const auto ball = FeasibleSet::l2_ball(v2(0, 0), 1.0);
  UcSampler uc;
  uc.seed = 4;
  const double alpha = estimate_uc_alpha(ball, 2.0, uc);
  CHECK(alpha == doctest::Approx(0.5).epsilon(0.01));
  const double safe = 0.99 * alpha;
  REQUIRE(check_uc(ball, safe, 2.0, uc).ok);
  LdsSampler sampler;
  sampler.n_x = 300;
  sampler.n_g = 300;
  for (const Vector& m : {Vector(v2(0, -1)), Vector(v2(0.3, 0.2)), Vector(v2(-0.6, 0.8))}) {
    CHECK(estimate_lds(ball, point(m), 2.0, 2.0, sampler).A_hat >= safe / 2 - 1e-6);
  }
}

TEST_CASE("superflat sharpness vanishes on shrinking shells") {
  const auto body = FeasibleSet::superflat_body(1.0);
  const ReferenceSet M = point(v2(0, 0));
  LdsSampler sampler;
  sampler.n_x = 300;
  sampler.n_g = 300;
  sampler.shell = 0.5;
  std::vector<double> a;
  for (double rho : {0.3, 0.1, 0.03}) a.push_back(estimate_lds(body, M, 6.0, rho, sampler).A_hat);
  CHECK(a[0] > 0.0);
  CHECK(a[1] <= a[0] / 10);
  CHECK(a[2] <= a[1] / 10);
}

TEST_CASE("sampling errors") {
  const auto ball = FeasibleSet::l2_ball(v2(0, 0), 1.0);
  LdsSampler sampler;
  sampler.n_x = 10;
  sampler.n_g = 10;
  CHECK_THROWS_AS(estimate_lds(ball, point(v2(5, 0)), 2.0, 0.5, sampler), InvalidArgument);
  CHECK_THROWS_AS(estimate_lds(ball, point(v2(0, -1)), 2.0, 0.0, sampler), InvalidArgument);
  sampler.n_x = 0;
  CHECK_THROWS_AS(estimate_lds(ball, point(v2(0, -1)), 2.0, 0.5, sampler), InvalidArgument);
  CHECK_THROWS_AS(estimate_lds(ball, ReferenceSet{}, 2.0, 0.5, LdsSampler{}), InvalidArgument);
}

TEST_CASE("estimators are deterministic given a seed") {
  const auto stadium = FeasibleSet::stadium(1.0);
  LdsSampler sampler;
  sampler.n_x = 100;
  sampler.n_g = 100;
  sampler.seed = 9;
  const LdsEstimate a = estimate_lds(stadium, point(v2(2, 0)), 2.0, 0.3, sampler);
  const LdsEstimate b = estimate_lds(stadium, point(v2(2, 0)), 2.0, 0.3, sampler);
  CHECK(a.A_hat == b.A_hat);
  CHECK(a.worst.x == b.worst.x);
  sampler.seed = 10;
  CHECK(estimate_lds(stadium, point(v2(2, 0)), 2.0, 0.3, sampler).A_hat != a.A_hat);
}

TEST_CASE("reference set distance") {
  const ReferenceSet M{{v2(0, 0), v2(3, 4)}};
  CHECK(M.distance(v2(3, 0)) == doctest::Approx(3.0));
  CHECK(M.distance(v2(3, 3)) == doctest::Approx(1.0));
}
