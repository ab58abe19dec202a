#include "sharpfw/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace sharpfw {
namespace {

constexpr double kTiny = 1e-12;
constexpr double kUcTol = 1e-9;

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t lane) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(lane)};
  return std::mt19937_64(seq);
}

// Last point of the ray anchor -> through that stays in the set.
Vector ray_exit(const FeasibleSet& set, const Vector& anchor, const Vector& through) {
  const Vector dir = through - anchor;
  if (dir.norm() < kTiny) return through;
  double lo = 1.0;
  double hi = 2.0;
  for (int k = 0; k < 64 && set.contains(anchor + hi * dir); ++k) {
    lo = hi;
    hi *= 2.0;
  }
  for (int k = 0; k < 80 && hi - lo > 1e-15 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (set.contains(anchor + mid * dir))
      lo = mid;
    else
      hi = mid;
  }
  return anchor + lo * dir;
}

// Distance from m to the boundary, bounded above by a minimum over the given
// outward directions of h(u) - <u, m>.
double boundary_gap(const FeasibleSet& set, const Vector& m, const std::vector<Vector>& dirs) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vector& u : dirs) {
    const Vector far = set.lmo(-u);
    best = std::min(best, u.dot(far - m));
  }
  return std::max(best, 0.0);
}

Vector normalized(const Vector& v) {
  const double n = v.norm();
  return n > 0.0 ? Vector(v / n) : v;
}

// Pair of LMO atoms for two nearby directions; lands on a common face when
// the base direction exposes one.
struct Chord {
  Vector x;
  Vector y;
  Vector g1;
  Vector g2;
};

// Directions are perturbed by 10^k with k uniform in [min_log10, 0].
Chord sample_chord(const FeasibleSet& set, const std::vector<Vector>& normals, double min_log10,
                   std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Eigen::Index d = set.dim();
  Chord c;
  const double pick = unif(rng);
  if (pick < 0.2) {
    // interior chord
    c.x = sample_in_set(set, rng);
    c.y = sample_in_set(set, rng);
    c.g1 = sample_sphere(d, rng);
    c.g2 = c.g1;
    return c;
  }
  if (!normals.empty() && pick < 0.5) {
    c.g1 = normals[std::uniform_int_distribution<std::size_t>(0, normals.size() - 1)(rng)];
  } else {
    c.g1 = sample_sphere(d, rng);
  }
  const double eps = std::pow(10.0, min_log10 * (1.0 - unif(rng)));
  c.g2 = normalized(c.g1 + eps * sample_sphere(d, rng));
  if (unif(rng) < 0.5) {
    // rotate the other way as well, so flat faces give both endpoints
    c.g1 = normalized(c.g1 - eps * sample_sphere(d, rng));
  }
  c.x = set.lmo(c.g1);
  c.y = set.lmo(c.g2);
  return c;
}

}  // namespace

double ReferenceSet::distance(const VectorRef& x) const {
  if (points.empty()) throw InvalidArgument("reference set: no points");
  double best = std::numeric_limits<double>::infinity();
  for (const Vector& p : points) best = std::min(best, (x - p).norm());
  return best;
}

std::string to_string(LdsProvenance p) {
  switch (p) {
    case LdsProvenance::AnalyticFromUc:
      return "analytic-from-UC";
    case LdsProvenance::AnalyticFromPatch:
      return "analytic-from-patch";
    case LdsProvenance::Sampled:
      return "sampled";
  }
  return "unknown";
}

Vector sample_sphere(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  do {
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = normal(rng);
  } while (v.norm() < 1e-300);
  return v / v.norm();
}

Vector sample_ball(const VectorRef& center, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Vector dir = sample_sphere(center.size(), rng);
  const double r = radius * std::pow(unif(rng), 1.0 / static_cast<double>(center.size()));
  return center + r * dir;
}

Vector sample_in_set(const FeasibleSet& set, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  constexpr int kAtoms = 3;
  Vector out = Vector::Zero(set.dim());
  double total = 0.0;
  for (int k = 0; k < kAtoms; ++k) {
    const double w = -std::log(1.0 - unif(rng));  // flat Dirichlet weights
    out += w * set.lmo(sample_sphere(set.dim(), rng));
    total += w;
  }
  out /= total;
  // pull slightly towards the anchor so samples also cover the interior
  const double pull = unif(rng);
  return pull * out + (1.0 - pull) * set.interior_point();
}

LdsEstimate estimate_lds(const FeasibleSet& set, const ReferenceSet& M, double q, double rho,
                         const LdsSampler& sampler) {
  if (M.points.empty()) throw InvalidArgument("estimate_lds: empty reference set");
  for (const Vector& m : M.points) {
    require_dim(m, set.dim(), "estimate_lds: reference point");
    if (!set.contains(m, 1e-9)) throw InvalidArgument("estimate_lds: reference point outside the set");
  }
  if (!(q >= 2.0)) throw InvalidArgument("estimate_lds: q must be at least 2");
  if (!(rho > 0.0)) throw InvalidArgument("estimate_lds: rho must be positive");
  if (sampler.n_x < 1 || sampler.n_g < 0) throw InvalidArgument("estimate_lds: sample counts");
  if (!(sampler.shell >= 0.0 && sampler.shell < 1.0)) throw InvalidArgument("estimate_lds: shell must lie in [0, 1)");

  auto rng_x = stream(sampler.seed, 1);
  auto rng_g = stream(sampler.seed, 2);
  std::uniform_int_distribution<std::size_t> pick(0, M.points.size() - 1);
  const Vector anchor = set.interior_point();

  std::vector<Vector> xs;
  auto keep = [&](const Vector& x) {
    const double dist = M.distance(x);
    if (dist < rho && dist >= sampler.shell * rho) xs.push_back(x);
  };
  for (long i = 0; i < sampler.n_x; ++i) {
    const Vector& m = M.points[pick(rng_x)];
    const Vector y = sample_ball(m, rho, rng_x);
    const Vector x = detail::nearest_point(set, y);
    keep(x);
    if ((x - y).norm() == 0.0) keep(ray_exit(set, anchor, y));
  }

  std::vector<Vector> gs = set.critical_normals();
  for (long j = 0; j < sampler.n_g; ++j) gs.push_back(sample_sphere(set.dim(), rng_g));
  std::vector<Vector> ss;
  ss.reserve(gs.size());
  for (const Vector& g : gs) ss.push_back(set.lmo(g));

  LdsEstimate est;
  est.A_hat = std::numeric_limits<double>::infinity();
  est.points = static_cast<long>(xs.size());
  est.directions = static_cast<long>(gs.size());
  for (const Vector& x : xs) {
    for (std::size_t j = 0; j < gs.size(); ++j) {
      const Vector diff = x - ss[j];
      const double dn = diff.norm();
      if (dn < kTiny) continue;
      ++est.pairs;
      const double ratio = gs[j].dot(diff) / (gs[j].norm() * std::pow(dn, q));
      if (ratio < est.A_hat) {
        est.A_hat = ratio;
        est.worst = LdsWitness{x, gs[j], ss[j], ratio};
      }
    }
  }
  if (est.pairs == 0) throw NumericError("estimate_lds: no admissible (x, g) pairs were sampled");
  return est;
}

LdsCertificate lds_from_uc(const UcParams& uc) {
  const UcParams checked = make_uc_params(uc.alpha, uc.q);
  return {checked.alpha / 2.0, checked.q, std::numeric_limits<double>::infinity(), LdsProvenance::AnalyticFromUc};
}

LdsCertificate lds_from_patch(const UcParams& patch_uc, double beta, double diam, double q, double rho) {
  const UcParams checked = make_uc_params(patch_uc.alpha, patch_uc.q);
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidArgument("lds_from_patch: beta must be positive");
  if (!(diam >= 0.0) || !std::isfinite(diam)) throw InvalidArgument("lds_from_patch: diameter must be finite");
  if (!(q >= 2.0)) throw InvalidArgument("lds_from_patch: q must be at least 2");
  if (!(rho > 0.0)) throw InvalidArgument("lds_from_patch: rho must be positive");
  const double A = std::min(checked.alpha / 2.0, beta / std::max(1.0, std::pow(diam, q)));
  return {A, q, rho, LdsProvenance::AnalyticFromPatch};
}

double stadium_residual_gap(double half_length, const ReferenceSet& M, double rho, int grid) {
  if (!(half_length > 0.0)) throw InvalidArgument("stadium_residual_gap: half length must be positive");
  if (!(rho > 0.0)) throw InvalidArgument("stadium_residual_gap: rho must be positive");
  if (grid < 2) throw InvalidArgument("stadium_residual_gap: grid too coarse");
  const FeasibleSet set = FeasibleSet::stadium(half_length);
  const double a = half_length;
  std::vector<Vector> dirs;
  for (int k = 0; k < grid; ++k) {
    const double th = -std::numbers::pi / 2.0 + std::numbers::pi * k / (grid - 1);
    dirs.emplace_back(Eigen::Vector2d(std::cos(th), std::sin(th)));
  }
  double beta = std::numeric_limits<double>::infinity();
  long used = 0;
  for (const Vector& m : M.points) {
    require_dim(m, 2, "stadium_residual_gap: reference point");
    for (int i = 0; i < grid; ++i) {
      for (int j = 0; j < grid; ++j) {
        Vector x(2);
        x << m[0] - rho + 2.0 * rho * i / (grid - 1), m[1] - rho + 2.0 * rho * j / (grid - 1);
        if (!set.contains(x) || M.distance(x) > rho) continue;
        if (std::hypot(x[0] - a, x[1]) > 1.0 + 1e-12 || std::abs(std::abs(x[1]) - 1.0) < 1e-12)
          throw InvalidArgument("stadium_residual_gap: neighbourhood leaves the right cap");
        ++used;
        for (const Vector& u : dirs) beta = std::min(beta, u.dot(x) + a * u[0] + 1.0);
      }
    }
  }
  if (used == 0) throw InvalidArgument("stadium_residual_gap: neighbourhood has no grid points in the set");
  return beta;
}

UcCheck check_uc(const FeasibleSet& set, double alpha, double q, const UcSampler& sampler) {
  make_uc_params(alpha, q);
  if (sampler.n_pairs < 1 || sampler.n_dirs < 0) throw InvalidArgument("check_uc: sample counts");
  auto rng = stream(sampler.seed, 3);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const std::vector<Vector> normals = set.critical_normals();

  UcCheck out;
  for (long k = 0; k < sampler.n_pairs; ++k) {
    const Chord c = sample_chord(set, normals, -6.0, rng);
    const double len = (c.x - c.y).norm();
    if (len < kTiny) continue;
    const double lambda = unif(rng) < 0.5 ? 0.5 : unif(rng);
    const Vector m = lambda * c.x + (1.0 - lambda) * c.y;
    const double t = lambda * (1.0 - lambda) * alpha * std::pow(len, q);
    std::vector<Vector> zs{normalized(-(lambda * c.g1 + (1.0 - lambda) * c.g2))};
    for (long j = 0; j < sampler.n_dirs; ++j) zs.push_back(sample_sphere(set.dim(), rng));
    for (const Vector& z : zs) {
      ++out.trials;
      const Vector p = m + t * z;
      if (set.contains(p, kUcTol)) continue;
      out.ok = false;
      const double excess = set.distance(p);
      if (!out.worst || excess > out.worst->excess) out.worst = UcWitness{c.x, c.y, z, lambda, excess};
    }
  }
  return out;
}

double estimate_uc_alpha(const FeasibleSet& set, double q, const UcSampler& sampler) {
  if (!(q >= 2.0)) throw InvalidArgument("estimate_uc_alpha: q must be at least 2");
  if (sampler.n_pairs < 1 || sampler.n_dirs < 0) throw InvalidArgument("estimate_uc_alpha: sample counts");
  auto rng = stream(sampler.seed, 4);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const std::vector<Vector> normals = set.critical_normals();
  const Vector anchor = set.interior_point();

  double alpha = std::numeric_limits<double>::infinity();
  for (long k = 0; k < sampler.n_pairs; ++k) {
    // short chords would put the boundary gap below round-off
    const Chord c = sample_chord(set, normals, -3.0, rng);
    const double len = (c.x - c.y).norm();
    if (len < 1e-4) continue;
    const double lambda = unif(rng) < 0.5 ? 0.5 : unif(rng);
    const Vector m = lambda * c.x + (1.0 - lambda) * c.y;
    std::vector<Vector> us{normalized(-(lambda * c.g1 + (1.0 - lambda) * c.g2)), normalized(-c.g1),
                           normalized(-c.g2)};
    if ((m - anchor).norm() > kTiny) us.push_back(normalized(m - anchor));
    for (long j = 0; j < sampler.n_dirs; ++j) us.push_back(sample_sphere(set.dim(), rng));
    const double gap = boundary_gap(set, m, us);
    alpha = std::min(alpha, gap / (lambda * (1.0 - lambda) * std::pow(len, q)));
  }
  if (!std::isfinite(alpha)) throw NumericError("estimate_uc_alpha: no chords of positive length were sampled");
  return alpha;
}

HebCheck check_heb(const FeasibleSet& set, const Objective& f, const HebCertificate& cert, long samples,
                   std::uint64_t seed) {
  const auto& truth = f.ground_truth();
  if (!truth || !truth->minimizer) throw InvalidArgument("check_heb: objective has no recorded minimizer");
  if (samples < 1) throw InvalidArgument("check_heb: sample count");
  auto rng = stream(seed, 5);
  HebCheck out;
  out.worst_slack = -std::numeric_limits<double>::infinity();
  const Vector& xstar = *truth->minimizer;
  const double radius = std::isfinite(cert.rho) ? cert.rho : set.diameter();
  for (long k = 0; k < samples; ++k) {
    const Vector x = detail::nearest_point(set, sample_ball(xstar, radius, rng));
    const double dist = (x - xstar).norm();
    if (dist >= cert.rho) continue;
    ++out.samples;
    const double slack = std::pow(dist, cert.r) - cert.B * (f.value(x) - truth->f_star);
    if (slack > out.worst_slack) {
      out.worst_slack = slack;
      out.worst_x = x;
    }
  }
  out.ok = out.worst_slack <= 1e-9;
  return out;
}

double lbg_contraction(double A, double G, double L) {
  if (!(A > 0.0) || !(G > 0.0) || !(L > 0.0)) throw InvalidArgument("lbg_contraction: A, G, L must be positive");
  return 0.5 * std::min(1.0, A * G / L);
}

// ------------------------------------------------------------ rates

GapSeries gap_series(const Trace& trace) {
  GapSeries s;
  s.t.reserve(trace.records.size());
  s.F.reserve(trace.records.size());
  for (const auto& r : trace.records) {
    s.t.push_back(static_cast<double>(r.t));
    s.F.push_back(r.F);
  }
  return s;
}

ExactConvergence::ExactConvergence(double t)
    : std::runtime_error("exact convergence: primal gap is zero at t=" + std::to_string(static_cast<long>(t))),
      t_(t) {}

ExponentFit fit_exponent(const GapSeries& series, std::optional<FitWindow> window, std::size_t min_points) {
  if (series.t.size() != series.F.size()) throw InvalidArgument("fit_exponent: t and F lengths differ");
  if (series.t.empty()) throw InvalidArgument("fit_exponent: empty series");
  const double t_last = series.t.back();
  const FitWindow w = window.value_or(FitWindow{t_last / 10.0, t_last});
  if (!(w.lo > 0.0 && w.lo < w.hi)) throw InvalidArgument("fit_exponent: window must satisfy 0 < lo < hi");

  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < series.t.size(); ++i) {
    const double t = series.t[i];
    if (t < w.lo || t > w.hi) continue;
    const double F = series.F[i];
    if (std::isnan(F)) throw InvalidArgument("fit_exponent: primal gap unavailable (dual-gap-only trace)");
    if (F <= 0.0) throw ExactConvergence(t);
    lx.push_back(std::log(t));
    ly.push_back(std::log(F));
  }
  if (lx.size() < min_points)
    throw InvalidArgument("fit_exponent: " + std::to_string(lx.size()) + " records in the window, need " +
                          std::to_string(min_points));
  const auto n = static_cast<Eigen::Index>(lx.size());
  Matrix design(n, 2);
  Vector rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = lx[static_cast<std::size_t>(i)];
    design(i, 1) = 1.0;
    rhs[i] = ly[static_cast<std::size_t>(i)];
  }
  const Vector coef = design.colPivHouseholderQr().solve(rhs);
  ExponentFit fit;
  fit.slope = coef[0];
  fit.intercept = coef[1];
  fit.window = w;
  fit.residual = (design * coef - rhs).cwiseAbs().maxCoeff();
  fit.points = static_cast<std::size_t>(n);
  return fit;
}

std::vector<double> power_descent_oracle(double a0, double eta, double r, long T) {
  if (!(a0 >= 0.0 && a0 <= 1.0)) throw InvalidArgument("power_descent_oracle: a0 must lie in [0, 1]");
  if (!(eta > 0.0 && eta <= 1.0)) throw InvalidArgument("power_descent_oracle: eta must lie in (0, 1]");
  if (!(r > 0.0 && r <= 1.0)) throw InvalidArgument("power_descent_oracle: r must lie in (0, 1]");
  if (T < 0) throw InvalidArgument("power_descent_oracle: T must be nonnegative");
  std::vector<double> a(static_cast<std::size_t>(T) + 1);
  a[0] = a0;
  for (long t = 0; t < T; ++t) {
    const double cur = a[static_cast<std::size_t>(t)];
    a[static_cast<std::size_t>(t) + 1] = cur - eta * std::pow(cur, 1.0 + r);
  }
  return a;
}

GapSeries subsample(const std::vector<double>& values) {
  GapSeries s;
  for (std::size_t t = 0; t < values.size(); ++t) {
    if (t + 1 == values.size() || on_record_schedule(static_cast<long>(t))) {
      s.t.push_back(static_cast<double>(t));
      s.F.push_back(values[t]);
    }
  }
  return s;
}

HDecay check_h_decay(const GapSeries& series, int ell, double factor, std::optional<double> t_from,
                     std::optional<double> t_to) {
  if (series.t.empty() || series.t.size() != series.F.size()) throw InvalidArgument("check_h_decay: bad series");
  if (ell < 2) throw InvalidArgument("check_h_decay: ell must be at least 2");
  if (!(factor > 1.0)) throw InvalidArgument("check_h_decay: factor must exceed 1");
  HDecay out;
  out.t_to = t_to.value_or(series.t.back());
  out.t_from = t_from.value_or(out.t_to / 100.0);
  if (!(out.t_from >= 1.0 && out.t_from < out.t_to)) throw InvalidArgument("check_h_decay: need 1 <= t_from < t_to");
  auto envelope = [&](double at) {
    double best = -1.0;
    for (std::size_t i = 0; i < series.t.size(); ++i) {
      if (series.t[i] > at || series.t[i] < 0.9 * at) continue;
      if (std::isnan(series.F[i])) throw InvalidArgument("check_h_decay: primal gap unavailable");
      best = std::max(best, (series.t[i] + ell) * series.F[i]);
    }
    if (best < 0.0) throw InvalidArgument("check_h_decay: no records near t=" + std::to_string(at));
    return best;
  };
  out.h_from = envelope(out.t_from);
  out.h_to = envelope(out.t_to);
  out.ratio = out.h_from > 0.0 ? out.h_to / out.h_from : 0.0;
  out.consistent = out.h_to * factor <= out.h_from;
  return out;
}

}  // namespace sharpfw
