#pragma once

#include "sharpfw/core.hpp"
#include "sharpfw/geometry.hpp"
#include "sharpfw/objectives.hpp"
#include "sharpfw/solver.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace sharpfw {

// ------------------------------------------------------------ sharpness

/// Finite reference set M given by its points.
struct ReferenceSet {
  std::vector<Vector> points;

  double distance(const VectorRef& x) const;
};

enum class LdsProvenance { AnalyticFromUc, AnalyticFromPatch, Sampled };

std::string to_string(LdsProvenance p);

/// Constants (A, q, rho) of  A ||g|| ||x - s||^q <= <g, x - s>  for every x
/// of the set with dist(x, M) < rho and every direction g.
struct LdsCertificate {
  double A;
  double q;
  double rho;
  LdsProvenance provenance;
};

struct LdsSampler {
  long n_x = 1000;
  long n_g = 1000;
  std::uint64_t seed = 0;
  /// Only points with dist(x, M) >= shell * rho are kept. 0 samples the
  /// whole neighbourhood; a positive value gives scale-relative estimates
  /// for sweeps over shrinking rho.
  double shell = 0.0;
};

struct LdsWitness {
  Vector x;
  Vector g;
  Vector s;
  double ratio = 0.0;
};

/// A_hat is the minimum of <g, x - s> / (||g|| ||x - s||^q) over the
/// sampled pairs, skipping pairs with ||x - s|| < 1e-12. Sampling can only
/// miss bad witnesses, so A_hat over-estimates the true constant.
struct LdsEstimate {
  double A_hat = 0.0;
  LdsWitness worst;
  long points = 0;
  long directions = 0;
  long pairs = 0;
};

/// Points are uniform draws from the rho-ball around M mapped to their
/// nearest point of the set, plus the boundary point hit by the ray from
/// the set's anchor through each interior draw. Directions are uniform on
/// the sphere plus the set's critical normals. Streams for points and
/// directions are independent, so larger samplers with the same seed see
/// supersets of the pairs.
LdsEstimate estimate_lds(const FeasibleSet& set, const ReferenceSet& M, double q, double rho,
                         const LdsSampler& sampler);

/// A = alpha / 2 from (alpha, q)-uniform convexity; any rho works.
LdsCertificate lds_from_uc(const UcParams& uc);

/// A = min{alpha / 2, beta / max{1, diam^q}} for a uniformly convex patch
/// with residual support gap beta.
LdsCertificate lds_from_patch(const UcParams& patch_uc, double beta, double diam, double q, double rho = 1.0);

/// Residual gap of the stadium around M near its right cap: the minimum of
/// <u, x> + a u_1 + 1 over x in the set with dist(x, M) <= rho and unit u
/// with u_1 >= 0, on a grid with `grid` nodes per axis.
double stadium_residual_gap(double half_length, const ReferenceSet& M, double rho, int grid = 200);

struct UcSampler {
  long n_pairs = 2000;
  long n_dirs = 64;
  std::uint64_t seed = 0;
};

struct UcWitness {
  Vector x;
  Vector y;
  Vector z;
  double lambda = 0.5;
  double excess = 0.0;  // distance of the displaced point outside the set
};

struct UcCheck {
  bool ok = true;
  std::optional<UcWitness> worst;
  long trials = 0;
};

/// Checks lambda x + (1-lambda) y + lambda (1-lambda) alpha ||x-y||^q z in C
/// (tolerance 1e-9) on sampled chords. Chords come from pairs of LMO atoms
/// for nearby directions, which lands both ends on the same flat face when
/// there is one; z ranges over random unit vectors and the chord's outward
/// normal.
UcCheck check_uc(const FeasibleSet& set, double alpha, double q, const UcSampler& sampler);

/// Largest alpha consistent with the sampled chords (an over-estimate):
/// min of dist(midpoint, boundary) / (lambda (1-lambda) ||x - y||^q).
double estimate_uc_alpha(const FeasibleSet& set, double q, const UcSampler& sampler);

struct HebCheck {
  bool ok = true;
  double worst_slack = 0.0;  // max of dist^r - B (f - f*)
  Vector worst_x;
  long samples = 0;
};

HebCheck check_heb(const FeasibleSet& set, const Objective& f, const HebCertificate& cert, long samples,
                   std::uint64_t seed);

/// Contraction factor kappa = min{1, A G / L} / 2 of the q = 2
/// lower-bounded-gradient regime.
double lbg_contraction(double A, double G, double L);

// ------------------------------------------------------------ rates

/// (t, F) pairs; t >= 0 strictly increasing.
struct GapSeries {
  std::vector<double> t;
  std::vector<double> F;
};

GapSeries gap_series(const Trace& trace);

struct FitWindow {
  double lo;
  double hi;
};

/// Least-squares line through (log t, log F) on the window.
struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  FitWindow window{0.0, 0.0};
  double residual = 0.0;  // max |log F - fitted| over the window
  std::size_t points = 0;
};

/// Thrown by fit_exponent when F hits zero inside the window.
class ExactConvergence : public std::runtime_error {
 public:
  explicit ExactConvergence(double t);
  double t() const { return t_; }

 private:
  double t_;
};

/// Default window is the last decade [t_last / 10, t_last]. Throws
/// InvalidArgument with fewer than `min_points` records in the window.
ExponentFit fit_exponent(const GapSeries& series, std::optional<FitWindow> window = std::nullopt,
                         std::size_t min_points = 50);

/// a_{t+1} = a_t - eta a_t^(1+r) for T steps with a0 in [0, 1], eta and r
/// in (0, 1]; returns a_0..a_T.
std::vector<double> power_descent_oracle(double a0, double eta, double r, long T);

/// Geometric subsample (every t <= 1000, then ~2% spacing) of a dense
/// sequence indexed by t = 0, 1, ...
GapSeries subsample(const std::vector<double>& values);

struct HDecay {
  double t_from = 0.0;
  double t_to = 0.0;
  double h_from = 0.0;
  double h_to = 0.0;
  double ratio = 0.0;  // h_to / h_from
  bool consistent = false;
};

/// Compares h_t = (t + ell) F_t at t_to (default: last record) with t_from
/// (default: t_to / 100); h at a time is the largest h over the records in
/// [0.9 t, t], so oscillating traces are judged by their envelope. The
/// trace is o(1/t)-consistent when h falls by at least `factor`.
HDecay check_h_decay(const GapSeries& series, int ell, double factor = 2.0, std::optional<double> t_from = {},
                     std::optional<double> t_to = {});

// ------------------------------------------------------------ sampling

/// Uniform point of the Euclidean ball of the given radius around center.
Vector sample_ball(const VectorRef& center, double radius, std::mt19937_64& rng);

Vector sample_sphere(Eigen::Index dim, std::mt19937_64& rng);

/// Random point of the set: a random convex combination of a few atoms for
/// random directions.
Vector sample_in_set(const FeasibleSet& set, std::mt19937_64& rng);

}  // namespace sharpfw
