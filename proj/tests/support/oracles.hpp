#pragma once

// Independent reference computations for the tests. Nothing here calls an
// LMO: boundaries are written down from the shape definitions.

#include "sharpfw/geometry.hpp"
#include "sharpfw/objectives.hpp"

#include <functional>
#include <vector>

namespace oracle {

using sharpfw::FeasibleSet;
using sharpfw::Vector;

/// Points on the boundary (or extreme points) of the set. `n` is the number
/// of nodes per curve for planar kinds and the sphere sample size otherwise.
std::vector<Vector> boundary_points(const FeasibleSet& set, int n);

/// min of <g, y> over the sample.
double sample_min(const std::vector<Vector>& points, const Vector& g);

/// Point of the sample attaining sample_min.
Vector sample_argmin(const std::vector<Vector>& points, const Vector& g);

/// Largest pairwise distance within the sample.
double sample_diameter(const std::vector<Vector>& points);

/// Central differences with step h.
Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x, double h = 1e-6);

/// Unit direction at angle theta in the plane.
Vector polar(double theta);

/// Deterministic unit directions in R^dim (Fibonacci lattice for dim 3,
/// equispaced angles for dim 2, seeded Gaussians otherwise).
std::vector<Vector> directions(Eigen::Index dim, int n, unsigned seed = 7);

/// min of 1/2 ||x||^2 over the grid points of the probability simplex in
/// R^3 with spacing 1/n.
double simplex_grid_min_half_norm(int n);

}  // namespace oracle
