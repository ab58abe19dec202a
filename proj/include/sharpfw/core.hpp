#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace sharpfw {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using VectorRef = Eigen::Ref<const Vector>;

/// Invalid parameters, bad dimensions, malformed input.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A runtime assertion (progress bound, envelope, feasibility) failed.
class AssertionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// NaN/Inf produced, or an iterative routine failed to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool all_finite(const VectorRef& v) { return v.allFinite(); }

inline void require_dim(const VectorRef& v, Eigen::Index dim, const char* what) {
  if (v.size() != dim) {
    throw InvalidArgument(std::string(what) + ": dimension " + std::to_string(v.size()) +
                          " does not match " + std::to_string(dim));
  }
}

inline void require_finite(const VectorRef& v, const char* what) {
  if (!v.allFinite()) throw InvalidArgument(std::string(what) + ": non-finite coordinates");
}

/// Strict lexicographic order on coordinate vectors of equal size.
inline bool lex_less(const VectorRef& a, const VectorRef& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

inline Vector unit(Eigen::Index dim, Eigen::Index i) { return Vector::Unit(dim, i); }

}  // namespace sharpfw
