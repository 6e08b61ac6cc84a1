#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace curvlab {

/// Thrown when an operation receives tensors of the wrong or mismatched dimension.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an input violates a structural invariant (symmetry, Bianchi, tracelessness, ...).
class InvariantError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown for malformed external input (files, spec strings, out-of-domain parameters).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Relative tolerance for exact algebraic identities evaluated in double precision.
inline constexpr double kAlgebraicTol = 1e-10;
/// Tolerance for round trips through eigenvector-based constructions (normal forms).
inline constexpr double kNormalFormTol = 1e-8;

/// |a - b| scaled by max(1, |a|, |b|).
inline double relative_gap(double a, double b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) / scale;
}

inline bool nearly_equal(double a, double b, double tol = kAlgebraicTol) {
  return relative_gap(a, b) <= tol;
}

/// Dimension of the underlying inner-product space. Always at least 3.
class Dimension {
 public:
  explicit Dimension(int n) : n_(n) {
    if (n < 3) {
      throw DimensionError("dimension must be at least 3, got " + std::to_string(n));
    }
  }

  int value() const { return n_; }
  /// Dimension of the space of two-forms, n(n-1)/2.
  int pairs() const { return n_ * (n_ - 1) / 2; }

  friend bool operator==(Dimension a, Dimension b) { return a.n_ == b.n_; }

 private:
  int n_;
};

inline void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

inline void require_min_dim(int n, int min_n, const char* what) {
  if (n < min_n) {
    throw DimensionError(std::string(what) + " requires n >= " + std::to_string(min_n) +
                         ", got n = " + std::to_string(n));
  }
}

}  // namespace curvlab
