#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "curvlab/core.hpp"

namespace curvlab {

/// Symmetric bilinear form on an n-dimensional inner-product space, stored as a packed upper triangle.
class SymmetricForm2 {
 public:
  explicit SymmetricForm2(int n) : n_(n), data_(static_cast<std::size_t>(n * (n + 1) / 2), 0.0) {
    if (n < 1) throw DimensionError("symmetric form requires n >= 1");
  }

  /// Symmetrizes the input; rejects a non-square matrix or asymmetry above tol.
  static SymmetricForm2 from_matrix(const Eigen::MatrixXd& m, double tol = kAlgebraicTol) {
    if (m.rows() != m.cols()) throw DimensionError("symmetric form: matrix is not square");
    const int n = static_cast<int>(m.rows());
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    SymmetricForm2 out(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        if (std::abs(m(i, j) - m(j, i)) > tol * scale) {
          throw InvariantError("symmetric form: input matrix is not symmetric");
        }
        out.set(i, j, 0.5 * (m(i, j) + m(j, i)));
      }
    return out;
  }

  static SymmetricForm2 identity(int n) {
    SymmetricForm2 g(n);
    for (int i = 0; i < n; ++i) g.set(i, i, 1.0);
    return g;
  }

  static SymmetricForm2 diagonal(const std::vector<double>& d) {
    SymmetricForm2 out(static_cast<int>(d.size()));
    for (int i = 0; i < out.n(); ++i) out.set(i, i, d[static_cast<std::size_t>(i)]);
    return out;
  }
  static SymmetricForm2 diagonal(const Eigen::VectorXd& d) {
    return diagonal(std::vector<double>(d.data(), d.data() + d.size()));
  }

  int n() const { return n_; }

  double operator()(int i, int j) const { return data_[slot(i, j)]; }
  void set(int i, int j, double v) { data_[slot(i, j)] = v; }

  Eigen::MatrixXd matrix() const {
    Eigen::MatrixXd m(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  /// Eigenvalues in ascending order.
  Eigen::VectorXd eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix(), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
  }

  /// Trace-free part A - (tr A / n) g.
  SymmetricForm2 trace_free() const {
    SymmetricForm2 out = *this;
    const double t = trace() / n_;
    for (int i = 0; i < n_; ++i) out.set(i, i, out(i, i) - t);
    return out;
  }

  /// Q^T A Q, i.e. the form expressed in the frame given by the columns of Q.
  SymmetricForm2 conjugated(const Eigen::MatrixXd& q) const {
    return from_matrix(q.transpose() * matrix() * q, 1e-8);
  }

  SymmetricForm2& operator+=(const SymmetricForm2& o) {
    require_same_dim(n_, o.n_, "symmetric form +");
    for (std::size_t s = 0; s < data_.size(); ++s) data_[s] += o.data_[s];
    return *this;
  }
  SymmetricForm2& operator-=(const SymmetricForm2& o) {
    require_same_dim(n_, o.n_, "symmetric form -");
    for (std::size_t s = 0; s < data_.size(); ++s) data_[s] -= o.data_[s];
    return *this;
  }
  SymmetricForm2& operator*=(double c) {
    for (double& v : data_) v *= c;
    return *this;
  }
  friend SymmetricForm2 operator+(SymmetricForm2 a, const SymmetricForm2& b) { return a += b; }
  friend SymmetricForm2 operator-(SymmetricForm2 a, const SymmetricForm2& b) { return a -= b; }
  friend SymmetricForm2 operator*(double c, SymmetricForm2 a) { return a *= c; }
  friend SymmetricForm2 operator*(SymmetricForm2 a, double c) { return a *= c; }

 private:
  std::size_t slot(int i, int j) const {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(i * n_ - i * (i - 1) / 2 + (j - i));
  }

  int n_;
  std::vector<double> data_;
};

/// Full contraction sum_{ij} h_ij k_ij.
inline double inner(const SymmetricForm2& h, const SymmetricForm2& k) {
  require_same_dim(h.n(), k.n(), "inner(SymmetricForm2)");
  double s = 0.0;
  for (int i = 0; i < h.n(); ++i)
    for (int j = 0; j < h.n(); ++j) s += h(i, j) * k(i, j);
  return s;
}

inline double norm_sq(const SymmetricForm2& h) { return inner(h, h); }
inline double norm(const SymmetricForm2& h) { return std::sqrt(norm_sq(h)); }

/// sum_{ijk} A_ij A_jk A_ki.
inline double cube(const SymmetricForm2& a) {
  const Eigen::MatrixXd m = a.matrix();
  return (m * m * m).trace();
}

}  // namespace curvlab
