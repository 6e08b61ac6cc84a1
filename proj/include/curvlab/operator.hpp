#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <memory>

#include "curvlab/core.hpp"
#include "curvlab/indexing.hpp"

namespace curvlab {

/// Linear operator on two-forms, stored as an N x N matrix on the lexicographic pair basis.
/// Entry (a, b) is the four-index component T_{ijkl} with a = (i<j), b = (k<l).
/// Self-adjoint elements of S^2(Lambda^2) have a symmetric matrix; products such as R.S
/// of two different operators need not, so symmetry is checked by callers that require it.
class AlgebraicOperator2Forms {
 public:
  explicit AlgebraicOperator2Forms(int n)
      : n_(n), idx_(std::make_shared<TwoFormIndexing>(n)), m_(Eigen::MatrixXd::Zero(idx_->size(), idx_->size())) {
    if (n < 2) throw DimensionError("operator on two-forms requires n >= 2");
  }

  AlgebraicOperator2Forms(int n, Eigen::MatrixXd m) : AlgebraicOperator2Forms(n) {
    if (m.rows() != m_.rows() || m.cols() != m_.cols()) {
      throw DimensionError("operator matrix must be N x N with N = n(n-1)/2");
    }
    m_ = std::move(m);
  }

  /// Builds a self-adjoint operator; asymmetry beyond tol is rejected.
  static AlgebraicOperator2Forms self_adjoint(int n, const Eigen::MatrixXd& m, double tol = kAlgebraicTol) {
    AlgebraicOperator2Forms op(n, m);
    if (op.asymmetry() > tol * std::max(1.0, m.cwiseAbs().maxCoeff())) {
      throw InvariantError("operator matrix is not symmetric (T_ijkl != T_klij)");
    }
    op.m_ = 0.5 * (op.m_ + op.m_.transpose()).eval();
    return op;
  }

  static AlgebraicOperator2Forms identity(int n) {
    AlgebraicOperator2Forms op(n);
    op.m_.setIdentity();
    return op;
  }

  int n() const { return n_; }
  int pairs() const { return static_cast<int>(m_.rows()); }
  const TwoFormIndexing& indexing() const { return *idx_; }
  const Eigen::MatrixXd& matrix() const { return m_; }
  Eigen::MatrixXd& mutable_matrix() { return m_; }

  /// Four-index component with the antisymmetries in (i, j) and (k, l) reconstructed.
  double operator()(int i, int j, int k, int l) const {
    if (i == j || k == l) return 0.0;
    const int s = TwoFormIndexing::sign(i, j) * TwoFormIndexing::sign(k, l);
    return s * m_(idx_->position(i, j), idx_->position(k, l));
  }

  /// Sets T_{ijkl} and every entry implied by antisymmetry; the (kl, ij) entry is left alone.
  void set(int i, int j, int k, int l, double v) {
    if (i == j || k == l) throw InvariantError("component with a repeated index within a pair");
    const int s = TwoFormIndexing::sign(i, j) * TwoFormIndexing::sign(k, l);
    m_(idx_->position(i, j), idx_->position(k, l)) = s * v;
  }

  double asymmetry() const { return (m_ - m_.transpose()).cwiseAbs().maxCoeff(); }
  bool is_self_adjoint(double tol = kAlgebraicTol) const {
    return asymmetry() <= tol * std::max(1.0, m_.cwiseAbs().maxCoeff());
  }

  /// Eigenvalues of the symmetric part, ascending.
  Eigen::VectorXd eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m_ + m_.transpose()), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
  }

  AlgebraicOperator2Forms& operator+=(const AlgebraicOperator2Forms& o) {
    require_same_dim(n_, o.n_, "operator +");
    m_ += o.m_;
    return *this;
  }
  AlgebraicOperator2Forms& operator-=(const AlgebraicOperator2Forms& o) {
    require_same_dim(n_, o.n_, "operator -");
    m_ -= o.m_;
    return *this;
  }
  AlgebraicOperator2Forms& operator*=(double c) {
    m_ *= c;
    return *this;
  }
  friend AlgebraicOperator2Forms operator+(AlgebraicOperator2Forms a, const AlgebraicOperator2Forms& b) {
    return a += b;
  }
  friend AlgebraicOperator2Forms operator-(AlgebraicOperator2Forms a, const AlgebraicOperator2Forms& b) {
    return a -= b;
  }
  friend AlgebraicOperator2Forms operator*(double c, AlgebraicOperator2Forms a) { return a *= c; }
  friend AlgebraicOperator2Forms operator*(AlgebraicOperator2Forms a, double c) { return a *= c; }
  friend AlgebraicOperator2Forms operator-(AlgebraicOperator2Forms a) { return a *= -1.0; }

 private:
  int n_;
  std::shared_ptr<const TwoFormIndexing> idx_;
  Eigen::MatrixXd m_;
};

/// Frobenius product of pair matrices, equal to (1/4) sum_{ijkl} R_ijkl S_ijkl.
inline double inner(const AlgebraicOperator2Forms& r, const AlgebraicOperator2Forms& s) {
  require_same_dim(r.n(), s.n(), "inner(operator)");
  return (r.matrix().array() * s.matrix().array()).sum();
}
inline double norm_sq(const AlgebraicOperator2Forms& r) { return inner(r, r); }
inline double norm(const AlgebraicOperator2Forms& r) { return std::sqrt(norm_sq(r)); }

/// First Bianchi sum b(T)_{ijkl} = (T_ijkl + T_jkil + T_kijl) / 3, returned in the pair basis.
inline AlgebraicOperator2Forms bianchi_map(const AlgebraicOperator2Forms& t) {
  const int n = t.n();
  AlgebraicOperator2Forms out(n);
  const auto& ps = t.indexing().pairs();
  for (int a = 0; a < t.pairs(); ++a) {
    const auto [i, j] = ps[static_cast<std::size_t>(a)];
    for (int b = 0; b < t.pairs(); ++b) {
      const auto [k, l] = ps[static_cast<std::size_t>(b)];
      out.mutable_matrix()(a, b) = (t(i, j, k, l) + t(j, k, i, l) + t(k, i, j, l)) / 3.0;
    }
  }
  return out;
}

/// Largest entry of b(T) scaled by max(1, |T|_max).
inline double bianchi_residual(const AlgebraicOperator2Forms& t) {
  const double scale = std::max(1.0, t.matrix().cwiseAbs().maxCoeff());
  return bianchi_map(t).matrix().cwiseAbs().maxCoeff() / scale;
}

/// Algebraic curvature tensor: self-adjoint operator on two-forms with b(R) = 0.
class CurvatureTensor {
 public:
  /// Validates self-adjointness and the first Bianchi identity.
  explicit CurvatureTensor(AlgebraicOperator2Forms base, double tol = kAlgebraicTol) : base_(std::move(base)) {
    if (!base_.is_self_adjoint(tol)) throw InvariantError("curvature tensor: operator is not self-adjoint");
    const double res = bianchi_residual(base_);
    if (res > tol) {
      throw InvariantError("curvature tensor: first Bianchi identity fails (residual " + std::to_string(res) + ")");
    }
    base_.mutable_matrix() = 0.5 * (base_.matrix() + base_.matrix().transpose()).eval();
  }

  /// Skips validation; the caller guarantees the invariants by construction.
  static CurvatureTensor assume_valid(AlgebraicOperator2Forms base) { return CurvatureTensor(std::move(base), Unchecked{}); }

  static CurvatureTensor zero(int n) { return assume_valid(AlgebraicOperator2Forms(n)); }

  int n() const { return base_.n(); }
  const AlgebraicOperator2Forms& op() const { return base_; }
  const Eigen::MatrixXd& matrix() const { return base_.matrix(); }
  double operator()(int i, int j, int k, int l) const { return base_(i, j, k, l); }

  operator const AlgebraicOperator2Forms&() const { return base_; }

  friend CurvatureTensor operator+(const CurvatureTensor& a, const CurvatureTensor& b) {
    return assume_valid(a.base_ + b.base_);
  }
  friend CurvatureTensor operator-(const CurvatureTensor& a, const CurvatureTensor& b) {
    return assume_valid(a.base_ - b.base_);
  }
  friend CurvatureTensor operator*(double c, const CurvatureTensor& a) { return assume_valid(c * a.base_); }
  friend CurvatureTensor operator*(const CurvatureTensor& a, double c) { return assume_valid(c * a.base_); }

 private:
  struct Unchecked {};
  CurvatureTensor(AlgebraicOperator2Forms base, Unchecked) : base_(std::move(base)) {}
  AlgebraicOperator2Forms base_;
};

inline double inner(const CurvatureTensor& r, const CurvatureTensor& s) { return inner(r.op(), s.op()); }
inline double norm_sq(const CurvatureTensor& r) { return norm_sq(r.op()); }
inline double norm(const CurvatureTensor& r) { return norm(r.op()); }

}  // namespace curvlab
