#pragma once

#include <cstdint>
#include <random>

#include "curvlab/contractions.hpp"
#include "curvlab/derivative_tensors.hpp"

namespace curvlab {

/// Deterministic sampler of random tensors; entries uniform in [-1, 1] before projection.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform() { return dist_(rng_); }
  double uniform(double lo, double hi) { return lo + 0.5 * (uniform() + 1.0) * (hi - lo); }
  std::mt19937_64& engine() { return rng_; }

  SymmetricForm2 symmetric_form(int n) {
    SymmetricForm2 h(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) h.set(i, j, uniform());
    return h;
  }

  SymmetricForm2 trace_free_form(int n) { return symmetric_form(n).trace_free(); }

  Eigen::MatrixXd matrix(int rows, int cols) {
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = uniform();
    return m;
  }

  /// Self-adjoint operator: symmetrized uniform pair-basis matrix.
  AlgebraicOperator2Forms self_adjoint_operator(int n) {
    AlgebraicOperator2Forms op(n);
    const Eigen::MatrixXd a = matrix(op.pairs(), op.pairs());
    op.mutable_matrix() = 0.5 * (a + a.transpose());
    return op;
  }

  CurvatureTensor curvature(int n) { return bianchi_project(self_adjoint_operator(n)).kerb; }

  CurvatureTensor weyl(int n) { return decompose(curvature(n)).weyl; }

  TwoFormOneForm two_form_one_form(int n) {
    TwoFormOneForm a(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = 0; k < n; ++k) a.set(i, j, k, uniform());
    return a;
  }

  /// Symmetric, zero diagonal, zero row sums: w = A - (c_i + c_j) off the diagonal,
  /// with ((n-2) I + 1 1^T) c equal to the row sums of A.
  PureCurvatureMatrix pure_matrix(int n) {
    Eigen::MatrixXd a = matrix(n, n);
    a = (0.5 * (a + a.transpose())).eval();
    a.diagonal().setZero();
    const Eigen::MatrixXd sys = (n - 2) * Eigen::MatrixXd::Identity(n, n) + Eigen::MatrixXd::Ones(n, n);
    const Eigen::VectorXd c = sys.partialPivLu().solve(a.rowwise().sum());
    Eigen::MatrixXd w = a;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) w(i, j) = i == j ? 0.0 : a(i, j) - c(i) - c(j);
    return PureCurvatureMatrix(std::move(w));
  }

  /// Orthogonal matrix with determinant +1 from the QR factorization of a uniform matrix.
  Eigen::MatrixXd rotation(int n) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(matrix(n, n));
    Eigen::MatrixXd q = qr.householderQ();
    if (q.determinant() < 0) q.col(0) *= -1.0;
    return q;
  }

  /// Formal nabla R at the origin of normal coordinates built from a random third-order metric jet
  /// G_{ab,cde} = d_c d_d d_e g_ab:
  /// nabla_m R_ijkl = -1/2 (G_{jl,kmi} - G_{jk,lmi} - G_{il,kmj} + G_{ik,lmj}).
  /// The result has pair symmetry and satisfies both Bianchi identities.
  CovDerivCurvature curvature_derivative(int n) {
    std::vector<double> g(static_cast<std::size_t>(n * n * n * n * n), 0.0);
    auto at = [n, &g](int a, int b, int c, int d, int e) -> double& {
      return g[static_cast<std::size_t>((((a * n + b) * n + c) * n + d) * n + e)];
    };
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = c; d < n; ++d)
            for (int e = d; e < n; ++e) {
              const double v = uniform();
              const int cde[6][3] = {{c, d, e}, {c, e, d}, {d, c, e}, {d, e, c}, {e, c, d}, {e, d, c}};
              for (const auto& t : cde) {
                at(a, b, t[0], t[1], t[2]) = v;
                at(b, a, t[0], t[1], t[2]) = v;
              }
            }
    CovDerivCurvature out(n);
    for (int m = 0; m < n; ++m) {
      auto& s = out.mutable_slice(m);
      for (int p = 0; p < s.pairs(); ++p) {
        const auto [i, j] = s.indexing().pair(p);
        for (int q = 0; q < s.pairs(); ++q) {
          const auto [k, l] = s.indexing().pair(q);
          s.mutable_matrix()(p, q) =
              -0.5 * (at(j, l, k, m, i) - at(j, k, l, m, i) - at(i, l, k, m, j) + at(i, k, l, m, j));
        }
      }
    }
    return out;
  }

 private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> dist_{-1.0, 1.0};
};

}  // namespace curvlab
