#pragma once

#include <algorithm>
#include <vector>

#include "curvlab/decomposition.hpp"

namespace curvlab {

struct UContraction {
  double u_norm_sq;   // sum_{mnpq} sum_{ij} (u_ij^{(mnpq)})^2, i.e. 8|u|^2
  double contracted;  // (1/8) sum_{mnpq} sum_{ijkl} W_ijkl u_ij^{(mnpq)} u_kl^{(mnpq)}
};

/// Contractions of u_ij^{(mnpq)} = W_inpq g_jm + W_mipq g_jn + W_mniq g_jp + W_mnpi g_jq - (i <-> j).
/// 8|u|^2 = 32(n-1)|W|^2 and contracted = -8 <W, W^2 + W#>.
inline UContraction u_contraction(const CurvatureTensor& w) {
  require_weyl(w.op(), "u_contraction");
  const int n = w.n();
  const auto& idx = w.op().indexing();
  const int np = idx.size();
  const Eigen::MatrixXd& m = w.matrix();
  Eigen::MatrixXd u(n, n);
  Eigen::VectorXd up(np);
  double norm_acc = 0.0;
  double contr_acc = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          u.setZero();
          for (int i = 0; i < n; ++i) {
            u(i, a) += w(i, b, c, d);
            u(i, b) += w(a, i, c, d);
            u(i, c) += w(a, b, i, d);
            u(i, d) += w(a, b, c, i);
          }
          u = (u - u.transpose()).eval();
          norm_acc += u.squaredNorm();
          for (int p = 0; p < np; ++p) up(p) = u(idx.pair(p).first, idx.pair(p).second);
          contr_acc += 4.0 * up.dot(m * up);
        }
  return {norm_acc, contr_acc / 8.0};
}

struct QuadraticForms {
  double W_AA;     // sum W_ijkl A_ik A_jl
  double A_cubed;  // sum A_ij A_jk A_ki
};

inline QuadraticForms quadratic_forms(const AlgebraicOperator2Forms& w, const SymmetricForm2& a) {
  require_same_dim(w.n(), a.n(), "quadratic_forms");
  const int n = w.n();
  double waa = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) waa += w(i, j, k, l) * a(i, k) * a(j, l);
  return {waa, cube(a)};
}

/// Symmetric matrix w_ij = W_ijij of a pure curvature tensor: zero diagonal, zero row sums.
class PureCurvatureMatrix {
 public:
  explicit PureCurvatureMatrix(Eigen::MatrixXd w, double tol = kAlgebraicTol) : w_(std::move(w)) {
    if (w_.rows() != w_.cols()) throw DimensionError("pure curvature matrix must be square");
    const double scale = std::max(1.0, w_.cwiseAbs().maxCoeff());
    if ((w_ - w_.transpose()).cwiseAbs().maxCoeff() > tol * scale)
      throw InvariantError("pure curvature matrix is not symmetric");
    if (w_.diagonal().cwiseAbs().maxCoeff() > tol * scale)
      throw InvariantError("pure curvature matrix has a nonzero diagonal entry");
    if (w_.rowwise().sum().cwiseAbs().maxCoeff() > tol * scale * w_.rows())
      throw InvariantError("pure curvature matrix has a nonzero row sum");
  }

  /// Extracts w_ij from a trace-free tensor that is diagonal on the pair basis.
  static PureCurvatureMatrix from_weyl(const CurvatureTensor& weyl, double tol = kAlgebraicTol) {
    const Eigen::MatrixXd& m = weyl.matrix();
    const Eigen::MatrixXd off = m - Eigen::MatrixXd(m.diagonal().asDiagonal());
    if (off.cwiseAbs().maxCoeff() > tol * std::max(1.0, m.cwiseAbs().maxCoeff()))
      throw InvariantError("tensor is not pure in this frame");
    const int n = weyl.n();
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) w(i, j) = w(j, i) = weyl(i, j, i, j);
    return PureCurvatureMatrix(std::move(w), tol);
  }

  int n() const { return static_cast<int>(w_.rows()); }
  const Eigen::MatrixXd& matrix() const { return w_; }

  /// The diagonal pair-basis operator with entries w_ij.
  CurvatureTensor to_tensor() const {
    AlgebraicOperator2Forms op(n());
    for (int a = 0; a < op.pairs(); ++a) {
      const auto [i, j] = op.indexing().pair(a);
      op.mutable_matrix()(a, a) = w_(i, j);
    }
    return CurvatureTensor::assume_valid(std::move(op));
  }

 private:
  Eigen::MatrixXd w_;
};

struct PureCubics {
  double sharp_cubic;      // sum_{ijk} w_ij w_ik w_kj = 2 <W, W#>
  double square_cubic;     // sum_{ij} w_ij^3 = 2 <W, W^2>
  double three_plane_sum;  // sum_{i<j<k} (w_ij + w_jk + w_ik)^3
};

/// Satisfies sharp_cubic = ((8 - n)/2) square_cubic + three_plane_sum.
inline PureCubics pure_cubics(const PureCurvatureMatrix& pm) {
  const Eigen::MatrixXd& w = pm.matrix();
  const int n = pm.n();
  PureCubics out{(w * w * w).trace(), w.array().cube().sum(), 0.0};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) out.three_plane_sum += std::pow(w(i, j) + w(j, k) + w(i, k), 3);
  return out;
}

struct SectionalSplit {
  double w1;
  double w2;
};

/// Sums of W_ijij over pairs inside a proper subset and inside its complement; equal for Weyl tensors.
inline SectionalSplit weyl_sectional_split(const CurvatureTensor& w, const std::vector<int>& subset) {
  require_weyl(w.op(), "weyl_sectional_split");
  const int n = w.n();
  std::vector<bool> in(static_cast<std::size_t>(n), false);
  for (int i : subset) {
    if (i < 0 || i >= n) throw InputError("weyl_sectional_split: index out of range");
    in[static_cast<std::size_t>(i)] = true;
  }
  const auto count = std::count(in.begin(), in.end(), true);
  if (count == 0 || count == n) throw InputError("weyl_sectional_split: subset must be proper and nonempty");
  SectionalSplit out{0.0, 0.0};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (in[static_cast<std::size_t>(i)] && in[static_cast<std::size_t>(j)]) out.w1 += w(i, j, i, j);
      if (!in[static_cast<std::size_t>(i)] && !in[static_cast<std::size_t>(j)]) out.w2 += w(i, j, i, j);
    }
  return out;
}

}  // namespace curvlab
