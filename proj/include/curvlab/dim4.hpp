#pragma once

#include <array>
#include <cmath>

#include "curvlab/decomposition.hpp"

namespace curvlab {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

namespace detail {

/// Columns: f1 = (e12 + s e34)/sqrt2, f2 = (e13 + s e42)/sqrt2, f3 = (e14 + s e23)/sqrt2 in the
/// lexicographic pair basis (e12, e13, e14, e23, e24, e34), with s = +1 (self-dual) or -1.
inline Eigen::Matrix<double, 6, 3> hodge_basis(int s) {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix<double, 6, 3> f = Eigen::Matrix<double, 6, 3>::Zero();
  f(0, 0) = r;
  f(5, 0) = s * r;
  f(1, 1) = r;
  f(4, 1) = -s * r;  // e42 = -e24
  f(2, 2) = r;
  f(3, 2) = s * r;
  return f;
}

/// Columns: Berger ordering (e12, e13, e14, e34, e42, e23) in the lexicographic pair basis.
inline Eigen::Matrix<double, 6, 6> berger_basis() {
  Eigen::Matrix<double, 6, 6> p = Eigen::Matrix<double, 6, 6>::Zero();
  p(0, 0) = 1.0;
  p(1, 1) = 1.0;
  p(2, 2) = 1.0;
  p(5, 3) = 1.0;
  p(4, 4) = -1.0;
  p(3, 5) = 1.0;
  return p;
}

/// Action of an orthogonal 4-frame O (new e'_a = O e_a) on the pair basis:
/// column (a<b) holds e'_a ^ e'_b, entry (i<j) = O_ia O_jb - O_ja O_ib.
inline Eigen::MatrixXd pair_action(const Eigen::MatrixXd& o) {
  const int n = static_cast<int>(o.rows());
  TwoFormIndexing idx(n);
  Eigen::MatrixXd p(idx.size(), idx.size());
  for (int r = 0; r < idx.size(); ++r) {
    const auto [i, j] = idx.pair(r);
    for (int c = 0; c < idx.size(); ++c) {
      const auto [a, b] = idx.pair(c);
      p(r, c) = o(i, a) * o(j, b) - o(j, a) * o(i, b);
    }
  }
  return p;
}

using Quat = std::array<double, 4>;  // (w, x, y, z)

inline Quat qmul(const Quat& a, const Quat& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

/// Unit quaternion whose standard rotation matrix is r (det r = +1).
inline Quat quat_from_rotation(const Mat3& r) {
  Quat q{};
  const double tr = r.trace();
  if (tr > 0) {
    const double s = 2.0 * std::sqrt(tr + 1.0);
    q = {0.25 * s, (r(2, 1) - r(1, 2)) / s, (r(0, 2) - r(2, 0)) / s, (r(1, 0) - r(0, 1)) / s};
  } else if (r(0, 0) > r(1, 1) && r(0, 0) > r(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2));
    q = {(r(2, 1) - r(1, 2)) / s, 0.25 * s, (r(0, 1) + r(1, 0)) / s, (r(0, 2) + r(2, 0)) / s};
  } else if (r(1, 1) > r(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2));
    q = {(r(0, 2) - r(2, 0)) / s, (r(0, 1) + r(1, 0)) / s, 0.25 * s, (r(1, 2) + r(2, 1)) / s};
  } else {
    const double s = 2.0 * std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1));
    q = {(r(1, 0) - r(0, 1)) / s, (r(0, 2) + r(2, 0)) / s, (r(1, 2) + r(2, 1)) / s, 0.25 * s};
  }
  const double len = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
  for (double& v : q) v /= len;
  return q;
}

/// 4-frame O = L_p R_{conj q}; its action on Lambda^2_+ is rot(p) and on Lambda^2_- is rot(q).
inline Eigen::Matrix4d frame_from_rotations(const Mat3& rplus, const Mat3& rminus) {
  const Quat p = quat_from_rotation(rplus);
  Quat q = quat_from_rotation(rminus);
  q = {q[0], -q[1], -q[2], -q[3]};
  Eigen::Matrix4d o;
  for (int k = 0; k < 4; ++k) {
    Quat e{0, 0, 0, 0};
    e[static_cast<std::size_t>(k)] = 1.0;
    const Quat v = qmul(qmul(p, e), q);
    for (int r = 0; r < 4; ++r) o(r, k) = v[static_cast<std::size_t>(r)];
  }
  return o;
}

/// Eigenvectors as columns, eigenvalues descending, each column's largest entry positive, det +1.
inline std::pair<Vec3, Mat3> ordered_eigen(const Mat3& m) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(m);
  Vec3 vals;
  Mat3 vecs;
  for (int c = 0; c < 3; ++c) {
    vals(c) = es.eigenvalues()(2 - c);
    Vec3 v = es.eigenvectors().col(2 - c);
    Eigen::Index at = 0;
    v.cwiseAbs().maxCoeff(&at);
    if (v(at) < 0) v = -v;
    vecs.col(c) = v;
  }
  if (vecs.determinant() < 0) vecs.col(2) *= -1.0;
  return {vals, vecs};
}

}  // namespace detail

/// W^+ and W^- as 3x3 matrices on the bases (e12 +- e34, e13 +- e42, e14 +- e23)/sqrt2.
struct SelfDualSplit {
  Mat3 Wplus;
  Mat3 Wminus;
  double cross_norm;  // largest entry of the off-diagonal block, zero for Weyl input
};

inline void require_dim4_weyl(const AlgebraicOperator2Forms& w, const char* what) {
  if (w.n() != 4) throw DimensionError(std::string(what) + " requires n = 4");
  require_weyl(w, what);
}

inline SelfDualSplit split_self_dual(const CurvatureTensor& w) {
  require_dim4_weyl(w.op(), "split_self_dual");
  const auto fp = detail::hodge_basis(1);
  const auto fm = detail::hodge_basis(-1);
  const Eigen::MatrixXd& m = w.matrix();
  return {fp.transpose() * m * fp, fm.transpose() * m * fm, (fp.transpose() * m * fm).cwiseAbs().maxCoeff()};
}

/// The 6x6 pair-basis operator F+ W+ F+^T + F- W- F-^T.
inline CurvatureTensor reassemble_self_dual(const Mat3& wplus, const Mat3& wminus) {
  const auto fp = detail::hodge_basis(1);
  const auto fm = detail::hodge_basis(-1);
  Eigen::MatrixXd m = fp * wplus * fp.transpose() + fm * wminus * fm.transpose();
  return CurvatureTensor(AlgebraicOperator2Forms(4, m), 1e-9);
}

struct BergerNormalForm {
  Eigen::Matrix4d frame;  // columns are the new orthonormal basis vectors
  Vec3 a;
  Vec3 b;
  double residual;  // largest deviation of W in the new frame from the block form [[A, B], [B, A]]
};

/// In the returned frame, W on (e12, e13, e14, e34, e42, e23) equals [[A, B], [B, A]].
/// The spectrum of W^+ is a + b and that of W^- is a - b.
inline BergerNormalForm berger_normal_form(const CurvatureTensor& w) {
  require_dim4_weyl(w.op(), "berger_normal_form");
  if (bianchi_residual(w.op()) > 1e-9) throw InvariantError("berger_normal_form: first Bianchi identity fails");
  const SelfDualSplit sd = split_self_dual(w);
  const auto [lp, vp] = detail::ordered_eigen(sd.Wplus);
  const auto [lm, vm] = detail::ordered_eigen(sd.Wminus);
  const Eigen::Matrix4d o = detail::frame_from_rotations(vp, vm);
  const Eigen::MatrixXd act = detail::pair_action(o);
  const Eigen::MatrixXd wn = act.transpose() * w.matrix() * act;
  const Eigen::Matrix<double, 6, 6> pb = detail::berger_basis();
  const Eigen::Matrix<double, 6, 6> blk = pb.transpose() * wn * pb;
  BergerNormalForm out{o, 0.5 * (lp + lm), 0.5 * (lp - lm), 0.0};
  Eigen::Matrix<double, 6, 6> model = Eigen::Matrix<double, 6, 6>::Zero();
  for (int i = 0; i < 3; ++i) {
    model(i, i) = model(i + 3, i + 3) = out.a(i);
    model(i, i + 3) = model(i + 3, i) = out.b(i);
  }
  out.residual = (blk - model).cwiseAbs().maxCoeff();
  return out;
}

struct DetIdentities {
  double cube_dot;    // <W+, (W+)^2>
  double cube_sharp;  // <W+, (W+)#>
  double det;
};

/// Evaluates both cubic invariants on the four-index embedding of a traceless 3x3 block.
inline DetIdentities det_identities(const Mat3& wp) {
  if (std::abs(wp.trace()) > kAlgebraicTol * std::max(1.0, wp.cwiseAbs().maxCoeff()))
    throw InvariantError("det_identities: block is not traceless");
  if ((wp - wp.transpose()).cwiseAbs().maxCoeff() > kAlgebraicTol * std::max(1.0, wp.cwiseAbs().maxCoeff()))
    throw InvariantError("det_identities: block is not symmetric");
  const CurvatureTensor e = reassemble_self_dual(wp, Mat3::Zero());
  return {inner(e.op(), square(e.op())), inner(e.op(), sharp(e.op())), wp.determinant()};
}

struct SharpDetBound {
  double lhs;  // 18 det(W+)
  double rhs;  // sqrt6 |W+|^3
};

inline SharpDetBound sharp_det_bound(const Mat3& wp) {
  const double nrm = std::sqrt(wp.squaredNorm());
  return {18.0 * wp.determinant(), std::sqrt(6.0) * nrm * nrm * nrm};
}

struct PinchedLemmaResult {
  bool satisfied;      // lambda3 <= threshold
  double threshold;    // -l1/2 - l1 sqrt(3(l1 - S/6) / (4(3 l1 + S/6)))
  double lhs;          // S |W+|^2 on the spectrum (l1, -l1-l3, l3)
  double rhs;          // 36 det(W+)
  bool conclusion;     // lhs >= rhs up to rounding; meaningful when satisfied
};

/// Requires lambda1 >= S/6 > 0; otherwise the lemma does not apply.
inline PinchedLemmaResult pinched_lemma_check(double lambda1, double lambda3, double s) {
  if (!(s > 0)) throw InputError("pinched_lemma_check: requires S > 0");
  if (lambda1 < s / 6.0) throw InputError("pinched_lemma_check: not applicable, lambda1 < S/6");
  const double thr =
      -0.5 * lambda1 - lambda1 * std::sqrt(3.0 * (lambda1 - s / 6.0) / (4.0 * (3.0 * lambda1 + s / 6.0)));
  const double l2 = -lambda1 - lambda3;
  const double nsq = lambda1 * lambda1 + l2 * l2 + lambda3 * lambda3;
  const double lhs = s * nsq;
  const double rhs = 36.0 * lambda1 * l2 * lambda3;
  const double slack = 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return {lambda3 <= thr, thr, lhs, rhs, lhs >= rhs - slack};
}

struct ECircGResult {
  double value;                 // <E o g, W^2>
  double contraction_residual;  // max_ij |sum_kpq W_ikpq W_jkpq - |W|^2 g_ij|
};

/// The same quantities in any dimension n >= 4.
inline ECircGResult e_circ_g_value(const CurvatureTensor& w, const SymmetricForm2& e) {
  require_weyl(w.op(), "e_circ_g_value");
  require_same_dim(w.n(), e.n(), "e_circ_g_value");
  if (std::abs(e.trace()) > 1e-9 * std::max(1.0, norm(e))) throw InvariantError("e_circ_g_value: E is not traceless");
  const int n = w.n();
  const double value = inner(kulkarni_nomizu(e, SymmetricForm2::identity(n)).op(), square(w.op()));
  const double wsq = norm_sq(w);
  double res = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k)
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q) s += w(i, k, p, q) * w(j, k, p, q);
      res = std::max(res, std::abs(s - (i == j ? wsq : 0.0)));
    }
  return {value, res};
}

/// Only n = 4 forces the value to vanish.
inline ECircGResult e_circ_g_orthogonality(const CurvatureTensor& w, const SymmetricForm2& e) {
  if (w.n() != 4) throw DimensionError("e_circ_g_orthogonality requires n = 4");
  return e_circ_g_value(w, e);
}

}  // namespace curvlab
