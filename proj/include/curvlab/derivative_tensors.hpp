#pragma once

#include <vector>

#include "curvlab/decomposition.hpp"

namespace curvlab {

/// Element of Lambda^2 (x) T*: components A_{ijk} antisymmetric in (i, j).
/// Norm |A|^2 = sum_k sum_{i<j} A_{ijk}^2.
class TwoFormOneForm {
 public:
  explicit TwoFormOneForm(int n) : idx_(n), c_(Eigen::MatrixXd::Zero(idx_.size(), n)) {}

  int n() const { return idx_.n(); }
  const TwoFormIndexing& indexing() const { return idx_; }
  const Eigen::MatrixXd& data() const { return c_; }

  double operator()(int i, int j, int k) const {
    if (i == j) return 0.0;
    return TwoFormIndexing::sign(i, j) * c_(idx_.position(i, j), k);
  }
  void set(int i, int j, int k, double v) {
    if (i == j) throw InvariantError("two-form slot with repeated index");
    c_(idx_.position(i, j), k) = TwoFormIndexing::sign(i, j) * v;
  }

  /// tau_j = sum_i A_{iji}.
  Eigen::VectorXd trace() const {
    Eigen::VectorXd t = Eigen::VectorXd::Zero(n());
    for (int j = 0; j < n(); ++j)
      for (int i = 0; i < n(); ++i) t(j) += (*this)(i, j, i);
    return t;
  }

  /// A - (g_ik tau_j - g_jk tau_i) / (n-1), which has zero trace.
  TwoFormOneForm trace_free() const {
    const Eigen::VectorXd t = trace();
    TwoFormOneForm out = *this;
    for (int i = 0; i < n(); ++i)
      for (int j = i + 1; j < n(); ++j)
        for (int k = 0; k < n(); ++k) {
          const double corr = ((i == k ? t(j) : 0.0) - (j == k ? t(i) : 0.0)) / (n() - 1);
          out.set(i, j, k, (*this)(i, j, k) - corr);
        }
    return out;
  }

  TwoFormOneForm& operator+=(const TwoFormOneForm& o) {
    require_same_dim(n(), o.n(), "TwoFormOneForm +");
    c_ += o.c_;
    return *this;
  }
  TwoFormOneForm& operator*=(double s) {
    c_ *= s;
    return *this;
  }
  friend TwoFormOneForm operator+(TwoFormOneForm a, const TwoFormOneForm& b) { return a += b; }
  friend TwoFormOneForm operator-(TwoFormOneForm a, const TwoFormOneForm& b) { return a += (-1.0) * b; }
  friend TwoFormOneForm operator*(double s, TwoFormOneForm a) { return a *= s; }

 private:
  TwoFormIndexing idx_;
  Eigen::MatrixXd c_;
};

inline double norm_sq(const TwoFormOneForm& a) { return a.data().squaredNorm(); }
inline double norm(const TwoFormOneForm& a) { return std::sqrt(norm_sq(a)); }

/// Element of Lambda^3 (x) Lambda^2: T_{ijkmn}, alternating in (i, j, k) and in (m, n).
/// Norm |T|^2 = sum_{i<j<k} sum_{m<n} T_{ijkmn}^2.
class ThreeTwoTensor {
 public:
  explicit ThreeTwoTensor(int n)
      : tri_(n), pairs_(n), c_(Eigen::MatrixXd::Zero(tri_.size(), pairs_.size())) {}

  int n() const { return tri_.n(); }
  const ThreeFormIndexing& triples() const { return tri_; }
  const TwoFormIndexing& pairs() const { return pairs_; }
  const Eigen::MatrixXd& data() const { return c_; }
  Eigen::MatrixXd& mutable_data() { return c_; }

  double operator()(int i, int j, int k, int m, int l) const {
    const int s = ThreeFormIndexing::sign(i, j, k) * TwoFormIndexing::sign(m, l);
    if (s == 0) return 0.0;
    return s * c_(tri_.position(i, j, k), pairs_.position(m, l));
  }

  friend ThreeTwoTensor operator+(ThreeTwoTensor a, const ThreeTwoTensor& b) {
    require_same_dim(a.n(), b.n(), "ThreeTwoTensor +");
    a.c_ += b.c_;
    return a;
  }
  friend ThreeTwoTensor operator-(ThreeTwoTensor a, const ThreeTwoTensor& b) {
    require_same_dim(a.n(), b.n(), "ThreeTwoTensor -");
    a.c_ -= b.c_;
    return a;
  }
  friend ThreeTwoTensor operator*(double s, ThreeTwoTensor a) {
    a.c_ *= s;
    return a;
  }

 private:
  ThreeFormIndexing tri_;
  TwoFormIndexing pairs_;
  Eigen::MatrixXd c_;
};

inline double norm_sq(const ThreeTwoTensor& t) { return t.data().squaredNorm(); }
inline double norm(const ThreeTwoTensor& t) { return std::sqrt(norm_sq(t)); }

/// Element of T* (x) S^2(Lambda^2): one pair-basis operator per derivative direction m.
/// Norm |T|^2 = sum_m sum_{a<b, c<d} T_{m abcd}^2.
class CovDerivCurvature {
 public:
  explicit CovDerivCurvature(int n) {
    slices_.reserve(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) slices_.emplace_back(n);
  }
  explicit CovDerivCurvature(std::vector<AlgebraicOperator2Forms> slices) : slices_(std::move(slices)) {
    if (slices_.empty()) throw DimensionError("covariant derivative needs at least one slice");
    for (const auto& s : slices_) {
      require_same_dim(s.n(), static_cast<int>(slices_.size()), "CovDerivCurvature slices");
      if (!s.is_self_adjoint(1e-9)) throw InvariantError("CovDerivCurvature: slice is not self-adjoint");
    }
  }

  int n() const { return static_cast<int>(slices_.size()); }
  const AlgebraicOperator2Forms& slice(int m) const { return slices_[static_cast<std::size_t>(m)]; }
  AlgebraicOperator2Forms& mutable_slice(int m) { return slices_[static_cast<std::size_t>(m)]; }
  double operator()(int m, int i, int j, int k, int l) const { return slice(m)(i, j, k, l); }

  friend CovDerivCurvature operator+(CovDerivCurvature a, const CovDerivCurvature& b) {
    require_same_dim(a.n(), b.n(), "CovDerivCurvature +");
    for (int m = 0; m < a.n(); ++m) a.mutable_slice(m) += b.slice(m);
    return a;
  }
  friend CovDerivCurvature operator-(CovDerivCurvature a, const CovDerivCurvature& b) {
    require_same_dim(a.n(), b.n(), "CovDerivCurvature -");
    for (int m = 0; m < a.n(); ++m) a.mutable_slice(m) -= b.slice(m);
    return a;
  }
  friend CovDerivCurvature operator*(double s, CovDerivCurvature a) {
    for (int m = 0; m < a.n(); ++m) a.mutable_slice(m) *= s;
    return a;
  }

 private:
  std::vector<AlgebraicOperator2Forms> slices_;
};

inline double norm_sq(const CovDerivCurvature& d) {
  double s = 0.0;
  for (int m = 0; m < d.n(); ++m) s += norm_sq(d.slice(m));
  return s;
}
inline double norm(const CovDerivCurvature& d) { return std::sqrt(norm_sq(d)); }

/// (A o' g)_{ijkmn} = g_kn A_ijm + g_in A_jkm + g_jn A_kim + g_km A_jin + g_im A_kjn + g_jm A_ikn.
inline ThreeTwoTensor circ_prime(const TwoFormOneForm& a) {
  const int n = a.n();
  require_min_dim(n, 4, "circ_prime");
  ThreeTwoTensor out(n);
  auto d = [](int x, int y) { return x == y ? 1.0 : 0.0; };
  for (int t = 0; t < out.triples().size(); ++t) {
    const auto [i, j, k] = out.triples().triple(t);
    for (int p = 0; p < out.pairs().size(); ++p) {
      const auto [m, l] = out.pairs().pair(p);
      out.mutable_data()(t, p) = d(k, l) * a(i, j, m) + d(i, l) * a(j, k, m) + d(j, l) * a(k, i, m) +
                                 d(k, m) * a(j, i, l) + d(i, m) * a(k, j, l) + d(j, m) * a(i, k, l);
    }
  }
  return out;
}

/// B(D)_{ijkmn} = D_{i,jkmn} + D_{j,kimn} + D_{k,ijmn}.
inline ThreeTwoTensor second_bianchi(const CovDerivCurvature& dr) {
  const int n = dr.n();
  ThreeTwoTensor out(n);
  for (int t = 0; t < out.triples().size(); ++t) {
    const auto [i, j, k] = out.triples().triple(t);
    for (int p = 0; p < out.pairs().size(); ++p) {
      const auto [m, l] = out.pairs().pair(p);
      out.mutable_data()(t, p) = dr(i, j, k, m, l) + dr(j, k, i, m, l) + dr(k, i, j, m, l);
    }
  }
  return out;
}

/// Slice-wise Kulkarni-Nomizu product: (nabla h) o g.
inline CovDerivCurvature kn_with_metric(const std::vector<SymmetricForm2>& dh) {
  const int n = static_cast<int>(dh.size());
  const SymmetricForm2 g = SymmetricForm2::identity(n);
  std::vector<AlgebraicOperator2Forms> slices;
  slices.reserve(dh.size());
  for (const auto& h : dh) slices.push_back(kulkarni_nomizu(h, g).op());
  return CovDerivCurvature(std::move(slices));
}

/// (nabla_m S) g o g.
inline CovDerivCurvature scalar_with_metric(const std::vector<double>& ds) {
  const int n = static_cast<int>(ds.size());
  const SymmetricForm2 g = SymmetricForm2::identity(n);
  const AlgebraicOperator2Forms gg = kulkarni_nomizu(g, g).op();
  std::vector<AlgebraicOperator2Forms> slices;
  for (double v : ds) slices.push_back(v * gg);
  return CovDerivCurvature(std::move(slices));
}

/// nabla_m Rc_jk = sum_p nabla_m R_{jpkp}.
inline std::vector<SymmetricForm2> ricci_derivative(const CovDerivCurvature& dr) {
  std::vector<SymmetricForm2> out;
  for (int m = 0; m < dr.n(); ++m) out.push_back(ricci_contraction(dr.slice(m)));
  return out;
}

/// P_ijk = nabla_i Rc_jk - nabla_j Rc_ik.
inline TwoFormOneForm p_tensor(const std::vector<SymmetricForm2>& drc) {
  const int n = static_cast<int>(drc.size());
  TwoFormOneForm p(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) p.set(i, j, k, drc[static_cast<std::size_t>(i)](j, k) - drc[static_cast<std::size_t>(j)](i, k));
  return p;
}

/// Q_ijk = g_ki nabla_j S - g_kj nabla_i S.
inline TwoFormOneForm q_tensor(const std::vector<double>& ds) {
  const int n = static_cast<int>(ds.size());
  TwoFormOneForm q(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double v = (k == i ? ds[static_cast<std::size_t>(j)] : 0.0) - (k == j ? ds[static_cast<std::size_t>(i)] : 0.0);
        q.set(i, j, k, v);
      }
  return q;
}

/// (delta T)_{abc} = sum_i nabla_i T_{abci}.
inline TwoFormOneForm divergence(const CovDerivCurvature& dt) {
  const int n = dt.n();
  TwoFormOneForm out(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += dt(i, a, b, c, i);
        out.set(a, b, c, s);
      }
  return out;
}

/// Everything first-order derived from nabla R at a point of an orthonormal frame.
struct DerivativePack {
  std::vector<SymmetricForm2> nabla_rc;
  std::vector<double> nabla_s;
  CovDerivCurvature nabla_w;
  TwoFormOneForm delta_w;
  TwoFormOneForm p;
  TwoFormOneForm q;
  ThreeTwoTensor b_w;
  ThreeTwoTensor b_r;
};

/// nabla W = nabla R - (nabla S) g o g / (2n(n-1)) - (nabla E) o g / (n-2).
inline DerivativePack derivative_pack(const CovDerivCurvature& dr) {
  const int n = dr.n();
  require_min_dim(n, 4, "derivative_pack");
  std::vector<SymmetricForm2> drc = ricci_derivative(dr);
  std::vector<double> ds;
  std::vector<SymmetricForm2> de;
  for (const auto& h : drc) {
    ds.push_back(h.trace());
    de.push_back(h.trace_free());
  }
  CovDerivCurvature dw = dr - (1.0 / (2.0 * n * (n - 1))) * scalar_with_metric(ds) - (1.0 / (n - 2)) * kn_with_metric(de);
  TwoFormOneForm dlt = divergence(dw);
  TwoFormOneForm p = p_tensor(drc);
  TwoFormOneForm q = q_tensor(ds);
  ThreeTwoTensor bw = second_bianchi(dw);
  ThreeTwoTensor br = second_bianchi(dr);
  return {std::move(drc), std::move(ds), std::move(dw), std::move(dlt), std::move(p), std::move(q), std::move(bw), std::move(br)};
}

}  // namespace curvlab
