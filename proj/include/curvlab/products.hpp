#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <vector>

#include "curvlab/operator.hpp"
#include "curvlab/symmetric_form.hpp"

namespace curvlab {

/// (h o k)_{ijkl} = h_ik k_jl + k_ik h_jl - h_il k_jk - k_il h_jk.
inline CurvatureTensor kulkarni_nomizu(const SymmetricForm2& h, const SymmetricForm2& k) {
  require_same_dim(h.n(), k.n(), "kulkarni_nomizu");
  const int n = h.n();
  AlgebraicOperator2Forms out(n);
  const auto& ps = out.indexing().pairs();
  for (int a = 0; a < out.pairs(); ++a) {
    const auto [i, j] = ps[static_cast<std::size_t>(a)];
    for (int b = 0; b < out.pairs(); ++b) {
      const auto [p, q] = ps[static_cast<std::size_t>(b)];
      out.mutable_matrix()(a, b) =
          h(i, p) * k(j, q) + k(i, p) * h(j, q) - h(i, q) * k(j, p) - k(i, q) * h(j, p);
    }
  }
  return CurvatureTensor::assume_valid(std::move(out));
}

/// rc(R)_{ik} = sum_p R_{ipkp}. Requires a self-adjoint operator.
inline SymmetricForm2 ricci_contraction(const AlgebraicOperator2Forms& r) {
  if (!r.is_self_adjoint(1e-9)) throw InvariantError("ricci_contraction: operator is not self-adjoint");
  const int n = r.n();
  SymmetricForm2 out(n);
  for (int i = 0; i < n; ++i)
    for (int k = i; k < n; ++k) {
      double s = 0.0;
      for (int p = 0; p < n; ++p) s += r(i, p, k, p);
      out.set(i, k, s);
    }
  return out;
}

struct BianchiSplit {
  CurvatureTensor kerb;
  AlgebraicOperator2Forms imb;
};

/// Orthogonal splitting S^2(Lambda^2) = ker b + im b of a self-adjoint operator.
inline BianchiSplit bianchi_project(const AlgebraicOperator2Forms& t) {
  if (!t.is_self_adjoint()) throw InvariantError("bianchi_project: operator is not self-adjoint");
  AlgebraicOperator2Forms imb = bianchi_map(t);
  AlgebraicOperator2Forms kerb = t - imb;
  kerb.mutable_matrix() = 0.5 * (kerb.matrix() + kerb.matrix().transpose()).eval();
  return {CurvatureTensor::assume_valid(std::move(kerb)), std::move(imb)};
}

/// (R.S)_{ijkl} = (1/2) sum_{pq} R_ijpq S_klpq.
inline AlgebraicOperator2Forms dot_product(const AlgebraicOperator2Forms& r, const AlgebraicOperator2Forms& s) {
  require_same_dim(r.n(), s.n(), "dot_product");
  return AlgebraicOperator2Forms(r.n(), r.matrix() * s.matrix().transpose());
}

namespace detail {

/// Nonzero so(n) structure constants: [E_a, E_c] = sum_d coef * E_d, with E_ij = e_i e_j^T - e_j e_i^T.
struct StructureConstants {
  struct Term {
    int c;
    int d;
    double coef;
  };
  std::vector<std::vector<Term>> terms;  // indexed by a
};

inline StructureConstants build_structure_constants(int n) {
  TwoFormIndexing idx(n);
  StructureConstants sc;
  sc.terms.resize(static_cast<std::size_t>(idx.size()));
  auto delta = [](int x, int y) { return x == y ? 1 : 0; };
  for (int a = 0; a < idx.size(); ++a) {
    const auto [i, j] = idx.pair(a);
    for (int c = 0; c < idx.size(); ++c) {
      const auto [k, l] = idx.pair(c);
      // [E_ij, E_kl] = d_jk E_il - d_ik E_jl - d_jl E_ik + d_il E_jk
      const std::array<std::array<int, 3>, 4> parts{{{delta(j, k), i, l},
                                                     {-delta(i, k), j, l},
                                                     {-delta(j, l), i, k},
                                                     {delta(i, l), j, k}}};
      for (const auto& [w, x, y] : parts) {
        if (w == 0 || x == y) continue;
        sc.terms[static_cast<std::size_t>(a)].push_back(
            {c, idx.position(x, y), static_cast<double>(w * TwoFormIndexing::sign(x, y))});
      }
    }
  }
  return sc;
}

inline const StructureConstants& structure_constants(int n) {
  static std::mutex mu;
  static std::vector<std::unique_ptr<StructureConstants>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() <= static_cast<std::size_t>(n)) cache.resize(static_cast<std::size_t>(n) + 1);
  auto& slot = cache[static_cast<std::size_t>(n)];
  if (!slot) slot = std::make_unique<StructureConstants>(build_structure_constants(n));
  return *slot;
}

}  // namespace detail

/// R#S. Evaluated as (R#S)_{ab} = (1/2) sum c_{acd} c_{bef} R_{ce} S_{df} with so(n) structure
/// constants, which equals the four-term four-index formula.
inline AlgebraicOperator2Forms sharp_product(const AlgebraicOperator2Forms& r, const AlgebraicOperator2Forms& s) {
  require_same_dim(r.n(), s.n(), "sharp_product");
  const auto& sc = detail::structure_constants(r.n());
  const int np = r.pairs();
  AlgebraicOperator2Forms out(r.n());
  const Eigen::MatrixXd& mr = r.matrix();
  const Eigen::MatrixXd& ms = s.matrix();
  for (int a = 0; a < np; ++a) {
    const auto& ta = sc.terms[static_cast<std::size_t>(a)];
    for (int b = 0; b < np; ++b) {
      const auto& tb = sc.terms[static_cast<std::size_t>(b)];
      double acc = 0.0;
      for (const auto& x : ta)
        for (const auto& y : tb) acc += x.coef * y.coef * mr(x.c, y.c) * ms(x.d, y.d);
      out.mutable_matrix()(a, b) = 0.5 * acc;
    }
  }
  return out;
}

inline AlgebraicOperator2Forms square(const AlgebraicOperator2Forms& r) { return dot_product(r, r); }
inline AlgebraicOperator2Forms sharp(const AlgebraicOperator2Forms& r) { return sharp_product(r, r); }

/// tri(R1, R2, R3) = <R1.R2 + R2.R1 + 2 R1#R2, R3>.
inline double tri(const AlgebraicOperator2Forms& r1, const AlgebraicOperator2Forms& r2,
                  const AlgebraicOperator2Forms& r3) {
  require_same_dim(r1.n(), r2.n(), "tri");
  require_same_dim(r1.n(), r3.n(), "tri");
  return inner(dot_product(r1, r2) + dot_product(r2, r1) + 2.0 * sharp_product(r1, r2), r3);
}

}  // namespace curvlab
