#pragma once

#include "curvlab/products.hpp"

namespace curvlab {

/// R = W + E o g / (n-2) + S g o g / (2n(n-1)).
struct CurvatureDecomposition {
  CurvatureTensor weyl;
  CurvatureTensor e_part;
  CurvatureTensor s_part;
  SymmetricForm2 E;
  double S;
};

inline CurvatureDecomposition decompose(const CurvatureTensor& r) {
  const int n = r.n();
  require_min_dim(n, 4, "decompose");
  const SymmetricForm2 g = SymmetricForm2::identity(n);
  const SymmetricForm2 rc = ricci_contraction(r.op());
  const double s = rc.trace();
  const SymmetricForm2 e = rc.trace_free();
  CurvatureTensor s_part = (s / (2.0 * n * (n - 1))) * kulkarni_nomizu(g, g);
  CurvatureTensor e_part = (1.0 / (n - 2)) * kulkarni_nomizu(e, g);
  CurvatureTensor w = r - s_part - e_part;
  return {std::move(w), std::move(e_part), std::move(s_part), e, s};
}

/// Max-entry residual of rc(W) relative to max(1, |W|_max).
inline double trace_residual(const AlgebraicOperator2Forms& w) {
  const double scale = std::max(1.0, w.matrix().cwiseAbs().maxCoeff());
  return ricci_contraction(w).matrix().cwiseAbs().maxCoeff() / scale;
}

/// Rejects n < 4 and tensors with rc(W) != 0.
inline void require_weyl(const AlgebraicOperator2Forms& w, const char* what, double tol = 1e-9) {
  require_min_dim(w.n(), 4, what);
  if (trace_residual(w) > tol) throw InvariantError(std::string(what) + ": input is not trace-free");
}

}  // namespace curvlab
