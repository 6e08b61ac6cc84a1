#pragma once

#include <cmath>

#include "curvlab/decomposition.hpp"

namespace curvlab {

struct SpectralExtremes {
  double omega_mag;  // largest |eigenvalue| of W on two-forms
  double omega_max;  // largest eigenvalue of W
  double ell;        // minus the smallest eigenvalue of E
};

inline SpectralExtremes spectral_extremes(const AlgebraicOperator2Forms& w, const SymmetricForm2& e) {
  require_same_dim(w.n(), e.n(), "spectral_extremes");
  require_weyl(w, "spectral_extremes");
  if (std::abs(e.trace()) > 1e-9 * std::max(1.0, norm(e))) throw InvariantError("spectral_extremes: E is not traceless");
  const Eigen::VectorXd ev = w.eigenvalues();
  const Eigen::VectorXd ee = e.eigenvalues();
  return {ev.cwiseAbs().maxCoeff(), ev.maxCoeff(), -ee.minCoeff()};
}

struct BergerComponentBound {
  double max_component;  // max over all W_ijkl
  double bound;          // (4/3) omega_mag
  bool holds;
};

inline BergerComponentBound berger_component_bound(const CurvatureTensor& w) {
  require_weyl(w.op(), "berger_component_bound");
  if (bianchi_residual(w.op()) > 1e-9) throw InvariantError("berger_component_bound: first Bianchi identity fails");
  const double mx = w.matrix().cwiseAbs().maxCoeff();  // sign flips under i <-> j, so max = max |.|
  const double om = w.op().eigenvalues().cwiseAbs().maxCoeff();
  const double bound = 4.0 / 3.0 * om;
  return {mx, bound, mx <= bound + kAlgebraicTol * std::max(1.0, bound)};
}

struct CubicBoundEval {
  double lhs;        // <W, W^2 + W#>
  double eig_bound;  // (2(n-1)/3) omega_mag |W|^2
  double norm_bound; // c(n) |W|^3
  bool eig_holds;
  bool norm_holds;
  // n = 5 only
  bool has_five;
  double five_residual;      // lhs - 3 <W, W^2>, relative
  double eig_bound_signed;   // (2(n-1)/3) omega_max |W|^2
  bool eig_signed_holds;
};

/// c(5) = 8/sqrt(10); c(n) = 5 for n >= 6.
inline double norm_cubic_constant(int n) {
  require_min_dim(n, 5, "norm_cubic_constant");
  return n == 5 ? 8.0 / std::sqrt(10.0) : 5.0;
}

inline CubicBoundEval cubic_bound_eval(const CurvatureTensor& w) {
  const int n = w.n();
  require_min_dim(n, 5, "cubic_bound_eval");
  require_weyl(w.op(), "cubic_bound_eval");
  const AlgebraicOperator2Forms w2 = square(w.op());
  const double dot3 = inner(w.op(), w2);
  const double lhs = dot3 + inner(w.op(), sharp(w.op()));
  const Eigen::VectorXd ev = w.op().eigenvalues();
  const double wsq = norm_sq(w);
  const double k = 2.0 * (n - 1) / 3.0;
  CubicBoundEval out{};
  out.lhs = lhs;
  out.eig_bound = k * ev.cwiseAbs().maxCoeff() * wsq;
  out.norm_bound = norm_cubic_constant(n) * std::pow(wsq, 1.5);
  const double slack = kAlgebraicTol * std::max(1.0, std::abs(lhs));
  out.eig_holds = lhs <= out.eig_bound + slack;
  out.norm_holds = lhs <= out.norm_bound + slack;
  out.has_five = n == 5;
  if (out.has_five) {
    out.five_residual = relative_gap(lhs, 3.0 * dot3);
    out.eig_bound_signed = k * ev.maxCoeff() * wsq;
    out.eig_signed_holds = lhs <= out.eig_bound_signed + slack;
  }
  return out;
}

struct EigenEstimate {
  double max_eig_sq;  // largest lambda^2
  double bound;       // ((m-1)/m) |T|^2
};

/// lambda^2 <= ((m-1)/m)|T|^2 for every eigenvalue of a trace-free symmetric T.
inline EigenEstimate eigen_estimate(const SymmetricForm2& t) {
  const int m = t.n();
  if (std::abs(t.trace()) > 1e-9 * std::max(1.0, norm(t))) throw InvariantError("eigen_estimate: T is not traceless");
  const Eigen::VectorXd ev = t.eigenvalues();
  return {ev.cwiseAbs2().maxCoeff(), (m - 1.0) / m * norm_sq(t)};
}

}  // namespace curvlab
