#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "curvlab/bounds.hpp"

namespace curvlab {

struct ConstantsTable {
  int n = 0;
  double s_n = 0;  // (n-2)/(4(n-1))
  double c_n = 0;  // norm cubic constant, n >= 5
  // Largest root of 8(n-1)^2 a^2 - 2n(n-1)(n-2) a + n(n-2)(n-3) = 0; absent when the roots are complex.
  std::optional<double> alpha;
  std::optional<double> a1;
  std::optional<double> a2;
  double discriminant = 0;
  double quadratic_residual = 0;  // |q(alpha)| / (8(n-1)^2 alpha^2), when alpha exists
  bool case5 = false;             // n = 5: alpha = 1/2 and the fixed constants below
  double case5_w = 0;             // 8/sqrt(10)
  double case5_e = 0;             // 2/sqrt(5)
  double case5_threshold = 0;     // 3/16
  // n = 4 double root 1/3, reported only.
  std::optional<double> alpha_dim4;
};

inline double quadratic_alpha(int n, double a) {
  const double m = n - 1.0;
  return 8.0 * m * m * a * a - 2.0 * n * m * (n - 2.0) * a + n * (n - 2.0) * (n - 3.0);
}

inline ConstantsTable constants(int n) {
  require_min_dim(n, 4, "constants");
  ConstantsTable t;
  t.n = n;
  const double m = n - 1.0;
  t.s_n = (n - 2.0) / (4.0 * m);
  t.discriminant = 4.0 * n * m * m * (n - 2.0) * (n - 4.0) * (n - 6.0);
  if (n == 4) {
    t.alpha_dim4 = 2.0 * n * m * (n - 2.0) / (16.0 * m * m);
    return t;
  }
  t.c_n = norm_cubic_constant(n);
  if (n == 5) {
    t.case5 = true;
    t.alpha = 0.5;
    t.case5_w = 8.0 / std::sqrt(10.0);
    t.case5_e = 2.0 / std::sqrt(5.0);
    t.case5_threshold = 3.0 / 16.0;
    return t;
  }
  const double a = (2.0 * n * m * (n - 2.0) + std::sqrt(std::max(0.0, t.discriminant))) / (16.0 * m * m);
  t.alpha = a;
  t.quadratic_residual = std::abs(quadratic_alpha(n, a)) / (8.0 * m * m * a * a);
  const double den = 2.0 * m * a - n + 3.0;
  t.a1 = 10.0 * m * a * a / den;
  t.a2 = 2.0 * m * a * a / den * std::sqrt(m / n);
  return t;
}

enum class VerdictKind { pointwise, norm, dim4_selfdual, integral, case5 };

inline std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::pointwise: return "pointwise";
    case VerdictKind::norm: return "norm";
    case VerdictKind::dim4_selfdual: return "dim4_selfdual";
    case VerdictKind::integral: return "integral";
    case VerdictKind::case5: return "case5";
  }
  return "";
}

/// satisfied <=> condition_value <= threshold. strict records condition_value < threshold,
/// which is the form the integral gap statements use.
struct PinchVerdict {
  double condition_value;
  double threshold;
  bool satisfied;
  bool strict;
  VerdictKind which;
};

inline PinchVerdict make_verdict(double cond, double thr, VerdictKind k) {
  return {cond, thr, cond <= thr, cond < thr, k};
}

struct PointwiseVerdicts {
  PinchVerdict magnitude;                 // omega = largest |eigenvalue|
  std::optional<PinchVerdict> signed_max; // n = 5: omega = largest eigenvalue
};

/// (2(n-1)/3) omega + ell <= S/n.
inline PointwiseVerdicts pinch_verdict_pointwise(const AlgebraicOperator2Forms& w, const SymmetricForm2& e, double s) {
  const int n = w.n();
  require_min_dim(n, 5, "pinch_verdict_pointwise");
  const SpectralExtremes x = spectral_extremes(w, e);
  const double k = 2.0 * (n - 1) / 3.0;
  PointwiseVerdicts out{make_verdict(k * x.omega_mag + x.ell, s / n, VerdictKind::pointwise), std::nullopt};
  if (n == 5) out.signed_max = make_verdict(k * x.omega_max + x.ell, s / n, VerdictKind::pointwise);
  return out;
}

/// c(n)|W| + sqrt((n-1)/n)|E| <= S/n.
inline PinchVerdict pinch_verdict_norm(double norm_w, double norm_e, double s, int n) {
  require_min_dim(n, 5, "pinch_verdict_norm");
  return make_verdict(norm_cubic_constant(n) * norm_w + std::sqrt((n - 1.0) / n) * norm_e, s / n, VerdictKind::norm);
}

inline PinchVerdict pinch_verdict_norm(const AlgebraicOperator2Forms& w, const SymmetricForm2& e, double s) {
  require_weyl(w, "pinch_verdict_norm");
  return pinch_verdict_norm(norm(w), norm(e), s, w.n());
}

/// 6 omega <= S.
inline PinchVerdict pinch_verdict_dim4(double omega, double s) {
  if (!std::isfinite(omega) || !std::isfinite(s)) throw InputError("pinch_verdict_dim4: inputs must be finite");
  return make_verdict(6.0 * omega, s, VerdictKind::dim4_selfdual);
}

/// n >= 6: a1 ||W|| + a2 ||E|| vs s_n lambda; n = 5: 8/sqrt10 ||W|| + 2/sqrt5 ||E|| vs (3/16) lambda.
/// strict = true means the gap statement forces local conformal flatness.
inline PinchVerdict gap_verdict_integral(double norm_w, double norm_e, double lambda, int n) {
  require_min_dim(n, 5, "gap_verdict_integral");
  if (!(lambda > 0)) throw InputError("gap_verdict_integral: Yamabe invariant must be positive");
  if (norm_w < 0 || norm_e < 0) throw InputError("gap_verdict_integral: norms must be non-negative");
  const ConstantsTable t = constants(n);
  if (t.case5) {
    return make_verdict(t.case5_w * norm_w + t.case5_e * norm_e, t.case5_threshold * lambda, VerdictKind::case5);
  }
  return make_verdict(*t.a1 * norm_w + *t.a2 * norm_e, t.s_n * lambda, VerdictKind::integral);
}

struct IntegralRigidityTerms {
  double c1;                // 2 c(n)
  double c2;                // 2 sqrt((n-1)/n)
  double lhs;               // c1 ||W|| + c2 ||E||
  double rhs;               // d lambda
  bool hypothesis_holds;
  double gradient_factor;   // 1 - d/s_n
  double scalar_factor;     // d - 2/n
  double consistent_d;      // (c1 ||W|| + c2 ||E||) / lambda
};

/// d(n) is a free parameter of the statement.
inline IntegralRigidityTerms integral_rigidity_terms(double norm_w, double norm_e, double lambda, int n, double d) {
  require_min_dim(n, 5, "integral_rigidity_terms");
  if (!(lambda > 0)) throw InputError("integral_rigidity_terms: Yamabe invariant must be positive");
  const double c1 = 2.0 * norm_cubic_constant(n);
  const double c2 = 2.0 * std::sqrt((n - 1.0) / n);
  const double lhs = c1 * norm_w + c2 * norm_e;
  const double sn = (n - 2.0) / (4.0 * (n - 1.0));
  return {c1, c2, lhs, d * lambda, lhs <= d * lambda, 1.0 - d / sn, d - 2.0 / n, lhs / lambda};
}

}  // namespace curvlab
