#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "curvlab/chart.hpp"
#include "curvlab/constants.hpp"
#include "curvlab/dim4.hpp"
#include "curvlab/random.hpp"
#include "curvlab/wcubic.hpp"

namespace curvlab {

/// Worst residual (or most negative margin) observed for one assertion over all samples.
struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  long samples = 0;
  long violations = 0;
};

struct SuiteResult {
  std::vector<Check> checks;
  std::map<std::string, double> values;  // reported, not asserted

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (!c.pass) out.push_back(c.name);
    return out;
  }
  void append(const SuiteResult& o) {
    checks.insert(checks.end(), o.checks.begin(), o.checks.end());
    values.insert(o.values.begin(), o.values.end());
  }
};

/// Named tolerances with defaults; unknown names are rejected.
class Tolerances {
 public:
  Tolerances()
      : v_{{"algebraic", 1e-10},   {"sharp", 1e-9},          {"normal_form", 1e-8},  {"equality", 1e-12},
           {"oracle_below", 1e-4}, {"oracle_above", 1e-9},   {"chart_zero", 1e-12},  {"halving_low", 3.5},
           {"halving_high", 4.5},  {"halving_floor", 1e-9},  {"kato", 1e-10},        {"asymptotic", 0.02}} {}

  double operator()(const std::string& name) const {
    auto it = v_.find(name);
    if (it == v_.end()) throw InputError("unknown tolerance '" + name + "'");
    return it->second;
  }
  void set(const std::string& name, double value) {
    if (v_.find(name) == v_.end()) throw InputError("unknown tolerance '" + name + "'");
    if (!(value >= 0) || !std::isfinite(value)) throw InputError("tolerance '" + name + "' must be finite and >= 0");
    v_[name] = value;
  }
  const std::map<std::string, double>& all() const { return v_; }

 private:
  std::map<std::string, double> v_;
};

namespace detail {

/// Residuals must stay <= tol.
class Tracker {
 public:
  Tracker(std::string name, double tol) : c_{std::move(name), 0.0, tol, true, 0, 0} {}
  void add(double residual) {
    ++c_.samples;
    if (!std::isfinite(residual) || residual > c_.tolerance) ++c_.violations;
    if (!std::isfinite(residual) || residual > c_.value) c_.value = residual;
  }
  Check finish() {
    c_.pass = c_.violations == 0;
    return c_;
  }

 private:
  Check c_;
};

inline Check single(const std::string& name, double residual, double tol) {
  Tracker t(name, tol);
  t.add(residual);
  return t.finish();
}

inline Check flag(const std::string& name, bool ok) {
  Check c{name, ok ? 0.0 : 1.0, 0.0, ok, 1, ok ? 0 : 1};
  return c;
}

inline std::string tag(int n, const char* what) { return "n" + std::to_string(n) + "." + what; }

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return seed * 0x9E3779B97F4A7C15ULL + stream;
}

}  // namespace detail

/// Algebraic identity suite over random tensors; one Check per identity and dimension.
inline SuiteResult identities_suite(const std::vector<int>& ns, long trials, std::uint64_t seed, const Tolerances& tol) {
  SuiteResult out;
  const double t_alg = tol("algebraic");
  const double t_sharp = tol("sharp");
  for (int n : ns) {
    require_min_dim(n, 4, "identities_suite");
    Sampler sm(detail::stream_seed(seed, static_cast<std::uint64_t>(n)));
    const SymmetricForm2 g = SymmetricForm2::identity(n);
    detail::Tracker selfadj(detail::tag(n, "selfadjoint"), t_alg), pyth(detail::tag(n, "pythagoras"), t_alg),
        rcs(detail::tag(n, "rc_w2_plus_wsharp"), t_alg), trisym(detail::tag(n, "tri_symmetry"), t_alg),
        pw1(detail::tag(n, "productW_orthogonal"), t_alg), pw2(detail::tag(n, "productW_square"), t_alg),
        pw3(detail::tag(n, "productW_sharp"), t_alg), cp(detail::tag(n, "circ_prime_norm"), t_alg),
        l1(detail::tag(n, "bianchi_map_ricci"), t_alg), l2(detail::tag(n, "bianchi_map_scalar"), t_alg),
        l3(detail::tag(n, "bianchi_map_weyl"), t_alg), un(detail::tag(n, "u_norm"), t_alg),
        uc(detail::tag(n, "u_contracted"), t_alg), sc(detail::tag(n, "sharp_vs_square"), t_sharp),
        pure(detail::tag(n, "pure_cubic_identity"), t_alg);
    for (long t = 0; t < trials; ++t) {
      const CurvatureTensor r = sm.curvature(n);
      const CurvatureDecomposition dec = decompose(r);
      const AlgebraicOperator2Forms& w = dec.weyl.op();
      const SymmetricForm2 k = sm.symmetric_form(n);
      selfadj.add(relative_gap(inner(kulkarni_nomizu(g, k), r), inner(k, ricci_contraction(r.op()))));
      pyth.add(relative_gap(norm_sq(r), norm_sq(dec.weyl) + norm_sq(dec.e_part) + norm_sq(dec.s_part)));

      const AlgebraicOperator2Forms w2 = square(w);
      const AlgebraicOperator2Forms ws = sharp(w);
      const double wsq = norm_sq(w);
      const double cubic_scale = std::max(1.0, wsq * std::sqrt(wsq));
      rcs.add(norm(ricci_contraction(w2 + ws)) / cubic_scale);

      const CurvatureTensor r2 = sm.curvature(n);
      const CurvatureTensor r3 = sm.curvature(n);
      const double t0 = tri(r.op(), r2.op(), r3.op());
      const double perms[5] = {tri(r.op(), r3.op(), r2.op()), tri(r2.op(), r.op(), r3.op()),
                               tri(r2.op(), r3.op(), r.op()), tri(r3.op(), r.op(), r2.op()),
                               tri(r3.op(), r2.op(), r.op())};
      double worst = 0.0;
      for (double p : perms) worst = std::max(worst, relative_gap(t0, p));
      trisym.add(worst);

      Eigen::VectorXd a(n);
      for (int i = 0; i < n; ++i) a(i) = sm.uniform();
      const CurvatureTensor ag = kulkarni_nomizu(SymmetricForm2::diagonal(a), g);
      const double lhs2 = inner(w2, ag.op());
      double full = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) full += a(i) * w(i, j, p, q) * w(i, j, p, q);
      const double pw_scale = std::max(1.0, a.cwiseAbs().maxCoeff() * wsq);
      pw1.add(std::abs(inner(ag.op(), w2 + ws)) / pw_scale);
      pw2.add(std::abs(lhs2 - 0.5 * full) / pw_scale);
      pw3.add(std::abs(lhs2 + inner(w, sharp_product(ag.op(), w))) / pw_scale);

      const TwoFormOneForm atf = sm.two_form_one_form(n).trace_free();
      cp.add(relative_gap(norm_sq(circ_prime(atf)), (n - 3.0) * norm_sq(atf)));

      const CovDerivCurvature d = sm.curvature_derivative(n);
      const DerivativePack pk = derivative_pack(d);
      const double dscale = std::max(1.0, norm(d));
      l1.add(norm(second_bianchi(kn_with_metric(pk.nabla_rc)) - circ_prime(pk.p)) / dscale);
      l2.add(norm(second_bianchi(scalar_with_metric(pk.nabla_s)) + circ_prime(pk.q)) / dscale);
      l3.add(norm(pk.b_w - (1.0 / (n - 3)) * circ_prime(pk.delta_w)) / dscale);

      const UContraction u = u_contraction(dec.weyl);
      un.add(relative_gap(u.u_norm_sq, 32.0 * (n - 1) * wsq));
      uc.add(relative_gap(u.contracted, -8.0 * inner(w, w2 + ws)));
      if (n <= 5) sc.add(std::abs(inner(w, ws) - 2.0 * inner(w, w2)) / cubic_scale);

      const PureCubics pc = pure_cubics(sm.pure_matrix(n));
      pure.add(relative_gap(pc.sharp_cubic, (8.0 - n) / 2.0 * pc.square_cubic + pc.three_plane_sum));
    }
    for (auto* tr : {&selfadj, &pyth, &rcs, &trisym, &pw1, &pw2, &pw3, &cp, &l1, &l2, &l3, &un, &uc})
      out.checks.push_back(tr->finish());
    if (n <= 5) out.checks.push_back(sc.finish());
    out.checks.push_back(pure.finish());
  }
  return out;
}

/// Identities evaluated on one supplied operator; structural failures are reported, not thrown.
inline SuiteResult identities_on_operator(const AlgebraicOperator2Forms& op, const Tolerances& tol) {
  SuiteResult out;
  const double t_alg = tol("algebraic");
  const int n = op.n();
  const double scale = std::max(1.0, op.matrix().cwiseAbs().maxCoeff());
  out.checks.push_back(detail::single("self_adjoint", op.asymmetry() / scale, t_alg));
  if (!out.checks.back().pass) return out;
  const AlgebraicOperator2Forms sym = AlgebraicOperator2Forms::self_adjoint(n, op.matrix(), 1.0);
  out.checks.push_back(detail::single("first_bianchi", bianchi_residual(sym), t_alg));
  if (!out.checks.back().pass || n < 4) return out;
  const CurvatureTensor r = CurvatureTensor::assume_valid(sym);
  const CurvatureDecomposition dec = decompose(r);
  const AlgebraicOperator2Forms& w = dec.weyl.op();
  const AlgebraicOperator2Forms w2 = square(w);
  const AlgebraicOperator2Forms ws = sharp(w);
  const double wsq = norm_sq(w);
  out.checks.push_back(detail::single(
      "pythagoras", relative_gap(norm_sq(r), norm_sq(dec.weyl) + norm_sq(dec.e_part) + norm_sq(dec.s_part)), t_alg));
  out.checks.push_back(
      detail::single("rc_w2_plus_wsharp", norm(ricci_contraction(w2 + ws)) / std::max(1.0, wsq * std::sqrt(wsq)), t_alg));
  const UContraction u = u_contraction(dec.weyl);
  out.checks.push_back(detail::single("u_norm", relative_gap(u.u_norm_sq, 32.0 * (n - 1) * wsq), t_alg));
  out.checks.push_back(detail::single("u_contracted", relative_gap(u.contracted, -8.0 * inner(w, w2 + ws)), t_alg));
  out.values["weyl_norm_sq"] = wsq;
  out.values["scalar"] = dec.S;
  out.values["e_norm_sq"] = norm_sq(dec.E);
  out.values["w_dot_w2"] = inner(w, w2);
  out.values["w_dot_wsharp"] = inner(w, ws);
  return out;
}

/// Homogeneous model: package plus the residuals that vanish on locally symmetric spaces.
inline SuiteResult model_suite(const ModelSpec& spec, const Tolerances& tol) {
  SuiteResult out;
  const CurvaturePackage pkg = model_curvature(spec);
  const SymmetricSpaceResiduals r = symmetric_space_identity_report(pkg);
  const double rn = norm(pkg.R);
  const double scale = std::max(1.0, rn * rn * rn);
  out.checks.push_back(detail::single("r1", std::abs(r.r1) / scale, tol("algebraic")));
  out.checks.push_back(detail::single("r2", std::abs(r.r2) / scale, tol("algebraic")));
  out.values["r1"] = r.r1;
  out.values["r2"] = r.r2;
  out.values["scalar"] = pkg.S;
  out.values["weyl_norm_sq"] = r.weyl_norm_sq;
  out.values["e_norm_sq"] = r.e_norm_sq;
  out.values["n"] = pkg.R.n();
  return out;
}

/// Random four-dimensional checks: determinant identities, sqrt6 estimate, normal form, E o g.
inline SuiteResult dim4_suite(long trials, long bound_samples, std::uint64_t seed, const Tolerances& tol) {
  SuiteResult out;
  Sampler sm(detail::stream_seed(seed, 4));
  const double t_alg = tol("algebraic");
  detail::Tracker dot("det_cube_dot", t_alg), shp("det_cube_sharp", t_alg), ecg("e_circ_g_zero", t_alg),
      nf("normal_form_residual", tol("normal_form")), bnd("sharp_det_bound", t_alg);
  for (long t = 0; t < trials; ++t) {
    const CurvatureTensor w = sm.weyl(4);
    const SelfDualSplit sd = split_self_dual(w);
    const DetIdentities di = det_identities(sd.Wplus);
    const double sc = std::max(1.0, std::pow(sd.Wplus.squaredNorm(), 1.5));
    dot.add(std::abs(di.cube_dot - 3.0 * di.det) / sc);
    shp.add(std::abs(di.cube_sharp - 6.0 * di.det) / sc);
    const SymmetricForm2 e = sm.trace_free_form(4);
    ecg.add(std::abs(e_circ_g_orthogonality(w, e).value) / std::max(1.0, norm(e) * norm_sq(w)));
    nf.add(berger_normal_form(w).residual / std::max(1.0, w.matrix().cwiseAbs().maxCoeff()));
  }
  for (long t = 0; t < bound_samples; ++t) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) m(i, j) = m(j, i) = sm.uniform();
    m -= (m.trace() / 3.0) * Mat3::Identity();
    const SharpDetBound b = sharp_det_bound(m);
    bnd.add((b.lhs - b.rhs) / std::max(1.0, b.rhs));
  }
  for (auto* tr : {&dot, &shp, &ecg, &nf, &bnd}) out.checks.push_back(tr->finish());
  const SharpDetBound eq = sharp_det_bound(Vec3(2.0, -1.0, -1.0).asDiagonal().toDenseMatrix());
  out.checks.push_back(detail::single("sharp_det_equality", std::abs(eq.lhs - eq.rhs), tol("equality")));

  const CurvaturePackage s2s2 = model_curvature(parse_model_spec("product:sphere:2:1,sphere:2:1"));
  const SelfDualSplit sd = split_self_dual(decompose(s2s2.R).weyl);
  const double omega = sd.Wplus.selfadjointView<Eigen::Lower>().eigenvalues().maxCoeff();
  const PinchVerdict v = pinch_verdict_dim4(omega, s2s2.S);
  out.values["s2xs2_omega"] = omega;
  out.values["s2xs2_scalar"] = s2s2.S;
  out.checks.push_back(detail::single("s2xs2_omega", std::abs(omega - 2.0 / 3.0), tol("equality")));
  out.checks.push_back(detail::single("s2xs2_borderline", std::abs(6.0 * omega - s2s2.S), tol("equality")));
  out.checks.push_back(detail::flag("s2xs2_verdict_nonstrict", v.satisfied && !v.strict));
  return out;
}

/// Four-dimensional report for a supplied Weyl tensor.
inline SuiteResult dim4_on_operator(const AlgebraicOperator2Forms& op, const Tolerances& tol) {
  SuiteResult out = identities_on_operator(op, tol);
  if (!out.passed()) return out;
  if (op.n() != 4) throw DimensionError("dim4: input must have n = 4");
  const CurvatureTensor w = CurvatureTensor::assume_valid(AlgebraicOperator2Forms::self_adjoint(4, op.matrix(), 1.0));
  const double wn = std::max(1.0, norm(w));
  out.checks.push_back(detail::single("trace_free", trace_residual(w.op()) / wn, tol("algebraic")));
  if (!out.passed()) return out;
  const SelfDualSplit sd = split_self_dual(w);
  const BergerNormalForm bn = berger_normal_form(w);
  const DetIdentities di = det_identities(sd.Wplus);
  const double sc = std::max(1.0, std::pow(sd.Wplus.squaredNorm(), 1.5));
  out.checks.push_back(detail::single("normal_form_residual", bn.residual / wn, tol("normal_form")));
  out.checks.push_back(detail::single("det_cube_dot", std::abs(di.cube_dot - 3.0 * di.det) / sc, tol("algebraic")));
  out.checks.push_back(detail::single("det_cube_sharp", std::abs(di.cube_sharp - 6.0 * di.det) / sc, tol("algebraic")));
  const SharpDetBound b = sharp_det_bound(sd.Wplus);
  out.checks.push_back(detail::single("sharp_det_bound", (b.lhs - b.rhs) / std::max(1.0, b.rhs), tol("algebraic")));
  for (int i = 0; i < 3; ++i) {
    out.values["a" + std::to_string(i + 1)] = bn.a(i);
    out.values["b" + std::to_string(i + 1)] = bn.b(i);
  }
  out.values["det_wplus"] = di.det;
  out.values["omega_plus"] = sd.Wplus.selfadjointView<Eigen::Lower>().eigenvalues().maxCoeff();
  return out;
}

/// Random audit of the pointwise cubic bounds plus the eigenvalue estimate equality family.
inline SuiteResult bounds_suite(const std::vector<int>& ns, long samples, std::uint64_t seed, const Tolerances& tol) {
  SuiteResult out;
  for (int n : ns) {
    require_min_dim(n, 5, "bounds_suite");
    Sampler sm(detail::stream_seed(seed, 100 + static_cast<std::uint64_t>(n)));
    detail::Tracker berger(detail::tag(n, "berger_component"), 0.0), eig(detail::tag(n, "cubic_eig_bound"), 0.0),
        nrm(detail::tag(n, "cubic_norm_bound"), 0.0), five(detail::tag(n, "five_identity"), tol("algebraic")),
        sgn(detail::tag(n, "cubic_signed_bound"), 0.0);
    for (long t = 0; t < samples; ++t) {
      const CurvatureTensor w = sm.weyl(n);
      const BergerComponentBound bc = berger_component_bound(w);
      berger.add(bc.holds ? 0.0 : bc.max_component - bc.bound);
      const CubicBoundEval ce = cubic_bound_eval(w);
      eig.add(ce.eig_holds ? 0.0 : ce.lhs - ce.eig_bound);
      nrm.add(ce.norm_holds ? 0.0 : ce.lhs - ce.norm_bound);
      if (ce.has_five) {
        five.add(ce.five_residual);
        sgn.add(ce.eig_signed_holds ? 0.0 : ce.lhs - ce.eig_bound_signed);
      }
    }
    out.checks.push_back(berger.finish());
    out.checks.push_back(eig.finish());
    out.checks.push_back(nrm.finish());
    if (n == 5) {
      out.checks.push_back(five.finish());
      out.checks.push_back(sgn.finish());
    }
  }
  detail::Tracker eq("eigen_estimate_equality", tol("algebraic")), ineq("eigen_estimate_bound", 0.0);
  Sampler sm(detail::stream_seed(seed, 99));
  for (int m = 2; m <= 12; ++m) {
    Eigen::VectorXd d = Eigen::VectorXd::Constant(m, -1.0);
    d(0) = m - 1.0;
    const EigenEstimate e = eigen_estimate(SymmetricForm2::diagonal(d));
    eq.add(relative_gap(e.max_eig_sq, e.bound));
    for (int t = 0; t < 50; ++t) {
      const EigenEstimate r = eigen_estimate(sm.trace_free_form(m));
      ineq.add(std::max(0.0, r.max_eig_sq - r.bound - 1e-12 * r.bound));
    }
  }
  out.checks.push_back(eq.finish());
  out.checks.push_back(ineq.finish());
  return out;
}

/// Oracle maximum vs closed form for the constrained cubic ratio.
inline SuiteResult wcubic_suite(const std::vector<int>& ns, const std::vector<double>& ss, std::uint64_t seed,
                                const Tolerances& tol) {
  SuiteResult out;
  for (int n : ns)
    for (double s : ss) {
      const double closed = wcubic_closed_form(s, n);
      const WcubicOracleResult o = wcubic_oracle(s, n, 100000, seed);
      const std::string name = "wcubic.n" + std::to_string(n) + ".s" + detail::fmt_num(s);
      const double below = closed - o.best;
      const double above = o.best - closed;
      Check c{name, std::max(below / tol("oracle_below"), above / std::max(tol("oracle_above"), 1e-300)), 1.0,
              below <= tol("oracle_below") && above <= tol("oracle_above"), o.evaluations, 0};
      c.violations = c.pass ? 0 : 1;
      out.checks.push_back(c);
      out.values[name + ".closed"] = closed;
      out.values[name + ".oracle"] = o.best;
    }
  return out;
}

/// Constants table with the stated exact values and large-n ratios.
inline SuiteResult constants_suite(int n, const Tolerances& tol) {
  SuiteResult out;
  const ConstantsTable t = constants(n);
  out.values["n"] = n;
  out.values["s_n"] = t.s_n;
  out.values["discriminant"] = t.discriminant;
  if (n >= 5) out.values["c_n"] = t.c_n;
  if (t.alpha) out.values["alpha"] = *t.alpha;
  if (t.a1) out.values["a1"] = *t.a1;
  if (t.a2) out.values["a2"] = *t.a2;
  if (t.alpha_dim4) out.values["alpha_dim4"] = *t.alpha_dim4;
  if (t.case5) {
    out.values["case5_w"] = t.case5_w;
    out.values["case5_e"] = t.case5_e;
    out.values["case5_threshold"] = t.case5_threshold;
  }
  out.checks.push_back(detail::single("s_n", std::abs(t.s_n - (n - 2.0) / (4.0 * (n - 1.0))), tol("algebraic")));
  if (n >= 6) {
    out.values["quadratic_residual"] = t.quadratic_residual;
    out.checks.push_back(detail::single("quadratic_residual", t.quadratic_residual, tol("algebraic")));
  }
  if (n == 4) out.checks.push_back(detail::single("s_4", std::abs(t.s_n - 1.0 / 6.0), tol("algebraic")));
  if (n == 5) out.checks.push_back(detail::single("c_5", std::abs(t.c_n - 8.0 / std::sqrt(10.0)), tol("algebraic")));
  if (n == 6) {
    out.checks.push_back(detail::single("alpha_6", std::abs(*t.alpha - 0.6), tol("algebraic")));
    out.checks.push_back(detail::single("a1_6", std::abs(*t.a1 - 6.0), tol("algebraic")));
  }
  return out;
}

inline SuiteResult asymptotics_suite(int n, const Tolerances& tol) {
  SuiteResult out;
  const ConstantsTable t = constants(n);
  const double ra = *t.alpha / n / 0.25;
  const double r1 = *t.a1 / n / 1.25;
  const double r2 = *t.a2 / n / 0.25;
  out.values["alpha_over_n"] = *t.alpha / n;
  out.values["a1_over_n"] = *t.a1 / n;
  out.values["a2_over_n"] = *t.a2 / n;
  out.checks.push_back(detail::single("alpha_over_n", std::abs(ra - 1.0), tol("asymptotic")));
  out.checks.push_back(detail::single("a1_over_n", std::abs(r1 - 1.0), tol("asymptotic")));
  out.checks.push_back(detail::single("a2_over_n", std::abs(r2 - 1.0), tol("asymptotic")));
  return out;
}

/// Halving h divides an O(h^2) residual by about 4; pairs already below the floor pass.
inline bool halving_ok(double coarse, double fine, const Tolerances& tol) {
  const double c = std::abs(coarse), f = std::abs(fine);
  if (c <= tol("halving_floor") && f <= tol("halving_floor")) return true;
  if (!(f > 0)) return false;
  const double r = c / f;
  return r >= tol("halving_low") && r <= tol("halving_high");
}

/// Chart residuals at one step size, with the Kato inequalities asserted.
inline SuiteResult chart_suite(const ChartMetric& m, const GridSpec& grid, const Tolerances& tol) {
  SuiteResult out;
  const ChartCurvatureField f = curvature_field(m, grid, {true, true});
  const ChartResiduals r = identity_residual_report(f);
  for (const auto& [k, v] : r.values) out.values[k] = v;
  if (m.reference_scalar) out.values["scalar_error"] = std::abs(f.S - *m.reference_scalar);
  out.checks.push_back(detail::single("kato_classical", std::max(0.0, -r.values.at("kato_classical_margin")), tol("kato")));
  if (r.improved_kato_holds)
    out.checks.push_back(detail::single("kato_improved", std::max(0.0, -r.values.at("kato_improved_margin")), tol("kato")));
  bool finite = true;
  for (const auto& [k, v] : r.values) finite = finite && std::isfinite(v);
  out.checks.push_back(detail::flag("finite", finite));
  return out;
}

}  // namespace curvlab
