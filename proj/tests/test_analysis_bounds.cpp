#include <cmath>

#include <gtest/gtest.h>

#include "curvlab/constants.hpp"
#include "curvlab/dim4.hpp"
#include "curvlab/model_spaces.hpp"
#include "curvlab/random.hpp"
#include "curvlab/wcubic.hpp"

using namespace curvlab;

TEST(SpectralExtremes, ZeroAndEqualityFamily) {
  const SpectralExtremes z = spectral_extremes(CurvatureTensor::zero(5).op(), SymmetricForm2(5));
  EXPECT_EQ(z.omega_mag + z.omega_max, 0.0);
  EXPECT_EQ(z.ell, 0.0);
  for (int n = 4; n <= 8; ++n) {
    const double t = 0.4;
    std::vector<double> d(static_cast<std::size_t>(n), t);
    d.back() = -(n - 1) * t;
    const SymmetricForm2 e = SymmetricForm2::diagonal(d);
    const SpectralExtremes x = spectral_extremes(CurvatureTensor::zero(n).op(), e);
    EXPECT_NEAR(x.ell, (n - 1) * t, 1e-14);
    EXPECT_NEAR(x.ell, std::sqrt((n - 1.0) / n) * norm(e), 1e-13);
  }
}

TEST(SpectralExtremes, ProductOfSpheres) {
  const CurvaturePackage p = model_curvature(parse_model_spec("product:sphere:2:1,sphere:2:1"));
  const SpectralExtremes x = spectral_extremes(decompose(p.R).weyl.op(), p.Rc.trace_free());
  EXPECT_NEAR(x.omega_max, 2.0 / 3, 1e-14);
  EXPECT_NEAR(x.omega_mag, 2.0 / 3, 1e-14);
}

TEST(BergerComponentBound, Examples) {
  const BergerComponentBound z = berger_component_bound(CurvatureTensor::zero(4));
  EXPECT_EQ(z.max_component + z.bound, 0.0);
  const CurvaturePackage p = model_curvature(parse_model_spec("product:sphere:2:1,sphere:2:1"));
  const BergerComponentBound b = berger_component_bound(decompose(p.R).weyl);
  EXPECT_NEAR(b.bound, 8.0 / 9, 1e-14);
  EXPECT_TRUE(b.holds);
  Sampler sm(51);
  for (int n = 4; n <= 8; ++n)
    for (int t = 0; t < 200; ++t) EXPECT_TRUE(berger_component_bound(sm.weyl(n)).holds);
  EXPECT_THROW(berger_component_bound(sm.curvature(5)), InvariantError);
}

TEST(CubicBound, FiveDimensional) {
  const CubicBoundEval z = cubic_bound_eval(CurvatureTensor::zero(5));
  EXPECT_EQ(z.lhs + z.eig_bound + z.norm_bound, 0.0);
  Sampler sm(52);
  for (int t = 0; t < 200; ++t) {
    const CurvatureTensor w = sm.weyl(5);
    const CubicBoundEval c = cubic_bound_eval(w);
    EXPECT_LE(relative_gap(c.lhs, 3.0 * inner(w.op(), square(w.op()))), kAlgebraicTol);
    EXPECT_LE(c.lhs, 8.0 / std::sqrt(10.0) * std::pow(norm_sq(w), 1.5) * (1 + 1e-12));
    EXPECT_TRUE(c.eig_holds && c.norm_holds && c.eig_signed_holds);
  }
  EXPECT_THROW(cubic_bound_eval(sm.weyl(4)), DimensionError);
}

TEST(CubicBound, HigherDimensions) {
  Sampler sm(53);
  for (int n = 6; n <= 8; ++n)
    for (int t = 0; t < 100; ++t) {
      const CubicBoundEval c = cubic_bound_eval(sm.weyl(n));
      EXPECT_TRUE(c.eig_holds);
      EXPECT_TRUE(c.norm_holds);
      EXPECT_FALSE(c.has_five);
    }
}

TEST(Wcubic, ClosedForm) {
  EXPECT_DOUBLE_EQ(wcubic_closed_form(1.0, 3), 0.5);
  EXPECT_DOUBLE_EQ(wcubic_closed_form(1.0, 2), 0.0);
  EXPECT_NEAR(wcubic_closed_form(2.0, 10), 16.0 / 9, 1e-15);
  EXPECT_THROW(wcubic_closed_form(0.0, 4), InputError);
  EXPECT_THROW(wcubic_closed_form(1.0, 1), InputError);
  // x = (1, -1/2, -1/2): sum x^3 / sum x^2 = (3/4) / (3/2).
  EXPECT_DOUBLE_EQ((1.0 - 0.125 - 0.125) / (1.0 + 0.25 + 0.25), 0.5);
}

TEST(Wcubic, OracleExamples) {
  EXPECT_NEAR(wcubic_oracle(1.0, 3).best, 0.5, 1e-4);
  EXPECT_NEAR(wcubic_oracle(1.0, 5).best, 0.75, 1e-4);
  EXPECT_NEAR(wcubic_oracle(1.0, 2).best, 0.0, 1e-6);
}

TEST(Wcubic, OracleNeverExceedsClosedForm) {
  for (int n = 2; n <= 12; ++n)
    for (double s : {0.25, 0.5, 1.0, 2.0, 3.0}) {
      const WcubicOracleResult o = wcubic_oracle(s, n);
      const double c = wcubic_closed_form(s, n);
      EXPECT_LE(o.best, c + 1e-9) << n << " " << s;
      EXPECT_GE(o.best, c - 1e-4) << n << " " << s;
      EXPECT_GE(o.ascent_best, c - 1e-4) << n << " " << s;
      EXPECT_NEAR(o.candidate_best, c, 1e-12) << n << " " << s;
    }
  EXPECT_THROW(wcubic_oracle(1.0, 13), InputError);
  EXPECT_THROW(wcubic_oracle(-1.0, 5), InputError);
}

TEST(Wcubic, BudgetReported) {
  const WcubicOracleResult o = wcubic_oracle(1.0, 8, 50);
  EXPECT_TRUE(o.budget_exhausted);
  EXPECT_LE(o.best, wcubic_closed_form(1.0, 8) + 1e-9);
}

TEST(Constants, DimensionSix) {
  const ConstantsTable t = constants(6);
  ASSERT_TRUE(t.alpha && t.a1 && t.a2);
  EXPECT_NEAR(*t.alpha, 0.6, 1e-10);
  EXPECT_NEAR(*t.a1, 6.0, 1e-9);
  EXPECT_NEAR(*t.a2, 1.2 * std::sqrt(5.0 / 6.0), 1e-9);
  EXPECT_LE(t.quadratic_residual, 1e-10);
  EXPECT_NEAR(25 * 0.36 - 30 * 0.6 + 9, 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(t.c_n, 5.0);
}

TEST(Constants, RootsAndSobolevConstant) {
  EXPECT_NEAR(constants(4).s_n, 1.0 / 6, 1e-16);
  for (int n = 4; n <= 40; ++n) EXPECT_NEAR(constants(n).s_n, (n - 2.0) / (4.0 * (n - 1)), 1e-16);
  for (int n = 6; n <= 60; ++n) {
    const ConstantsTable t = constants(n);
    ASSERT_TRUE(t.alpha.has_value());
    EXPECT_LE(t.quadratic_residual, 1e-10);
    EXPECT_GT(*t.alpha, (n - 3.0) / (2.0 * (n - 1)));
    EXPECT_GE(t.discriminant, 0.0);
  }
}

TEST(Constants, SpecialDimensions) {
  const ConstantsTable t5 = constants(5);
  EXPECT_TRUE(t5.case5);
  EXPECT_DOUBLE_EQ(*t5.alpha, 0.5);
  EXPECT_NEAR(t5.c_n, 8.0 / std::sqrt(10.0), 1e-15);
  EXPECT_NEAR(t5.case5_w, 8.0 / std::sqrt(10.0), 1e-15);
  EXPECT_NEAR(t5.case5_e, 2.0 / std::sqrt(5.0), 1e-15);
  EXPECT_DOUBLE_EQ(t5.case5_threshold, 3.0 / 16);
  EXPECT_LT(t5.discriminant, 0.0);
  const ConstantsTable t4 = constants(4);
  EXPECT_FALSE(t4.alpha.has_value());
  EXPECT_NEAR(*t4.alpha_dim4, 1.0 / 3, 1e-15);
  EXPECT_THROW(constants(3), DimensionError);
}

TEST(Constants, LargeDimension) {
  const int n = 10000;
  const ConstantsTable t = constants(n);
  EXPECT_GE(*t.a1 / n, 1.225);
  EXPECT_LE(*t.a1 / n, 1.275);
  EXPECT_NEAR(*t.alpha / n, 0.25, 0.005);
  EXPECT_NEAR(*t.a2 / n, 0.25, 0.005);
}

TEST(PinchVerdict, Pointwise) {
  const PointwiseVerdicts z = pinch_verdict_pointwise(CurvatureTensor::zero(6).op(), SymmetricForm2(6), 3.0);
  EXPECT_TRUE(z.magnitude.satisfied);
  const CurvaturePackage sph = model_curvature(parse_model_spec("sphere:6:1"));
  const PointwiseVerdicts s = pinch_verdict_pointwise(decompose(sph.R).weyl.op(), sph.Rc.trace_free(), sph.S);
  EXPECT_NEAR(s.magnitude.condition_value, 0.0, 1e-14);
  EXPECT_NEAR(s.magnitude.threshold, 5.0, 1e-14);
  EXPECT_TRUE(s.magnitude.satisfied);

  const CurvaturePackage p = model_curvature(parse_model_spec("product:sphere:3:1,sphere:2:1"));
  const PointwiseVerdicts v = pinch_verdict_pointwise(decompose(p.R).weyl.op(), p.Rc.trace_free(), p.S);
  ASSERT_TRUE(v.signed_max.has_value());
  EXPECT_LE(v.signed_max->condition_value, v.magnitude.condition_value + 1e-15);
  RecordProperty("s3xs2_condition", std::to_string(v.magnitude.condition_value));
  EXPECT_EQ(v.magnitude.satisfied, v.magnitude.condition_value <= v.magnitude.threshold);
  EXPECT_THROW(pinch_verdict_pointwise(CurvatureTensor::zero(4).op(), SymmetricForm2(4), 1.0), DimensionError);
}

TEST(PinchVerdict, Norm) {
  EXPECT_TRUE(pinch_verdict_norm(0.0, 0.0, 1.0, 7).satisfied);
  Sampler sm(54);
  const CurvatureTensor w = sm.weyl(5);
  const double s = 5.0;
  const CurvatureTensor ws = (1.0 / (8.0 / std::sqrt(10.0) * norm(w))) * w;  // c(5)|W| = S/n = 1
  const PinchVerdict b = pinch_verdict_norm(ws.op(), SymmetricForm2(5), s);
  EXPECT_NEAR(b.condition_value, b.threshold, 1e-14);
  EXPECT_FALSE(b.strict);
  std::vector<double> d(6, 1.0);
  d.back() = -5.0;
  const PinchVerdict v = pinch_verdict_norm(CurvatureTensor::zero(6).op(), SymmetricForm2::diagonal(d), 6.0);
  EXPECT_FALSE(v.satisfied);
  EXPECT_THROW(pinch_verdict_norm(0.0, 0.0, 1.0, 4), DimensionError);
}

TEST(PinchVerdict, DimensionFour) {
  const PinchVerdict b = pinch_verdict_dim4(2.0 / 3, 4.0);
  EXPECT_NEAR(b.condition_value, 4.0, 1e-15);
  EXPECT_TRUE(b.satisfied);
  EXPECT_TRUE(pinch_verdict_dim4(0.0, 0.0).satisfied);
  EXPECT_FALSE(pinch_verdict_dim4(1.0, 5.0).satisfied);
  EXPECT_THROW(pinch_verdict_dim4(NAN, 1.0), InputError);
}

TEST(GapVerdict, Integral) {
  const PinchVerdict z = gap_verdict_integral(0.0, 0.0, 1.0, 7);
  EXPECT_TRUE(z.satisfied && z.strict);
  const ConstantsTable t6 = constants(6);
  const PinchVerdict b = gap_verdict_integral(t6.s_n / *t6.a1, 0.0, 1.0, 6);
  EXPECT_NEAR(b.condition_value, b.threshold, 1e-15);
  EXPECT_EQ(b.which, VerdictKind::integral);
  const PinchVerdict f = gap_verdict_integral(0.1, 0.1, 16.0, 5);
  EXPECT_NEAR(f.condition_value, 0.8 / std::sqrt(10.0) + 0.2 / std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(f.threshold, 3.0, 1e-15);
  EXPECT_TRUE(f.strict);
  EXPECT_EQ(f.which, VerdictKind::case5);
  EXPECT_THROW(gap_verdict_integral(0.1, 0.1, 0.0, 6), InputError);
  EXPECT_THROW(gap_verdict_integral(-0.1, 0.1, 1.0, 6), InputError);
}

TEST(IntegralRigidity, ConsistentParameter) {
  const IntegralRigidityTerms t = integral_rigidity_terms(0.2, 0.1, 4.0, 6, 0.1);
  EXPECT_NEAR(t.c1, 10.0, 1e-15);
  EXPECT_NEAR(t.c2, 2.0 * std::sqrt(5.0 / 6), 1e-15);
  EXPECT_NEAR(t.consistent_d * 4.0, t.lhs, 1e-14);
  const IntegralRigidityTerms at = integral_rigidity_terms(0.2, 0.1, 4.0, 6, t.consistent_d);
  EXPECT_NEAR(at.lhs, at.rhs, 1e-14);
}

TEST(EigenEstimate, RandomAndEquality) {
  Sampler sm(55);
  for (int m = 2; m <= 10; ++m) {
    for (int t = 0; t < 1000; ++t) {
      const EigenEstimate e = eigen_estimate(sm.trace_free_form(m));
      EXPECT_LE(e.max_eig_sq, e.bound * (1 + 1e-12));
    }
    std::vector<double> d(static_cast<std::size_t>(m), 1.5);
    d.back() = -(m - 1) * 1.5;
    const EigenEstimate eq = eigen_estimate(SymmetricForm2::diagonal(d));
    EXPECT_LE(relative_gap(eq.max_eig_sq, eq.bound), 1e-14);
  }
  EXPECT_THROW(eigen_estimate(SymmetricForm2::identity(3)), InvariantError);
}
