/**
 * @file test_closedform.cpp
 * @brief Orbit polynomial, quartic factorization and wave profiles against residual,
 *        quadrature and level-set oracles.
 */
#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "rotwave/closedform.hpp"
#include "rotwave/elliptic.hpp"
#include "rotwave/equilibria.hpp"
#include "rotwave/errors.hpp"
#include "rotwave/orbits.hpp"

namespace rotwave {
namespace {

const WaveParams kRef = WaveParams::direct(Theta::half(), 0.0, 0.0, -1.0, 0.05);

struct RefLevels {
  double saddle = 0.0;
  double leftCenter = 0.0;
};

RefLevels ref_levels() {
  const auto fi = build_first_integral(kRef);
  RefLevels r;
  for (const auto& e : census(kRef).equilibria) {
    if (e.onSingularLine) continue;
    if (e.kind == EquilibriumKind::Saddle) r.saddle = fi.potential(e.location.phi);
    if (e.kind == EquilibriumKind::Center && e.location.phi < 0) r.leftCenter = fi.potential(e.location.phi);
  }
  return r;
}

double sn_level() {
  const auto l = ref_levels();
  return 0.5 * (l.saddle + l.leftCenter);
}

TEST(ClosedForm, OrbitPolynomialReproducesLevelSet) {
  const auto fi = build_first_integral(kRef);
  for (double h : {-0.02, 0.0, 0.013, 0.2}) {
    const auto P = orbit_polynomial(kRef, h);
    ASSERT_LE(P.coefficients.size(), 5u);
    for (int i = 0; i < 20; ++i) {
      const double phi = -1.2 + 2.4 * i / 19.0;
      const double P2 = poly::horner<double>(P.coefficients, phi);
      if (P2 < 0) continue;
      EXPECT_NEAR(eval_H(fi, {phi, std::sqrt(P2)}).h, h, 1e-12);
    }
  }
  // Leading coefficient is proportional to C3.
  auto w2 = kRef;
  w2.C3 = -2.0;
  EXPECT_NEAR(orbit_polynomial(w2, 0.0).coefficients[4], 2.0 * orbit_polynomial(kRef, 0.0).coefficients[4], 1e-14);
}

TEST(ClosedForm, RejectsLogarithmicLevelSets) {
  EXPECT_THROW((void)orbit_polynomial(WaveParams::direct(Theta::half(), 0.2, 0.0, -1.0, 0.05), 0.0),
               UnsupportedForClosedForm);
  EXPECT_THROW((void)orbit_polynomial(WaveParams::direct(Theta::quarter(), 0.0, 0.0, -1.0, 0.05), 0.0),
               UnsupportedForClosedForm);
}

TEST(ClosedForm, EquilibriumLevelGivesDoubleRoot) {
  const auto F = factor_quartic(orbit_polynomial(kRef, ref_levels().saddle));
  EXPECT_EQ(F.pattern, RootPattern::DoubleAndTwoSimple);
  ASSERT_EQ(F.realRoots.size(), 3u);
  EXPECT_EQ(F.rootMultiplicities[1], 2);
}

TEST(ClosedForm, FactorizationOfConstructedQuartics) {
  const OrbitPolynomial simple{poly::Coeffs<double>{-6.0, -1.0, 7.0, 1.0, -1.0}, 0.0, Theta::half(), std::nullopt};
  // -(x-3)(x-1)(x+1)(x+2) = -(x^4 - x^3 - 7x^2 + x + 6)
  const auto F = factor_quartic(simple);
  EXPECT_EQ(F.pattern, RootPattern::FourRealSimple);
  ASSERT_EQ(F.realRoots.size(), 4u);
  EXPECT_NEAR(F.realRoots[0], 3.0, 1e-12);
  EXPECT_NEAR(F.realRoots[1], 1.0, 1e-12);
  EXPECT_NEAR(F.realRoots[2], -1.0, 1e-12);
  EXPECT_NEAR(F.realRoots[3], -2.0, 1e-12);
  const auto back = F.expand();
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(back[i], simple.coefficients[i], 1e-9 * 7.0);

  // Complex pair 1 +- 2i with real roots 2 and -3: a1 = 2, b1 = 1.
  const auto G = factorization_from_roots(-1.0, {2.0, -3.0}, {1, 1}, std::complex<double>(1.0, 2.0));
  const OrbitPolynomial gp{G.expand(), 0.0, Theta::half(), std::nullopt};
  const auto refactored = factor_quartic(gp);
  EXPECT_EQ(refactored.pattern, RootPattern::TwoRealComplexPair);
  ASSERT_TRUE(refactored.complexPair.has_value());
  EXPECT_NEAR(refactored.complexPair->imag(), 2.0, 1e-10);
  EXPECT_NEAR(refactored.complexPair->real(), 1.0, 1e-10);
  const auto cn = construct_cn_periodic(refactored);
  EXPECT_NEAR(cn.parameters.a1, 2.0, 1e-10);
  EXPECT_NEAR(cn.parameters.b1, 1.0, 1e-10);
  EXPECT_NEAR(cn.parameters.A1, std::hypot(2.0 - 1.0, 2.0), 1e-10);
  EXPECT_NEAR(cn.parameters.B1, std::hypot(-3.0 - 1.0, 2.0), 1e-10);

  const auto D = factor_quartic({factorization_from_roots(-1.0, {1.0, 0.2, -1.5}, {1, 2, 1}).expand(), 0.0, Theta::half(), std::nullopt});
  EXPECT_EQ(D.pattern, RootPattern::DoubleAndTwoSimple);
  EXPECT_EQ(D.rootMultiplicities, (std::vector<int>{1, 2, 1}));
}

TEST(ClosedForm, SnPeriodicTurningPointsAndResidual) {
  const auto F = factor_quartic(orbit_polynomial(kRef, sn_level()));
  ASSERT_EQ(F.pattern, RootPattern::FourRealSimple);
  const auto right = construct_sn_periodic(F, true);
  const auto left = construct_sn_periodic(F, false);
  const auto& r = F.realRoots;
  EXPECT_NEAR(right(0.0), r[1], 1e-12);
  const double K = complete_K({right.parameters.mParam});
  EXPECT_NEAR(right(K / right.parameters.omega), r[0], 1e-10);
  EXPECT_LE(right.residualReport, 1e-8);
  EXPECT_LE(left.residualReport, 1e-8);
  EXPECT_NEAR(right.parameters.period, 2.0 * K / right.parameters.omega, 1e-12);

  // Half period as the quadrature of dphi / sqrt(P) between the turning points.
  boost::math::quadrature::tanh_sinh<double> ts;
  const auto P = orbit_polynomial(kRef, sn_level());
  const double half = ts.integrate(
      [&](double x) { return 1.0 / std::sqrt(std::max(poly::horner<double>(P.coefficients, x), 1e-300)); }, r[1], r[0]);
  EXPECT_NEAR(right.parameters.period, 2.0 * half, 1e-6 * right.parameters.period);

  // Same integral with x = mid + rad sin(t), which removes the endpoint square roots.
  const double mid = 0.5 * (r[0] + r[1]);
  const double rad = 0.5 * (r[0] - r[1]);
  const double lead = -P.coefficients[4];
  const double smooth = ts.integrate(
      [&](double t) {
        const double x = mid + rad * std::sin(t);
        return 1.0 / std::sqrt(lead * (x - r[2]) * (x - r[3]));
      },
      -std::numbers::pi / 2, std::numbers::pi / 2);
  EXPECT_NEAR(right.parameters.period, 2.0 * smooth, 1e-10 * right.parameters.period);
}

TEST(ClosedForm, PeriodMatchesIntegratedOrbit) {
  const auto F = factor_quartic(orbit_polynomial(kRef, sn_level()));
  const auto right = construct_sn_periodic(F, true);
  StopRule rule;
  rule.closeOnReturn = true;
  const auto tr = integrate_until(kRef, {right.parameters.lower, 0.0}, 1e3, rule);
  ASSERT_EQ(tr.status, IntegrationStatus::Closed);
  EXPECT_NEAR(*tr.period, right.parameters.period, 1e-6 * right.parameters.period);
}

TEST(ClosedForm, CnPeriodicAgainstLevelCurve) {
  const auto l = ref_levels();
  const double h = l.saddle + 0.05;
  const auto F = factor_quartic(orbit_polynomial(kRef, h));
  ASSERT_EQ(F.pattern, RootPattern::TwoRealComplexPair);
  const auto w = construct_cn_periodic(F);
  EXPECT_LE(w.residualReport, 1e-8);
  double lo = 1e9, hi = -1e9;
  for (int i = 0; i <= 4000; ++i) {
    const double x = w.parameters.period * i / 4000.0;
    lo = std::min(lo, w(x));
    hi = std::max(hi, w(x));
  }
  // Turning points from the traced level curve.
  const auto fi = build_first_integral(kRef);
  double tlo = 1e9, thi = -1e9;
  for (const auto& b : trace_level_curve(fi, h, -3.0, 3.0, 4000)) {
    if (!b.leftTurning || !b.rightTurning) continue;
    tlo = std::min(tlo, b.phiMin);
    thi = std::max(thi, b.phiMax);
  }
  EXPECT_NEAR(lo, tlo, 1e-8);
  EXPECT_NEAR(hi, thi, 1e-8);
  EXPECT_NEAR(lo, F.realRoots[1], 1e-8);
  EXPECT_NEAR(hi, F.realRoots[0], 1e-8);
}

TEST(ClosedForm, SolitaryLimitsAndCrest) {
  const auto F = factor_quartic(orbit_polynomial(kRef, ref_levels().saddle));
  const auto left = construct_solitary(F, false);
  const auto right = construct_solitary(F, true);
  const auto& r = F.realRoots;
  EXPECT_NEAR(left(0.0), r[2], 1e-10);
  EXPECT_NEAR(right(0.0), r[0], 1e-10);
  for (double x : {-40.0, 40.0}) {
    EXPECT_NEAR(left(x), r[1], 1e-9);
    EXPECT_NEAR(right(x), r[1], 1e-9);
  }
  EXPECT_LE(left.residualReport, 1e-8);
  EXPECT_LE(right.residualReport, 1e-8);
  EXPECT_TRUE(std::isinf(left.parameters.period));
}

TEST(ClosedForm, ProfilesAreEvenAndConfined) {
  const auto l = ref_levels();
  const auto Fs = factor_quartic(orbit_polynomial(kRef, sn_level()));
  const auto Fc = factor_quartic(orbit_polynomial(kRef, l.saddle + 0.05));
  const auto Fo = factor_quartic(orbit_polynomial(kRef, l.saddle));
  const std::vector<WaveSolution> waves{construct_sn_periodic(Fs, true), construct_sn_periodic(Fs, false),
                                        construct_cn_periodic(Fc), construct_solitary(Fo, true),
                                        construct_solitary(Fo, false)};
  for (const auto& w : waves) {
    SCOPED_TRACE(to_string(w.variant));
    for (double x : default_grid(w, 500)) {
      EXPECT_NEAR(w(x), w(-x), 1e-12);
      EXPECT_GE(w(x), w.parameters.lower - 1e-9);
      EXPECT_LE(w(x), w.parameters.upper + 1e-9);
    }
  }
}

TEST(ClosedForm, SnDegeneratesToSolitary) {
  const double p1 = 1.0, p2 = 0.2, p4 = -1.5, gap = 1e-6;
  const auto sn = construct_sn_periodic(factorization_from_roots(-1.0, {p1, p2, p2 - gap, p4}, {1, 1, 1, 1}), true);
  const auto so = construct_solitary(factorization_from_roots(-1.0, {p1, p2, p4}, {1, 2, 1}), true);
  const double shift = complete_K({sn.parameters.mParam}) / sn.parameters.omega;
  double sup = 0.0;
  for (int i = -2000; i <= 2000; ++i) sup = std::max(sup, std::abs(sn(0.005 * i + shift) - so(0.005 * i)));
  EXPECT_LE(sup, 1e-6);
}

TEST(ClosedForm, WrongPatternsRejected) {
  const auto four = factorization_from_roots(-1.0, {3, 1, -1, -2}, {1, 1, 1, 1});
  EXPECT_THROW((void)construct_cn_periodic(four), RootPatternError);
  EXPECT_THROW((void)construct_solitary(four, true), RootPatternError);
  const auto pair = factorization_from_roots(-1.0, {2.0, -3.0}, {1, 1}, std::complex<double>(1.0, 2.0));
  EXPECT_THROW((void)construct_sn_periodic(pair, true), RootPatternError);
  const auto positive = factorization_from_roots(1.0, {3, 1, -1, -2}, {1, 1, 1, 1});
  EXPECT_THROW((void)construct_sn_periodic(positive, true), RootPatternError);
}

TEST(ClosedForm, ResidualDetectorSanity) {
  const auto cs = census(kRef);
  std::vector<double> grid;
  for (int i = 0; i < 50; ++i) grid.push_back(-5.0 + 0.2 * i);
  for (const auto& e : cs.equilibria) {
    if (e.onSingularLine) continue;
    const double c = e.location.phi;
    EXPECT_LE(ode_residual(kRef, [c](double) { return c; }, grid), 1e-10);
  }
  const auto w = construct_sn_periodic(factor_quartic(orbit_polynomial(kRef, sn_level())), true);
  const auto g = default_grid(w, 1000);
  EXPECT_LE(ode_residual(kRef, w, g), 1e-8);
  EXPECT_GE(ode_residual(kRef, [&w](double x) { return w(x) + 0.01; }, g), 1e-3);
}

TEST(ClosedForm, RiddersDerivativesOfKnownFunction) {
  const auto d = extrapolated_derivatives([](double x) { return std::sin(x); }, 0.7, 1e-2);
  EXPECT_NEAR(d.d1, std::cos(0.7), 1e-12);
  EXPECT_NEAR(d.d2, -std::sin(0.7), 1e-10);
}

}  // namespace
}  // namespace rotwave
