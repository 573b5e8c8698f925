/**
 * @file test_orbits.cpp
 * @brief Trajectories, level curves, separatrix shooting and orbit classification.
 */
#include <gtest/gtest.h>

#include <cmath>

#include "rotwave/equilibria.hpp"
#include "rotwave/orbits.hpp"

namespace rotwave {
namespace {

const WaveParams kT1 = WaveParams::direct(Theta::quarter(), 0.125, 0.0, -1.0, 0.5);
const WaveParams kT3 = WaveParams::direct(Theta::half(), 0.0, 0.0, -1.0, 0.05);

TEST(Orbits, FirstIntegralDriftStaysSmall) {
  for (const auto& wp : {kT1, kT3, WaveParams::direct(Theta::one(), 0.2, 0.3, -0.5, 0.1)}) {
    const auto tr = integrate(wp, {-0.3, 0.2}, 10.0);
    EXPECT_LE(tr.hDriftMax, 1e-8);
    EXPECT_EQ(tr.status, IntegrationStatus::Completed);
  }
}

TEST(Orbits, DriftStaysSmallWhileSettlingOntoTheLine) {
  // The orbit runs into the invariant line; H carries ln|phi - s| there.
  const auto wp =
      WaveParams::direct(Theta::half(), -0.41899667871972857, 0.90900417879512863, -1.183566077759532, 0.23136377326947488);
  const auto tr = integrate(wp, {-0.96340527807491161, 0.25046083342831471}, 10.0);
  EXPECT_LT(std::abs(tr.samples.back().point.phi - wp.singular_abscissa()), 1e-9);
  EXPECT_LE(tr.hDriftMax, 1e-8);
}

TEST(Orbits, XiAndTauParameterizationsAgree) {
  const auto wp = WaveParams::direct(Theta::quarter(), -0.3, 0.1, -0.8, 0.2);
  const PhasePoint start{0.3, 0.1};  // theta phi - C1 = 0.375 > 0 along this arc
  const auto byTau = integrate(wp, start, 1.0);
  const auto byXi = integrate_xi(wp, start, byTau.samples.back().xi);
  for (double frac : {0.25, 0.5, 0.9}) {
    const double xi = frac * byTau.samples.back().xi;
    const auto a = point_at_xi(byTau, xi);
    const auto b = point_at_xi(byXi, xi);
    ASSERT_TRUE(a && b);
    EXPECT_NEAR(a->phi, b->phi, 1e-5);
    EXPECT_NEAR(a->y, b->y, 1e-5);
  }
}

TEST(Orbits, ReturnMapClosesAndPeriodConverges) {
  StopRule rule;
  rule.closeOnReturn = true;
  const PhasePoint start{-0.5, 0.0};
  const auto fine = integrate_until(kT3, start, 1e3, rule);
  ASSERT_EQ(fine.status, IntegrationStatus::Closed);
  ASSERT_TRUE(fine.period);
  EXPECT_NEAR(fine.crossings.back().phi, start.phi, 1e-6);
  IntegrationTolerances coarse;
  coarse.rtol = 1e-9;
  coarse.atol = 1e-11;
  const auto c = integrate_until(kT3, start, 1e3, rule, coarse);
  ASSERT_TRUE(c.period);
  EXPECT_NEAR(*c.period, *fine.period, 1e-6 * *fine.period);
}

TEST(Orbits, RemovableLineUsesReducedSystem) {
  EXPECT_TRUE(removable_line(kT3));
  EXPECT_FALSE(removable_line(kT1));
  EXPECT_TRUE(integrate(kT3, {0.3, 0.1}, 1.0).reduced);
}

TEST(Orbits, LevelCurvePointsLieOnTheLevel) {
  const auto fi = build_first_integral(kT1);
  for (double h : {0.002, 0.01, 0.05}) {
    for (const auto& b : trace_level_curve(fi, h, -1.5, 2.5, 1500)) {
      for (const auto& p : b.upper) {
        const double scale = 1 + fi.term_magnitude(p);
        EXPECT_NEAR(eval_H(fi, p).h, h, 1e-9 * scale);
        EXPECT_GE(p.y, 0.0);
      }
    }
  }
}

TEST(Orbits, UnstableDirectionIsAnEigenvector) {
  for (const auto& wp : {kT1, kT3}) {
    for (const auto& e : census(wp).equilibria) {
      if (e.kind != EquilibriumKind::Saddle) continue;
      const auto v = unstable_direction(wp, e);
      if (!v) continue;
      // Direction of the flow just off the saddle along v points away along v.
      const double eps = 1e-7;
      const PhasePoint q{e.location.phi + eps * v->phi, e.location.y + eps * v->y};
      const auto f = removable_line(wp) ? Velocity{q.y, 0.0} : rhs_regular(wp, q);
      if (removable_line(wp)) continue;
      const double cross = f.dphi * v->y - f.dy * v->phi;
      const double dot = f.dphi * v->phi + f.dy * v->y;
      EXPECT_GT(dot, 0.0);
      EXPECT_LE(std::abs(cross), 1e-4 * std::abs(dot));
    }
  }
}

TEST(Orbits, ReferenceSurveyInsideWindow) {
  const auto m = survey(kT1, census(kT1));
  EXPECT_GE(m.peakon + m.antiPeakon, 1);
  EXPECT_GE(m.periodicPeakon, 2);
  for (const auto& o : m.orbits) {
    if (o.cls.tag == OrbitTag::Peakon || o.cls.tag == OrbitTag::PeriodicPeakon) {
      ASSERT_TRUE(o.cls.derivativeJump);
      EXPECT_GE(std::abs(*o.cls.derivativeJump), 0.1 * o.cls.amplitude);
    }
  }
}

TEST(Orbits, ReferenceSurveyOutsideWindow) {
  const auto wp = WaveParams::direct(Theta::quarter(), 0.3, 0.0, -1.0, 0.5);
  const auto m = survey(wp, census(wp));
  EXPECT_EQ(m.peakon + m.antiPeakon + m.periodicPeakon, 0);
  EXPECT_GE(m.periodicSmooth + m.solitary, 1);
}

TEST(Orbits, TwoHomoclinicLoopsAtRemovableLine) {
  const auto m = survey(kT3, census(kT3));
  EXPECT_EQ(m.solitary, 2);
  EXPECT_GE(m.periodicSmooth, 2);
}

TEST(Orbits, SeparatrixShadowingStartIsSolitary) {
  const auto cs = census(kT3);
  const Equilibrium* saddle = nullptr;
  for (const auto& e : cs.equilibria)
    if (e.kind == EquilibriumKind::Saddle && !e.onSingularLine) saddle = &e;
  ASSERT_NE(saddle, nullptr);
  const auto v = unstable_direction(kT3, *saddle);
  ASSERT_TRUE(v);
  StopRule rule;
  rule.targets = {saddle->location};
  const PhasePoint start{saddle->location.phi + 1e-8 * v->phi, saddle->location.y + 1e-8 * v->y};
  const auto tr = integrate_until(kT3, start, 200.0, rule);
  EXPECT_EQ(classify_orbit(kT3, tr, cs).tag, OrbitTag::Solitary);
}

TEST(Orbits, EscapingOrbitIsUnbounded) {
  // With C3 > 0 the potential falls off as phi^4 and large orbits blow up in finite time.
  const auto wp = WaveParams::direct(Theta::half(), 0.0, 0.0, 1.0, 0.05);
  const auto tr = integrate(wp, {3.0, 5.0}, 100.0);
  EXPECT_EQ(tr.status, IntegrationStatus::Escaped);
  EXPECT_EQ(classify_orbit(wp, tr, census(wp)).tag, OrbitTag::Unbounded);
  // With C3 < 0 the same start stays on a bounded oval.
  EXPECT_EQ(integrate(kT3, {3.0, 5.0}, 100.0).status, IntegrationStatus::Completed);
}

}  // namespace
}  // namespace rotwave
