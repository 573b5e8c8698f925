/**
 * @file test_field.cpp
 * @brief Vector field, regularization and first integrals against difference and exact oracles.
 */
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "rotwave/errors.hpp"
#include "rotwave/field.hpp"
#include "rotwave/verify.hpp"

namespace rotwave {
namespace {

using Rational = boost::multiprecision::cpp_rational;

WaveParams random_params(std::mt19937_64& rng, Theta th) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const double C1 = 0.5 * U(rng);
  const double C2 = U(rng);
  const double C3 = U(rng);
  const double K = 0.5 * U(rng);
  return WaveParams::direct(th, C1, C2, C3, K);
}

PhasePoint off_line_point(std::mt19937_64& rng, const WaveParams& wp) {
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  for (;;) {
    const PhasePoint p{U(rng), U(rng)};
    if (std::abs(wp.theta.value() * p.phi - wp.C1) > 0.05) return p;
  }
}

TEST(Field, PolynomialsFactorThroughPhi) {
  const auto wp = WaveParams::direct(Theta::quarter(), 0.1, 0.3, -0.7, 0.2);
  for (double x : {-1.3, -0.2, 0.4, 2.0}) {
    EXPECT_NEAR(eval_f(wp, x), x * eval_g(wp, x), 1e-14);
    EXPECT_NEAR(eval_f(wp, x), ((-0.7 * x + 0.3) * x + 0.5) * x * x + 0.2 * x, 1e-14);
    const double h = 1e-5;
    EXPECT_NEAR(eval_df(wp, x), (eval_f(wp, x + h) - eval_f(wp, x - h)) / (2 * h), 1e-8);
    EXPECT_NEAR(eval_dg(wp, x), (eval_g(wp, x + h) - eval_g(wp, x - h)) / (2 * h), 1e-8);
    EXPECT_NEAR(eval_d2g(wp, x), (eval_dg(wp, x + h) - eval_dg(wp, x - h)) / (2 * h), 1e-8);
  }
}

TEST(Field, RegularSystemIsTimeRescaledSingularSystem) {
  std::mt19937_64 rng(21);
  for (Theta th : {Theta::quarter(), Theta::half(), Theta::one()}) {
    for (int i = 0; i < 50; ++i) {
      const auto wp = random_params(rng, th);
      const auto p = off_line_point(rng, wp);
      const double w = th.value() * p.phi - wp.C1;
      const auto vs = rhs_singular(wp, p);
      const auto vr = rhs_regular(wp, p);
      EXPECT_NEAR(vr.dphi, w * vs.dphi, 1e-12 * (1 + std::abs(vr.dphi)));
      EXPECT_NEAR(vr.dy, w * vs.dy, 1e-12 * (1 + std::abs(vr.dy)));
    }
  }
}

TEST(Field, SingularSystemRejectsTheLine) {
  const auto wp = WaveParams::direct(Theta::half(), 0.2, 0, -1, 0.1);
  EXPECT_THROW((void)rhs_singular(wp, {0.4, 1.0}), SingularityError);
}

TEST(Field, GradientMatchesCentralDifferences) {
  std::mt19937_64 rng(5);
  for (Theta th : {Theta::quarter(), Theta::half(), Theta::one()}) {
    for (int i = 0; i < 40; ++i) {
      const auto wp = random_params(rng, th);
      const auto fi = build_first_integral(wp);
      const auto p = off_line_point(rng, wp);
      const double h = 1e-6;
      const double dphi = (eval_H(fi, {p.phi + h, p.y}).h - eval_H(fi, {p.phi - h, p.y}).h) / (2 * h);
      const double dy = (eval_H(fi, {p.phi, p.y + h}).h - eval_H(fi, {p.phi, p.y - h}).h) / (2 * h);
      const auto g = grad_H(fi, p);
      const double scale = 1 + fi.term_magnitude(p) / 0.05;
      EXPECT_NEAR(g.dphi, dphi, 1e-6 * scale);
      EXPECT_NEAR(g.dy, dy, 1e-6 * scale);
    }
  }
}

TEST(Field, MachineIntegralIsConservedForSeveralTheta) {
  std::mt19937_64 rng(9);
  for (Theta th : {Theta::quarter(), Theta::half(), Theta::one(), Theta(1, 5), Theta(1, 3)}) {
    for (int i = 0; i < 25; ++i) {
      const auto wp = random_params(rng, th);
      const auto fi = build_first_integral(wp);
      const std::function<double(PhasePoint)> H = [&](PhasePoint p) { return eval_H(fi, p).h; };
      const auto p = off_line_point(rng, wp);
      SCOPED_TRACE(th.str());
      EXPECT_LE(conservation_defect(wp, H, p), 1e-6);
    }
  }
}

TEST(Field, QuarterIntegralReplaysExactlyInRationals) {
  const Rational C1(3, 7), C2(-5, 11), C3(2, 13), K(-9, 17);
  const auto parts = integrate_potential<Rational>(1, 4 * C1, C2, C3, K);
  const std::vector<Rational> expected{0, 0, -2 * C1 * K, (K - 2 * C1) / 3, Rational(1, 8) - C1 * C2,
                                       (C2 - 4 * C1 * C3) / 5, C3 / 6};
  ASSERT_EQ(parts.polynomial.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(parts.polynomial[i], expected[i]) << i;
  EXPECT_EQ(parts.logCoefficient, 0);
  EXPECT_TRUE(parts.inversePowers.empty());

  const auto fi = build_first_integral(WaveParams::direct(Theta::quarter(), 0.1, 0.2, 0.3, 0.4));
  EXPECT_EQ(fi.ySquaredCoefficient, -0.125);
  EXPECT_EQ(fi.ySquaredPowerExponent, 2);
  EXPECT_NE(fi.validityNote.find("matches"), std::string::npos);
}

TEST(Field, LogAndPoleCoefficientsFollowTheRemainderTheorem) {
  const auto half = WaveParams::direct(Theta::half(), 0.15, 0.4, -0.8, 0.3);
  const auto fh = build_first_integral(half);
  EXPECT_NEAR(fh.logCoefficient, eval_f(half, 0.3), 1e-14);
  EXPECT_EQ(fh.ySquaredPowerExponent, 0);

  const auto one = WaveParams::direct(Theta::one(), 0.35, 0.4, -0.8, 0.3);
  const auto fo = build_first_integral(one);
  EXPECT_NEAR(fo.logCoefficient, eval_df(one, 0.35), 1e-14);
  ASSERT_EQ(fo.inversePowerPart.size(), 1u);
  EXPECT_NEAR(fo.inversePowerPart[0], -eval_f(one, 0.35), 1e-14);
  EXPECT_THROW((void)fo.potential(0.35), SingularityError);
}

TEST(Field, CandidateIntegralsAreNotConserved) {
  std::mt19937_64 rng(13);
  int flaggedHalf = 0;
  int flaggedOne = 0;
  const int n = 60;
  for (int i = 0; i < n; ++i) {
    auto wp = random_params(rng, Theta::half());
    if (std::abs(wp.C1) < 0.1) wp.C1 = 0.1;
    const auto p = off_line_point(rng, wp);
    const std::function<double(PhasePoint)> cand = [&](PhasePoint q) { return candidate_integral_half(wp, q); };
    if (conservation_defect(wp, cand, p) > 1e-3) ++flaggedHalf;
    auto w1 = wp;
    w1.theta = Theta::one();
    const auto q = off_line_point(rng, w1);
    const std::function<double(PhasePoint)> cand1 = [&](PhasePoint x) { return candidate_integral_one(w1, x); };
    if (conservation_defect(w1, cand1, q) > 1e-3) ++flaggedOne;
  }
  EXPECT_GE(flaggedHalf, 54);
  EXPECT_GE(flaggedOne, 54);
}

TEST(Field, OffsetEvaluationAgreesAwayFromTheLine) {
  const auto wp = WaveParams::direct(Theta::one(), 0.3, 0.2, -0.6, 0.1);
  const auto fi = build_first_integral(wp);
  for (double t : {-0.7, -0.1, 0.05, 0.9}) {
    const PhasePoint p{fi.shift + t, 0.8};
    EXPECT_NEAR(eval_H_from_line(fi, t, p.y).h, eval_H(fi, p).h, 1e-13 * (1 + fi.term_magnitude(p)));
  }
}

}  // namespace
}  // namespace rotwave
