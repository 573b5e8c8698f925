/**
 * @file test_params.cpp
 * @brief Coriolis constants against exact rationals and 50-digit evaluation.
 */
#include <gtest/gtest.h>

#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "rotwave/errors.hpp"
#include "rotwave/params.hpp"

namespace rotwave {
namespace {

using Rational = boost::multiprecision::cpp_rational;
using Big = boost::multiprecision::cpp_bin_float_50;

template <class T>
struct Reference {
  T k, alpha, beta0, beta, omega1, omega2;
};

template <class T>
Reference<T> reference_from_k(const T& k) {
  const T k2 = k * k;
  const T kp = 1 + k2;
  Reference<T> r;
  r.k = k;
  r.alpha = k / kp;
  r.beta0 = k * (k2 * k2 + 6 * k2 - 1) / (6 * kp);
  r.beta = (3 * k2 * k2 + 8 * k2 - 1) / (6 * kp);
  r.omega1 = -3 * k * (k2 - 1) * (k2 - 2) / (2 * kp * kp * kp);
  r.omega2 = (k2 - 2) * (k2 - 1) * (k2 - 1) * (8 * k2 - 1) / (2 * kp * kp * kp * kp * kp);
  return r;
}

TEST(Params, ZeroRotationMatchesExactRationals) {
  const auto ref = reference_from_k(Rational(1));
  const auto cp = derive_coriolis(0.0);
  EXPECT_EQ(cp.k, 1.0);
  EXPECT_EQ(cp.alpha, static_cast<double>(ref.alpha));
  EXPECT_EQ(ref.beta0, Rational(1, 2));
  EXPECT_EQ(ref.beta, Rational(5, 6));
  EXPECT_NEAR(cp.beta0, 0.5, 1e-16);
  EXPECT_NEAR(cp.beta, 5.0 / 6.0, 1e-16);
  EXPECT_LE(std::abs(cp.omega1), 1e-15);
  EXPECT_LE(std::abs(cp.omega2), 1e-15);
  EXPECT_LE(std::abs(cp.beta0 / cp.beta - 0.6), 1e-14);
}

TEST(Params, UnitRotationGivesSqrtTwoMinusOne) {
  const auto cp = derive_coriolis(1.0);
  const Big k = boost::multiprecision::sqrt(Big(2)) - 1;
  EXPECT_NEAR(cp.k, static_cast<double>(k), 1e-16);
}

TEST(Params, ConstantsAgreeWithHighPrecisionAcrossOmega) {
  for (double Omega : {0.0, 0.01, 0.3, 1.0, 2.5, 10.0, 1e3}) {
    const Big W(Omega);
    const Big k = boost::multiprecision::sqrt(1 + W * W) - W;
    const auto ref = reference_from_k(k);
    const auto cp = derive_coriolis(Omega);
    auto rel = [](double got, const Big& want) {
      const double w = static_cast<double>(want);
      return std::abs(got - w) / std::max(1e-300, std::max(std::abs(w), 1e-12));
    };
    SCOPED_TRACE(Omega);
    EXPECT_LE(rel(cp.k, ref.k), 1e-14);
    EXPECT_LE(rel(cp.alpha, ref.alpha), 1e-14);
    EXPECT_LE(rel(cp.beta0, ref.beta0), 1e-12);
    EXPECT_LE(rel(cp.beta, ref.beta), 1e-12);
    EXPECT_LE(std::abs(cp.omega1 - static_cast<double>(ref.omega1)), 1e-13);
    EXPECT_LE(std::abs(cp.omega2 - static_cast<double>(ref.omega2)), 1e-13);
  }
}

TEST(Params, KDecreasesAndStaysInUnitInterval) {
  double prev = 2.0;
  for (int i = 0; i <= 200; ++i) {
    const double Omega = 0.05 * i;
    const double k = derive_coriolis(Omega).k;
    EXPECT_GT(k, 0.0);
    EXPECT_LE(k, 1.0);
    EXPECT_LT(k, prev);
    prev = k;
    EXPECT_NEAR(omega_from_k(k), Omega, 1e-12 * std::max(1.0, Omega));
  }
}

TEST(Params, RejectsNegativeOrNonFiniteOmega) {
  EXPECT_THROW((void)derive_coriolis(-1.0), std::invalid_argument);
  EXPECT_THROW((void)derive_coriolis(std::nan("")), std::invalid_argument);
  EXPECT_THROW((void)derive_coriolis(INFINITY), std::invalid_argument);
}

TEST(Params, WaveFrameCoefficientsAtZeroRotation) {
  const auto wp = derive_wave_params(derive_coriolis(0.0), 2.0, Theta::quarter());
  EXPECT_EQ(wp.K, -1.0);
  EXPECT_EQ(wp.C2, 0.0);
  EXPECT_EQ(wp.C3, 0.0);
  EXPECT_NEAR(wp.C1, 2.0 - 0.6, 1e-15);
  EXPECT_EQ(wp.m(), 1);
  EXPECT_NEAR(wp.singular_abscissa(), 4.0 * wp.C1, 1e-15);
}

TEST(Params, ThetaFamilyAndIntegerExponent) {
  EXPECT_EQ(Theta::quarter().m(), 1);
  EXPECT_EQ(Theta::half().m(), -1);
  EXPECT_EQ(Theta::one().m(), -2);
  EXPECT_EQ(Theta::parse("1/4"), Theta::quarter());
  EXPECT_EQ(Theta::parse("2/4"), Theta::half());
  EXPECT_EQ(Theta::parse("1"), Theta::one());
  EXPECT_EQ(Theta::parse("1/5").m(), 2);
  EXPECT_EQ(Theta::half().str(), "1/2");
  const auto wp = WaveParams::direct(Theta::one(), 0.3, 0, 0, 0);
  EXPECT_DOUBLE_EQ(wp.singular_abscissa(), 0.3);
}

TEST(Params, RejectsUnsupportedTheta) {
  EXPECT_THROW((void)Theta::parse("0"), UnsupportedTheta);
  EXPECT_THROW((void)Theta::parse("2/3"), UnsupportedTheta);
  EXPECT_THROW((void)Theta::parse("-1/2"), UnsupportedTheta);
  EXPECT_THROW((void)Theta::parse("abc"), UnsupportedTheta);
  EXPECT_THROW((void)Theta::parse("1/0"), UnsupportedTheta);
}

TEST(Params, ConvenienceBlockFromPhysicalParameters) {
  const auto cp = derive_coriolis(0.7);
  const auto wp = derive_wave_params(cp, 1.3, Theta::half());
  EXPECT_DOUBLE_EQ(wp.C1, 1.3 - cp.beta0 / cp.beta);
  EXPECT_DOUBLE_EQ(wp.C2, cp.omega1 / (3.0 * cp.alpha * cp.alpha));
  EXPECT_DOUBLE_EQ(wp.C3, cp.omega2 / (4.0 * cp.alpha * cp.alpha * cp.alpha));
  EXPECT_DOUBLE_EQ(wp.K, -1.3 + cp.k);
  EXPECT_THROW((void)derive_wave_params(cp, NAN, Theta::half()), std::invalid_argument);
}

}  // namespace
}  // namespace rotwave
