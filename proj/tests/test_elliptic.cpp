/**
 * @file test_elliptic.cpp
 * @brief Jacobi functions and K(m) against boost (modulus convention) and quadrature.
 */
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>

#include "rotwave/elliptic.hpp"

namespace rotwave {
namespace {

TEST(Elliptic, CompleteIntegralMatchesQuadrature) {
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double m : {0.0, 0.1, 0.5, 0.9, 0.999}) {
    const double q = ts.integrate([m](double t) { return 1.0 / std::sqrt(1.0 - m * std::sin(t) * std::sin(t)); }, 0.0,
                                  std::numbers::pi / 2);
    EXPECT_NEAR(complete_K({m}), q, 1e-12 * q) << m;
    // boost takes the modulus k = sqrt(m).
    EXPECT_NEAR(complete_K({m}), boost::math::ellint_1(std::sqrt(m)), 1e-13 * q) << m;
  }
  EXPECT_NEAR(complete_K({0.0}), std::numbers::pi / 2, 1e-15);
}

TEST(Elliptic, DomainErrors) {
  EXPECT_THROW((void)complete_K({1.0}), std::domain_error);
  EXPECT_THROW((void)complete_K({-0.1}), std::invalid_argument);
  EXPECT_THROW((void)complete_K({1.5}), std::invalid_argument);
}

TEST(Elliptic, ParameterNotModulusConvention) {
  for (double m : {0.04, 0.3, 0.81}) {
    for (double u : {-2.3, 0.1, 0.7, 3.9}) {
      const auto t = jacobi(u, {m});
      double cn = 0.0, dn = 0.0;
      const double sn = boost::math::jacobi_elliptic(std::sqrt(m), u, &cn, &dn);
      EXPECT_NEAR(t.sn, sn, 1e-13);
      EXPECT_NEAR(t.cn, cn, 1e-13);
      EXPECT_NEAR(t.dn, dn, 1e-13);
    }
  }
  EXPECT_DOUBLE_EQ(EllipticModulus::from_modulus(0.5).mParam, 0.25);
}

TEST(Elliptic, PythagoreanIdentitiesOnGrid) {
  double worst = 0.0;
  for (double m : {0.0, 0.2, 0.5, 0.95, 1.0 - 1e-9, 1.0}) {
    for (int i = 0; i < 2000; ++i) {
      const double u = -20.0 + 40.0 * i / 1999.0;
      const auto t = jacobi(u, {m});
      worst = std::max(worst, std::abs(t.sn * t.sn + t.cn * t.cn - 1.0));
      worst = std::max(worst, std::abs(t.dn * t.dn + m * t.sn * t.sn - 1.0));
    }
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(Elliptic, PeriodicityAndLimits) {
  for (double m : {0.1, 0.6, 0.99}) {
    const double K = complete_K({m});
    for (double u : {0.0, 0.37, 1.9, -3.1}) {
      EXPECT_NEAR(jacobi(u + 4 * K, {m}).sn, jacobi(u, {m}).sn, 1e-10);
      EXPECT_NEAR(jacobi(u + 2 * K, {m}).sn, -jacobi(u, {m}).sn, 1e-10);
    }
    EXPECT_NEAR(jacobi(K, {m}).sn, 1.0, 1e-12);
    EXPECT_NEAR(jacobi(K, {m}).cn, 0.0, 1e-12);
    EXPECT_NEAR(jacobi(K, {m}).dn, std::sqrt(1 - m), 1e-12);
  }
  for (double u : {-1.2, 0.4, 2.5}) {
    EXPECT_NEAR(jacobi(u, {0.0}).sn, std::sin(u), 1e-15);
    EXPECT_NEAR(jacobi(u, {1.0}).sn, std::tanh(u), 1e-15);
    EXPECT_NEAR(jacobi(u, {1.0}).cn, 1.0 / std::cosh(u), 1e-15);
  }
}

TEST(Elliptic, DerivativeRelations) {
  const double m = 0.7;
  for (double u : {-1.0, 0.3, 2.2}) {
    const double h = 1e-5;
    const auto t = jacobi(u, {m});
    const double dsn = (jacobi(u + h, {m}).sn - jacobi(u - h, {m}).sn) / (2 * h);
    EXPECT_NEAR(dsn, t.cn * t.dn, 1e-9);
  }
}

}  // namespace
}  // namespace rotwave
