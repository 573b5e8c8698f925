/**
 * @file field.hpp
 * @brief The traveling-wave planar system, its regularization and first integrals.
 *
 * With f(phi) = C3 phi^4 + C2 phi^3 + phi^2/2 + K phi the system is
 *
 *     dphi/dxi = y,   dy/dxi = ((theta - 1/2) y^2 + f(phi)) / (theta phi - C1),
 *
 * and the time change dxi = (theta phi - C1) dtau gives the polynomial
 * (regular) system used for all long integrations.
 *
 * The first integral is H = -(theta/2) y^2 (phi - s)^(m+1) + p(phi) with
 * s = C1/theta and p' = f (phi - s)^m. For m < 0 the potential p is obtained
 * by division with remainder, which produces ln|phi - s| and negative powers.
 */
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rotwave/params.hpp"
#include "rotwave/polynomial.hpp"

namespace rotwave {

struct PhasePoint {
  double phi = 0.0;
  double y = 0.0;
};

struct Velocity {
  double dphi = 0.0;
  double dy = 0.0;
};

/// f(phi) = C3 phi^4 + C2 phi^3 + phi^2/2 + K phi.
[[nodiscard]] double eval_f(const WaveParams& wp, double phi);
[[nodiscard]] double eval_df(const WaveParams& wp, double phi);
/// g(phi) = f(phi)/phi = C3 phi^3 + C2 phi^2 + phi/2 + K.
[[nodiscard]] double eval_g(const WaveParams& wp, double phi);
[[nodiscard]] double eval_dg(const WaveParams& wp, double phi);
[[nodiscard]] double eval_d2g(const WaveParams& wp, double phi);

/// Ascending coefficients of f.
[[nodiscard]] poly::Coeffs<double> f_coefficients(const WaveParams& wp);

/// Throws SingularityError on theta phi = C1.
[[nodiscard]] Velocity rhs_singular(const WaveParams& wp, PhasePoint p);
[[nodiscard]] Velocity rhs_regular(const WaveParams& wp, PhasePoint p);

/// Pieces of the potential p(phi), generic over the scalar for exact replay.
template <class T>
struct PotentialParts {
  poly::Coeffs<T> polynomial;     ///< ascending in phi, zero constant term
  T logCoefficient{0};            ///< multiplies ln|phi - s|
  poly::Coeffs<T> inversePowers;  ///< entry j-1 multiplies (phi - s)^(-j)
};

/// Antiderivative of f(phi) (phi - s)^m with f given by (C2, C3, K).
template <class T>
[[nodiscard]] PotentialParts<T> integrate_potential(int m, const T& s, const T& C2, const T& C3, const T& K) {
  const T half = T(1) / T(2);
  const poly::Coeffs<T> f{T(0), K, half, C2, C3};
  PotentialParts<T> out;
  if (m >= 0) {
    // Binomial expansion of (phi - s)^m.
    const auto weight = poly::binomial_power<T>(s, m);
    const auto integrand = poly::multiply<T>(f, weight);
    out.polynomial = poly::antiderivative<T>(integrand);
    return out;
  }
  const int n = -m;
  const auto ft = poly::taylor_shift<T>(f, s);  // f in powers of t = phi - s
  poly::Coeffs<T> q_t{T(0)};
  out.inversePowers.assign(static_cast<std::size_t>(n > 1 ? n - 1 : 0), T(0));
  for (int j = 0; j < static_cast<int>(ft.size()); ++j) {
    const int e = j - n;  // t^e
    const T& cj = ft[static_cast<std::size_t>(j)];
    if (e >= 0) {
      if (q_t.size() < static_cast<std::size_t>(e + 2)) q_t.resize(static_cast<std::size_t>(e + 2), T(0));
      q_t[static_cast<std::size_t>(e + 1)] += cj / T(e + 1);
    } else if (e == -1) {
      out.logCoefficient += cj;
    } else {
      // integral of t^e is t^(e+1)/(e+1), e+1 <= -1
      out.inversePowers[static_cast<std::size_t>(-(e + 1) - 1)] += cj / T(e + 1);
    }
  }
  out.polynomial = poly::taylor_shift<T>(q_t, T(0) - s);
  if (!out.polynomial.empty()) out.polynomial[0] = T(0);
  return out;
}

struct LevelValue {
  double h = 0.0;
};

/// Machine-built first integral in canonical form (y^2 coefficient -theta/2).
struct FirstIntegral {
  Theta theta = Theta::quarter();
  double shift = 0.0;  ///< s = C1/theta
  double ySquaredCoefficient = 0.0;
  int ySquaredPowerExponent = 0;  ///< m + 1
  poly::Coeffs<double> polynomialPart;
  double logCoefficient = 0.0;
  double logArgumentShift = 0.0;
  poly::Coeffs<double> inversePowerPart;
  std::string validityNote;

  /// True when some term of p is singular at phi = shift.
  [[nodiscard]] bool singular_potential() const;
  /// Potential p(phi); throws SingularityError at a log zero or pole.
  [[nodiscard]] double potential(double phi) const;
  /// Same with the offset t = phi - shift supplied exactly.
  [[nodiscard]] double potential_at(double phi, double t) const;
  [[nodiscard]] double potential_derivative(double phi) const;
  /// Coefficient w(phi) with H = w(phi) y^2 + p(phi).
  [[nodiscard]] double y_weight(double phi) const;
  [[nodiscard]] double y_weight_at(double phi, double t) const;
  [[nodiscard]] double y_weight_derivative(double phi) const;
  /// Sum of absolute values of the individual terms of H, used as a rounding scale.
  [[nodiscard]] double term_magnitude(PhasePoint p) const;
};

/// Builds H and verifies dH/dxi = 0 on a sample grid; throws ConservationDefect otherwise.
[[nodiscard]] FirstIntegral build_first_integral(const WaveParams& wp);

[[nodiscard]] LevelValue eval_H(const FirstIntegral& fi, PhasePoint p);

/// H at phi = shift + t with the singular terms taken from t itself, which keeps them accurate
/// when phi lies within rounding distance of the line.
[[nodiscard]] LevelValue eval_H_from_line(const FirstIntegral& fi, double t, double y);

struct Gradient {
  double dphi = 0.0;
  double dy = 0.0;
};
[[nodiscard]] Gradient grad_H(const FirstIntegral& fi, PhasePoint p);

/// Relative rate |dH/dxi| / (|H_phi y| + |H_y y'|) along the singular system, with
/// partial derivatives of an arbitrary H taken by Richardson-extrapolated central differences.
[[nodiscard]] double conservation_defect(const WaveParams& wp, const std::function<double(PhasePoint)>& H,
                                         PhasePoint p, double relStep = 1e-3);

}  // namespace rotwave
