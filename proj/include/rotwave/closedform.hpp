/**
 * @file closedform.hpp
 * @brief Orbit polynomial y^2 = P(phi), its factorization, and elliptic/hyperbolic wave profiles.
 *
 * Closed forms exist where the level set is polynomial in phi, which for the
 * supported family means theta = 1/2 with a vanishing logarithmic term
 * (in particular C1 = 0). Profiles are parameterized by the elliptic
 * parameter m (see elliptic.hpp) and the frequency omega uses the actual
 * leading coefficient of P.
 */
#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rotwave/field.hpp"

namespace rotwave {

struct OrbitPolynomial {
  poly::Coeffs<double> coefficients;  ///< ascending, degree <= 4
  double levelH = 0.0;
  Theta thetaBranch = Theta::half();
  std::optional<WaveParams> source;  ///< set when built from wave parameters; enables ODE residuals
};

/// y^2 = P(phi) on H = h. Throws UnsupportedForClosedForm when the level set is not polynomial.
[[nodiscard]] OrbitPolynomial orbit_polynomial(const FirstIntegral& fi, double h);
[[nodiscard]] OrbitPolynomial orbit_polynomial(const WaveParams& wp, double h);

enum class RootPattern { FourRealSimple, TwoRealComplexPair, DoubleAndTwoSimple, Other };

[[nodiscard]] const char* to_string(RootPattern p);

struct QuarticFactorization {
  double leadingCoefficient = 0.0;
  std::vector<double> realRoots;  ///< distinct real roots, descending
  std::vector<int> rootMultiplicities;
  std::optional<std::complex<double>> complexPair;  ///< w with Im w > 0
  RootPattern pattern = RootPattern::Other;
  std::optional<WaveParams> source;

  /// Multiplies the factors back out (ascending coefficients).
  [[nodiscard]] poly::Coeffs<double> expand() const;
};

/// Roots by Aberth iteration with Newton polish; real roots closer than tol (relative) merge.
/// Throws RootPatternError when a root is too close to the real axis to call either way.
[[nodiscard]] QuarticFactorization factor_quartic(const OrbitPolynomial& P, double tol = 1e-7);

/// Builds a factorization directly from prescribed roots (leading coefficient lead).
[[nodiscard]] QuarticFactorization factorization_from_roots(double lead, std::vector<double> realRoots,
                                                            std::vector<int> multiplicities,
                                                            std::optional<std::complex<double>> pair = std::nullopt);

enum class WaveVariant { CnPeriodic, SnPeriodicRight, SnPeriodicLeft, SolitaryRight, SolitaryLeft, NumericOrbit };

[[nodiscard]] const char* to_string(WaveVariant v);

struct WaveParameters {
  std::array<double, 4> p{};  ///< p1 >= p2 >= p3 >= p4 as used by the variant (unused entries NaN)
  double A1 = 0.0;
  double B1 = 0.0;
  double a1 = 0.0;
  double b1 = 0.0;
  double omega = 0.0;         ///< frequency with the leading coefficient of P
  double omegaAlt = 0.0;  ///< frequency from the alternative constant block (reported, not used)
  double mParam = 0.0;
  double a = 0.0;  ///< (p1 - p2)(p2 - p3) for solitary waves
  double b = 0.0;  ///< p1 - 2 p2 + p3 for solitary waves
  double leadMagnitude = 0.0;
  double period = 0.0;  ///< in xi; infinite for solitary waves
  double lower = 0.0;   ///< bounding roots of the oscillation
  double upper = 0.0;
};

struct WaveSolution {
  WaveVariant variant = WaveVariant::NumericOrbit;
  WaveParameters parameters;
  double residualReport = 0.0;
  std::string notes;
  std::optional<WaveParams> source;
  /// Orbit polynomial used when no wave parameters are attached.
  poly::Coeffs<double> orbit;
  /// NumericOrbit only: (xi, phi) samples with increasing xi.
  std::vector<std::pair<double, double>> samples;

  [[nodiscard]] double operator()(double xi) const;
};

/// Requires four simple real roots and a negative leading coefficient.
[[nodiscard]] WaveSolution construct_sn_periodic(const QuarticFactorization& fact, bool right);
/// Requires two simple real roots, a complex pair and a negative leading coefficient.
[[nodiscard]] WaveSolution construct_cn_periodic(const QuarticFactorization& fact);
/// Requires p1 > p2 (double) > p3 and a negative leading coefficient; right is the loop toward p1.
[[nodiscard]] WaveSolution construct_solitary(const QuarticFactorization& fact, bool right);

/// max over the grid of |C1 phi'' + f(phi) - (1/2)(1 - 2 theta) phi'^2 - theta phi phi''| with
/// derivatives by Richardson-extrapolated central differences.
[[nodiscard]] double ode_residual(const WaveParams& wp, const std::function<double(double)>& profile,
                                  std::span<const double> xiGrid);
[[nodiscard]] double ode_residual(const WaveParams& wp, const std::function<double(double)>& profile,
                                  std::span<const double> xiGrid, double h0);
[[nodiscard]] double ode_residual(const WaveParams& wp, const WaveSolution& wave, std::span<const double> xiGrid);

/// Same extrapolation applied to the orbit equation phi'' = P'(phi)/2.
[[nodiscard]] double orbit_residual(std::span<const double> P, const std::function<double(double)>& profile,
                                    std::span<const double> xiGrid);

/// First and second derivative of a smooth function by Ridders' extrapolation of central differences.
struct Derivatives {
  double d1 = 0.0;
  double d2 = 0.0;
};
[[nodiscard]] Derivatives extrapolated_derivatives(const std::function<double(double)>& fn, double x, double h0);

/// Default evaluation grid: 1000 points over one period, or [-30, 30] for solitary waves.
[[nodiscard]] std::vector<double> default_grid(const WaveSolution& wave, std::size_t n = 1000);

}  // namespace rotwave
