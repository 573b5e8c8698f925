/**
 * @file roots.hpp
 * @brief Real/complex root isolation for low-degree polynomials with multiplicity merging.
 */
#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace rotwave {

struct RealRoot {
  double value = 0.0;
  int multiplicity = 1;
};

/// Real roots of a0 + a1 x + a2 x^2 + a3 x^3 (degree reduced when leading terms vanish),
/// ascending, each polished by Newton; roots closer than relTol*scale are merged.
[[nodiscard]] std::vector<RealRoot> cubic_real_roots(double a0, double a1, double a2, double a3,
                                                     double relTol = 1e-7);

/// All complex roots of an ascending-coefficient polynomial (Aberth iteration plus
/// Newton polish). Leading zeros are stripped first.
[[nodiscard]] std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs);

/// Cauchy bound: every root satisfies |x| <= bound.
[[nodiscard]] double cauchy_bound(std::span<const double> coeffs);

/// Bracketed root of a continuous function with fa*fb <= 0 (TOMS 748).
[[nodiscard]] double bracketed_root(const std::function<double(double)>& fn, double a, double b,
                                    double fa, double fb);

/// Sign-change scan on [lo, hi] with n cells plus bracketed refinement.
[[nodiscard]] std::vector<double> scan_roots(const std::function<double(double)>& fn, double lo, double hi,
                                             std::size_t cells);

}  // namespace rotwave
