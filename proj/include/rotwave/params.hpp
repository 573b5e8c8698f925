/**
 * @file params.hpp
 * @brief Coriolis-derived constants and traveling-wave frame coefficients.
 */
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace rotwave {

/// Exact positive rational theta = num / den in lowest terms.
class Theta {
 public:
  /// Throws UnsupportedTheta unless (1 - 3 theta) / theta is an integer and theta > 0.
  Theta(std::int64_t num, std::int64_t den);

  /// Accepts "p/q" or an integer literal.
  static Theta parse(std::string_view text);

  static Theta quarter() { return {1, 4}; }
  static Theta half() { return {1, 2}; }
  static Theta one() { return {1, 1}; }

  [[nodiscard]] std::int64_t num() const noexcept { return num_; }
  [[nodiscard]] std::int64_t den() const noexcept { return den_; }
  [[nodiscard]] double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Exponent of the integrating factor, m = (1 - 3 theta) / theta.
  [[nodiscard]] int m() const noexcept { return m_; }

  [[nodiscard]] std::string str() const;

  friend bool operator==(const Theta&, const Theta&) = default;

 private:
  std::int64_t num_;
  std::int64_t den_;
  int m_;
};

struct CoriolisParams {
  double Omega = 0.0;
  double k = 1.0;
  double alpha = 0.5;
  double beta0 = 0.5;
  double beta = 5.0 / 6.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
};

struct WaveParams {
  Theta theta = Theta::quarter();
  double c = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double C3 = 0.0;
  double K = 0.0;

  [[nodiscard]] int m() const noexcept { return theta.m(); }

  /// Abscissa of the singular line theta*phi = C1.
  [[nodiscard]] double singular_abscissa() const noexcept {
    return C1 * static_cast<double>(theta.den()) / static_cast<double>(theta.num());
  }

  /// Coefficients given directly rather than from (Omega, c).
  static WaveParams direct(Theta theta, double C1, double C2, double C3, double K);
};

/// Omega must be finite and nonnegative; throws std::invalid_argument otherwise.
[[nodiscard]] CoriolisParams derive_coriolis(double Omega);

/// Throws DegenerateParameters when |beta| is too small to divide by.
[[nodiscard]] WaveParams derive_wave_params(const CoriolisParams& cp, double c, Theta theta);

/// Inverse of k(Omega) on (0, 1].
[[nodiscard]] double omega_from_k(double k);

}  // namespace rotwave
