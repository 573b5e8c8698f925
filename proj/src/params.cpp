#include "rotwave/params.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "rotwave/errors.hpp"

namespace rotwave {

Theta::Theta(std::int64_t num, std::int64_t den) {
  if (den == 0) throw UnsupportedTheta("theta denominator is zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num <= 0) throw UnsupportedTheta(fmt::format("theta must be positive, got {}/{}", num, den));
  const auto g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
  // (1 - 3 num/den) / (num/den) = (den - 3 num) / num is integral iff num | den; reduced => num == 1.
  if (num_ != 1) {
    throw UnsupportedTheta(fmt::format("unsupported theta {}/{}: (1-3theta)/theta is not an integer", num_, den_));
  }
  if (den_ > 1000) throw UnsupportedTheta(fmt::format("theta 1/{} is too small", den_));
  m_ = static_cast<int>(den_ - 3);
}

Theta Theta::parse(std::string_view text) {
  auto to_int = [&](std::string_view part) {
    std::int64_t v = 0;
    const auto* first = part.data();
    const auto* last = part.data() + part.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || part.empty()) {
      throw UnsupportedTheta(fmt::format("cannot parse theta '{}'", text));
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return {to_int(text), 1};
  return {to_int(text.substr(0, slash)), to_int(text.substr(slash + 1))};
}

std::string Theta::str() const {
  if (den_ == 1) return fmt::format("{}", num_);
  return fmt::format("{}/{}", num_, den_);
}

WaveParams WaveParams::direct(Theta theta, double C1, double C2, double C3, double K) {
  WaveParams wp;
  wp.theta = theta;
  wp.c = std::numeric_limits<double>::quiet_NaN();
  wp.C1 = C1;
  wp.C2 = C2;
  wp.C3 = C3;
  wp.K = K;
  return wp;
}

CoriolisParams derive_coriolis(double Omega) {
  if (!std::isfinite(Omega) || Omega < 0.0) {
    throw std::invalid_argument(fmt::format("Omega must be finite and >= 0, got {}", Omega));
  }
  CoriolisParams cp;
  cp.Omega = Omega;
  // sqrt(1+W^2) - W written without cancellation.
  const double k = 1.0 / (std::hypot(1.0, Omega) + Omega);
  const double k2 = k * k;
  const double kp = 1.0 + k2;
  cp.k = k;
  cp.alpha = k / kp;
  cp.beta0 = k * (k2 * k2 + 6.0 * k2 - 1.0) / (6.0 * kp);
  cp.beta = (3.0 * k2 * k2 + 8.0 * k2 - 1.0) / (6.0 * kp);
  // (k^2 - 1) = -(1 - k)(1 + k); at Omega = 0 this is exactly zero.
  const double km1 = (k - 1.0) * (k + 1.0);
  cp.omega1 = -3.0 * k * km1 * (k2 - 2.0) / (2.0 * kp * kp * kp);
  cp.omega2 = (k2 - 2.0) * km1 * km1 * (8.0 * k2 - 1.0) / (2.0 * std::pow(kp, 5));
  return cp;
}

double omega_from_k(double k) {
  if (!(k > 0.0) || k > 1.0) throw std::invalid_argument(fmt::format("k must lie in (0, 1], got {}", k));
  return (1.0 - k) * (1.0 + k) / (2.0 * k);
}

WaveParams derive_wave_params(const CoriolisParams& cp, double c, Theta theta) {
  if (!std::isfinite(c)) throw std::invalid_argument("wave speed c must be finite");
  if (std::abs(cp.beta) < 1e-12) {
    throw DegenerateParameters(fmt::format("beta = {} vanishes at Omega = {}; beta0/beta undefined", cp.beta, cp.Omega));
  }
  WaveParams wp;
  wp.theta = theta;
  wp.c = c;
  wp.C1 = c - cp.beta0 / cp.beta;
  wp.C2 = cp.omega1 / (3.0 * cp.alpha * cp.alpha);
  wp.C3 = cp.omega2 / (4.0 * cp.alpha * cp.alpha * cp.alpha);
  wp.K = -c + cp.k;
  return wp;
}

}  // namespace rotwave
