#include "rotwave/field.hpp"

#include <array>
#include <cmath>

#include <fmt/format.h>

#include "rotwave/errors.hpp"

namespace rotwave {

double eval_f(const WaveParams& wp, double phi) { return phi * eval_g(wp, phi); }

double eval_df(const WaveParams& wp, double phi) {
  return ((4.0 * wp.C3 * phi + 3.0 * wp.C2) * phi + 1.0) * phi + wp.K;
}

double eval_g(const WaveParams& wp, double phi) { return ((wp.C3 * phi + wp.C2) * phi + 0.5) * phi + wp.K; }

double eval_dg(const WaveParams& wp, double phi) { return (3.0 * wp.C3 * phi + 2.0 * wp.C2) * phi + 0.5; }

double eval_d2g(const WaveParams& wp, double phi) { return 6.0 * wp.C3 * phi + 2.0 * wp.C2; }

poly::Coeffs<double> f_coefficients(const WaveParams& wp) { return {0.0, wp.K, 0.5, wp.C2, wp.C3}; }

Velocity rhs_singular(const WaveParams& wp, PhasePoint p) {
  const double den = wp.theta.value() * p.phi - wp.C1;
  if (den == 0.0) {
    throw SingularityError(fmt::format("singular system evaluated on the singular line phi = {}", p.phi), p.phi);
  }
  const double num = (wp.theta.value() - 0.5) * p.y * p.y + eval_f(wp, p.phi);
  return {p.y, num / den};
}

Velocity rhs_regular(const WaveParams& wp, PhasePoint p) {
  const double th = wp.theta.value();
  return {p.y * (th * p.phi - wp.C1), (th - 0.5) * p.y * p.y + eval_f(wp, p.phi)};
}

namespace {

double int_pow(double x, int e) {
  if (e >= 0) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
  }
  return 1.0 / int_pow(x, -e);
}

std::string describe(const WaveParams& wp, const FirstIntegral& fi) {
  const int m = wp.m();
  if (m == 1) {
    // Sextic closed form with prefactor -(1/8)(phi - 4C1)^2.
    const std::array<double, 7> expected{0.0,
                                         0.0,
                                         -2.0 * wp.C1 * wp.K,
                                         (wp.K - 2.0 * wp.C1) / 3.0,
                                         0.125 - wp.C1 * wp.C2,
                                         (wp.C2 - 4.0 * wp.C1 * wp.C3) / 5.0,
                                         wp.C3 / 6.0};
    bool same = fi.polynomialPart.size() == expected.size();
    for (std::size_t i = 0; same && i < expected.size(); ++i) {
      const double tol = 1e-12 * (1.0 + std::abs(expected[i]));
      same = std::abs(fi.polynomialPart[i] - expected[i]) <= tol;
    }
    return same ? "theta=1/4: matches the sextic closed form -(1/8)(phi-4C1)^2 y^2 + C3/6 phi^6 + "
                  "(C2-4C1C3)/5 phi^5 + (1/8-C1C2) phi^4 + (K-2C1)/3 phi^3 - 2C1K phi^2 coefficient-wise"
                : "theta=1/4: DIFFERS from the sextic closed form";
  }
  if (m == -1) {
    return "theta=1/2: y^2 term is -(1/4) y^2 with no (phi-4C1)^2 prefactor; phi^4 coefficient is C3/4 "
           "(not 1/4); log term (2C1K+2C1^2+8C1^3C2+16C1^4C3) ln|phi-2C1|; the variant with prefactor "
           "-(1/2)(phi-4C1)^2 and unit quartic coefficient is not conserved";
  }
  if (m == -2) {
    return "theta=1: y^2 term is -(1/2) y^2/(phi-C1); potential carries f'(C1) ln|phi-C1| and "
           "-f(C1)/(phi-C1); the polynomial form y^2(phi-C1) + (2/5)C3 phi^5 + (1/2)C2 phi^4 + phi^3/3 + "
           "K phi^2 is not conserved";
  }
  return fmt::format("theta={}: polynomial potential from the binomial expansion of (phi-C1/theta)^{}",
                     wp.theta.str(), m);
}

}  // namespace

bool FirstIntegral::singular_potential() const {
  if (logCoefficient != 0.0) return true;
  for (double c : inversePowerPart)
    if (c != 0.0) return true;
  return false;
}

double FirstIntegral::potential(double phi) const { return potential_at(phi, phi - shift); }

double FirstIntegral::potential_at(double phi, double t) const {
  double v = poly::horner<double>(polynomialPart, phi);
  if (!singular_potential()) return v;
  if (t == 0.0) {
    throw SingularityError(fmt::format("first integral is singular at phi = {}", phi), phi);
  }
  if (logCoefficient != 0.0) v += logCoefficient * std::log(std::abs(t));
  const double inv = 1.0 / t;
  double pw = inv;
  for (double c : inversePowerPart) {
    v += c * pw;
    pw *= inv;
  }
  return v;
}

double FirstIntegral::potential_derivative(double phi) const {
  const auto d = poly::derivative<double>(polynomialPart);
  double v = poly::horner<double>(d, phi);
  if (!singular_potential()) return v;
  const double t = phi - shift;
  if (t == 0.0) throw SingularityError(fmt::format("first integral is singular at phi = {}", phi), phi);
  const double inv = 1.0 / t;
  v += logCoefficient * inv;
  double pw = inv * inv;
  for (std::size_t j = 0; j < inversePowerPart.size(); ++j) {
    v -= static_cast<double>(j + 1) * inversePowerPart[j] * pw;
    pw *= inv;
  }
  return v;
}

double FirstIntegral::y_weight(double phi) const { return y_weight_at(phi, phi - shift); }

double FirstIntegral::y_weight_at(double phi, double t) const {
  if (ySquaredPowerExponent < 0 && t == 0.0) {
    throw SingularityError(fmt::format("y^2 coefficient has a pole at phi = {}", phi), phi);
  }
  return ySquaredCoefficient * int_pow(t, ySquaredPowerExponent);
}

double FirstIntegral::y_weight_derivative(double phi) const {
  if (ySquaredPowerExponent == 0) return 0.0;
  const double t = phi - shift;
  if (ySquaredPowerExponent - 1 < 0 && t == 0.0) {
    throw SingularityError(fmt::format("y^2 coefficient has a pole at phi = {}", phi), phi);
  }
  return ySquaredCoefficient * ySquaredPowerExponent * int_pow(t, ySquaredPowerExponent - 1);
}

double FirstIntegral::term_magnitude(PhasePoint p) const {
  double mag = std::abs(y_weight(p.phi) * p.y * p.y);
  double xp = 1.0;
  for (double c : polynomialPart) {
    mag += std::abs(c * xp);
    xp *= p.phi;
  }
  if (singular_potential()) {
    const double t = p.phi - shift;
    if (logCoefficient != 0.0) mag += std::abs(logCoefficient * std::log(std::abs(t)));
    double pw = 1.0 / t;
    for (double c : inversePowerPart) {
      mag += std::abs(c * pw);
      pw /= t;
    }
  }
  return mag;
}

LevelValue eval_H(const FirstIntegral& fi, PhasePoint p) {
  return {fi.y_weight(p.phi) * p.y * p.y + fi.potential(p.phi)};
}

LevelValue eval_H_from_line(const FirstIntegral& fi, double t, double y) {
  const double phi = fi.shift + t;
  return {fi.y_weight_at(phi, t) * y * y + fi.potential_at(phi, t)};
}

Gradient grad_H(const FirstIntegral& fi, PhasePoint p) {
  return {fi.y_weight_derivative(p.phi) * p.y * p.y + fi.potential_derivative(p.phi), 2.0 * fi.y_weight(p.phi) * p.y};
}

FirstIntegral build_first_integral(const WaveParams& wp) {
  FirstIntegral fi;
  fi.theta = wp.theta;
  const int m = wp.m();
  const double s = wp.singular_abscissa();
  if (!std::isfinite(s)) throw std::invalid_argument("C1/theta must be finite");
  fi.shift = s;
  fi.ySquaredCoefficient = -0.5 * wp.theta.value();
  fi.ySquaredPowerExponent = m + 1;
  auto parts = integrate_potential<double>(m, s, wp.C2, wp.C3, wp.K);
  fi.polynomialPart = std::move(parts.polynomial);
  fi.logCoefficient = parts.logCoefficient;
  fi.logArgumentShift = s;
  fi.inversePowerPart = std::move(parts.inversePowers);
  fi.validityNote = describe(wp, fi);

  // dH/dxi = H_phi y + H_y y' must vanish off the singular line.
  const double scale = std::max(1.0, std::abs(s));
  constexpr std::array<double, 6> dphis{-1.7, -0.9, -0.35, 0.45, 1.1, 2.3};
  constexpr std::array<double, 3> ys{-1.3, 0.4, 2.0};
  double worst = 0.0;
  for (double d : dphis) {
    for (double y : ys) {
      const PhasePoint p{s + d * scale, y * scale};
      const auto v = rhs_singular(wp, p);
      const auto gH = grad_H(fi, p);
      const double a = gH.dphi * v.dphi;
      const double b = gH.dy * v.dy;
      const double mag = std::abs(a) + std::abs(b);
      if (mag > 0.0) worst = std::max(worst, std::abs(a + b) / mag);
    }
  }
  if (!(worst <= 1e-10)) {
    throw ConservationDefect(
        fmt::format("first integral for theta={} failed its conservation self-check (defect {:.3e})", wp.theta.str(),
                    worst));
  }
  return fi;
}

double conservation_defect(const WaveParams& wp, const std::function<double(PhasePoint)>& H, PhasePoint p,
                           double relStep) {
  const double hp = relStep * std::max(1.0, std::abs(p.phi));
  const double hy = relStep * std::max(1.0, std::abs(p.y));
  // Central differences at h and h/2 combined by one Richardson step (error O(h^4)).
  auto richardson = [](const std::function<double(double)>& g, double h) {
    const double d1 = (g(h) - g(-h)) / (2.0 * h);
    const double d2 = (g(0.5 * h) - g(-0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
  };
  const double Hphi = richardson([&](double d) { return H({p.phi + d, p.y}); }, hp);
  const double Hy = richardson([&](double d) { return H({p.phi, p.y + d}); }, hy);
  const auto v = rhs_singular(wp, p);
  const double a = Hphi * v.dphi;
  const double b = Hy * v.dy;
  const double mag = std::abs(a) + std::abs(b);
  if (mag == 0.0) return 0.0;
  return std::abs(a + b) / mag;
}

}  // namespace rotwave
