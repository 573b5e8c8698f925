#include "rotwave/roots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include <boost/math/tools/toms748_solve.hpp>

namespace rotwave {

namespace {

double eval3(double a0, double a1, double a2, double a3, double x) { return ((a3 * x + a2) * x + a1) * x + a0; }
double deval3(double a1, double a2, double a3, double x) { return (3.0 * a3 * x + 2.0 * a2) * x + a1; }

// One Newton step on the (multiplicity-1)-th derivative, which has a simple root there.
double polish(double a0, double a1, double a2, double a3, double x, int multiplicity) {
  for (int it = 0; it < 3; ++it) {
    double fx = 0.0;
    double dfx = 0.0;
    if (multiplicity == 1) {
      fx = eval3(a0, a1, a2, a3, x);
      dfx = deval3(a1, a2, a3, x);
    } else if (multiplicity == 2) {
      fx = deval3(a1, a2, a3, x);
      dfx = 6.0 * a3 * x + 2.0 * a2;
    } else {
      fx = 6.0 * a3 * x + 2.0 * a2;
      dfx = 6.0 * a3;
    }
    if (dfx == 0.0 || !std::isfinite(dfx)) break;
    const double step = fx / dfx;
    const double nx = x - step;
    if (!std::isfinite(nx)) break;
    // Accept only steps that do not increase the residual of the original cubic.
    if (multiplicity == 1 && std::abs(eval3(a0, a1, a2, a3, nx)) > std::abs(eval3(a0, a1, a2, a3, x))) break;
    x = nx;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

std::vector<RealRoot> merge(std::vector<double> xs, double relTol) {
  std::sort(xs.begin(), xs.end());
  std::vector<RealRoot> out;
  double scale = 1.0;
  for (double x : xs) scale = std::max(scale, std::abs(x));
  const double tol = relTol * scale;
  std::vector<std::vector<double>> clusters;
  for (double x : xs) {
    if (!clusters.empty() && x - clusters.back().back() <= tol) {
      clusters.back().push_back(x);
    } else {
      clusters.push_back({x});
    }
  }
  for (const auto& c : clusters) {
    double mean = 0.0;
    for (double x : c) mean += x;
    out.push_back({mean / static_cast<double>(c.size()), static_cast<int>(c.size())});
  }
  return out;
}

}  // namespace

std::vector<RealRoot> cubic_real_roots(double a0, double a1, double a2, double a3, double relTol) {
  if (a3 == 0.0) {
    if (a2 == 0.0) {
      if (a1 == 0.0) return {};
      return {{-a0 / a1, 1}};
    }
    const double disc = a1 * a1 - 4.0 * a2 * a0;
    const double scale = std::max({a1 * a1, std::abs(4.0 * a2 * a0), 1e-300});
    if (std::abs(disc) <= relTol * scale) return {{-a1 / (2.0 * a2), 2}};
    if (disc < 0.0) return {};
    // Citardauq form avoids cancellation.
    const double q = -0.5 * (a1 + std::copysign(std::sqrt(disc), a1));
    std::vector<double> xs{q / a2};
    if (q != 0.0) xs.push_back(a0 / q);
    else xs.push_back(-a1 / a2 - xs[0]);
    auto roots = merge(xs, relTol);
    for (auto& r : roots) r.value = polish(a0, a1, a2, 0.0, r.value, r.multiplicity);
    return roots;
  }

  const double b = a2 / a3;
  const double c = a1 / a3;
  const double d = a0 / a3;
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  const double shift = -b / 3.0;
  const double scale = std::max({1.0, std::abs(b), std::sqrt(std::abs(c)), std::cbrt(std::abs(d))});

  std::vector<double> xs;
  if (std::abs(p) <= relTol * scale * scale && std::abs(q) <= relTol * scale * scale * scale) {
    xs = {shift, shift, shift};
  } else {
    const double disc = q * q / 4.0 + p * p * p / 27.0;  // < 0 => three distinct real roots
    if (disc < 0.0) {
      const double r = 2.0 * std::sqrt(-p / 3.0);
      const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
      const double phi = std::acos(arg) / 3.0;
      for (int k = 0; k < 3; ++k) xs.push_back(shift + r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0));
    } else {
      const double A = -std::copysign(std::cbrt(std::abs(q) / 2.0 + std::sqrt(disc)), q);
      const double B = (A != 0.0) ? -p / (3.0 * A) : 0.0;
      xs.push_back(shift + A + B);
      // Conjugate pair -(A+B)/2 +- i sqrt(3)/2 (A - B); a tiny imaginary part means a double root.
      const double im = std::sqrt(3.0) / 2.0 * std::abs(A - B);
      if (im <= relTol * scale) {
        const double re = shift - (A + B) / 2.0;
        xs.push_back(re);
        xs.push_back(re);
      }
    }
  }
  auto roots = merge(xs, relTol);
  for (auto& r : roots) r.value = polish(a0, a1, a2, a3, r.value, r.multiplicity);
  return roots;
}

double cauchy_bound(std::span<const double> coeffs) {
  std::size_t n = coeffs.size();
  while (n > 0 && coeffs[n - 1] == 0.0) --n;
  if (n <= 1) return 0.0;
  const double lead = std::abs(coeffs[n - 1]);
  double mx = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) mx = std::max(mx, std::abs(coeffs[i]) / lead);
  return 1.0 + mx;
}

std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs) {
  using cd = std::complex<double>;
  std::size_t n = coeffs.size();
  while (n > 0 && coeffs[n - 1] == 0.0) --n;
  if (n <= 1) return {};
  const std::size_t deg = n - 1;
  std::vector<double> c(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(n));

  auto eval = [&](cd x, cd& dp) {
    cd p = c[deg];
    dp = 0.0;
    for (std::size_t i = deg; i-- > 0;) {
      dp = dp * x + p;
      p = p * x + c[i];
    }
    return p;
  };

  // Initial guesses on a circle of radius from the Fujiwara-like bound, rotated off the real axis.
  const double lead = std::abs(c[deg]);
  double radius = 0.0;
  for (std::size_t i = 0; i < deg; ++i)
    radius = std::max(radius, std::pow(std::abs(c[i]) / lead, 1.0 / static_cast<double>(deg - i)));
  if (radius == 0.0) radius = 1.0;
  std::vector<cd> z(deg);
  for (std::size_t k = 0; k < deg; ++k) {
    const double ang = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.25) / static_cast<double>(deg) + 0.4;
    z[k] = std::polar(radius, ang);
  }

  for (int iter = 0; iter < 500; ++iter) {
    double maxStep = 0.0;
    for (std::size_t k = 0; k < deg; ++k) {
      cd dp;
      const cd p = eval(z[k], dp);
      if (p == cd(0.0)) continue;
      const cd ratio = p / dp;
      cd sum = 0.0;
      for (std::size_t j = 0; j < deg; ++j)
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      const cd step = ratio / (1.0 - ratio * sum);
      if (std::isfinite(step.real()) && std::isfinite(step.imag())) {
        z[k] -= step;
        maxStep = std::max(maxStep, std::abs(step) / std::max(1.0, std::abs(z[k])));
      }
    }
    if (maxStep < 1e-16) break;
  }
  for (auto& zk : z) {
    for (int it = 0; it < 2; ++it) {
      cd dp;
      const cd p = eval(zk, dp);
      if (dp == cd(0.0)) break;
      const cd nz = zk - p / dp;
      cd dq;
      if (std::abs(eval(nz, dq)) < std::abs(p)) zk = nz;
      else break;
    }
  }
  std::sort(z.begin(), z.end(), [](cd a, cd b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); });
  return z;
}

double bracketed_root(const std::function<double(double)>& fn, double a, double b, double fa, double fb) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (a > b) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  std::uintmax_t maxIter = 200;
  auto tol = boost::math::tools::eps_tolerance<double>(52);
  const auto [lo, hi] = boost::math::tools::toms748_solve(fn, a, b, fa, fb, tol, maxIter);
  return 0.5 * (lo + hi);
}

std::vector<double> scan_roots(const std::function<double(double)>& fn, double lo, double hi, std::size_t cells) {
  std::vector<double> out;
  if (!(hi > lo) || cells == 0) return out;
  double xPrev = lo;
  double fPrev = fn(lo);
  if (fPrev == 0.0) out.push_back(lo);
  for (std::size_t i = 1; i <= cells; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(cells);
    const double fx = fn(x);
    if (fx == 0.0) {
      out.push_back(x);
    } else if (fPrev != 0.0 && std::isfinite(fPrev) && std::isfinite(fx) && (fPrev < 0.0) != (fx < 0.0)) {
      out.push_back(bracketed_root(fn, xPrev, x, fPrev, fx));
    }
    xPrev = x;
    fPrev = fx;
  }
  return out;
}

}  // namespace rotwave
