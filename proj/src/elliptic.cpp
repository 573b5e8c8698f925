#include "rotwave/elliptic.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace rotwave {

namespace {

constexpr int kMaxDepth = 32;

void check_range(double m) {
  if (!(m >= 0.0 && m <= 1.0)) throw std::invalid_argument(fmt::format("elliptic parameter {} outside [0, 1]", m));
}

}  // namespace

double complete_K(EllipticModulus mu) {
  check_range(mu.mParam);
  if (mu.mParam == 1.0) throw std::domain_error("K(m) diverges at m = 1");
  double a = 1.0;
  double b = std::sqrt(1.0 - mu.mParam);
  for (int i = 0; i < kMaxDepth; ++i) {
    if (std::abs(a - b) <= 2.0 * std::numeric_limits<double>::epsilon() * a) break;
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi / (a + b);
}

JacobiTriple jacobi(double u, EllipticModulus mu) {
  const double m = mu.mParam;
  check_range(m);
  if (m == 1.0) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }
  if (m == 0.0) return {std::sin(u), std::cos(u), 1.0};

  const double period = 4.0 * complete_K(mu);
  double x = u - period * std::round(u / period);

  // Bulirsch's descending Gauss/Landen scheme on the complementary parameter.
  static const double tol = std::sqrt(std::numeric_limits<double>::epsilon() * 0.01);
  std::array<double, kMaxDepth> ms{};
  std::array<double, kMaxDepth> ns{};
  double mc = 1.0 - m;
  double c = 0.0;
  int l = 0;
  for (double a = 1.0; l < kMaxDepth; ++l) {
    ms[l] = a;
    ns[l] = mc = std::sqrt(mc);
    c = 0.5 * (a + mc);
    if (!(std::abs(a - mc) > tol * a)) {
      ++l;
      break;
    }
    mc *= a;
    a = c;
  }
  x *= c;
  JacobiTriple t{std::sin(x), std::cos(x), 1.0};
  if (t.sn != 0.0) {
    double a = t.cn / t.sn;
    c *= a;
    while (l-- > 0) {
      const double b = ms[l];
      a *= c;
      c *= t.dn;
      t.dn = (ns[l] + a) / (b + a);
      a = c / b;
    }
    a = 1.0 / std::sqrt(c * c + 1.0);
    t.sn = t.sn < 0.0 ? -a : a;
    t.cn = c * t.sn;
  }
  return t;
}

}  // namespace rotwave
