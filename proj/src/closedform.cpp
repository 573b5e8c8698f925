#include "rotwave/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "rotwave/elliptic.hpp"
#include "rotwave/errors.hpp"
#include "rotwave/roots.hpp"

namespace rotwave {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double newton_on_derivative(std::span<const double> P, double x, int multiplicity) {
  poly::Coeffs<double> d(P.begin(), P.end());
  for (int i = 1; i < multiplicity; ++i) d = poly::derivative<double>(d);
  const auto dd = poly::derivative<double>(d);
  for (int it = 0; it < 4; ++it) {
    const double fx = poly::horner<double>(d, x);
    const double dfx = poly::horner<double>(dd, x);
    if (dfx == 0.0) break;
    const double nx = x - fx / dfx;
    if (!std::isfinite(nx) || std::abs(poly::horner<double>(d, nx)) > std::abs(fx)) break;
    x = nx;
  }
  return x;
}

}  // namespace

OrbitPolynomial orbit_polynomial(const FirstIntegral& fi, double h) {
  if (fi.singular_potential()) {
    throw UnsupportedForClosedForm(
        fmt::format("level set of theta={} carries a logarithmic or pole term; no polynomial orbit equation",
                    fi.theta.str()));
  }
  if (fi.ySquaredPowerExponent > 0) {
    throw UnsupportedForClosedForm(
        fmt::format("theta={}: y^2 is weighted by (phi - s)^{}, so y^2 is rational in phi", fi.theta.str(),
                    fi.ySquaredPowerExponent));
  }
  // y^2 = (p(phi) - h) / (theta/2) * (phi - s)^-(m+1)
  OrbitPolynomial out;
  out.levelH = h;
  out.thetaBranch = fi.theta;
  poly::Coeffs<double> num = fi.polynomialPart;
  if (num.empty()) num.push_back(0.0);
  num[0] -= h;
  const double scale = -1.0 / fi.ySquaredCoefficient;
  for (double& c : num) c *= scale;
  const auto w = poly::binomial_power<double>(fi.shift, -fi.ySquaredPowerExponent);
  out.coefficients = poly::multiply<double>(num, w);
  poly::trim(out.coefficients);
  if (out.coefficients.size() > 5) {
    throw UnsupportedForClosedForm(fmt::format("orbit polynomial has degree {} > 4", out.coefficients.size() - 1));
  }
  return out;
}

OrbitPolynomial orbit_polynomial(const WaveParams& wp, double h) {
  auto out = orbit_polynomial(build_first_integral(wp), h);
  out.source = wp;
  return out;
}

const char* to_string(RootPattern p) {
  switch (p) {
    case RootPattern::FourRealSimple: return "four-real-simple";
    case RootPattern::TwoRealComplexPair: return "two-real-complex-pair";
    case RootPattern::DoubleAndTwoSimple: return "double-and-two-simple";
    case RootPattern::Other: return "other";
  }
  return "?";
}

const char* to_string(WaveVariant v) {
  switch (v) {
    case WaveVariant::CnPeriodic: return "CnPeriodic";
    case WaveVariant::SnPeriodicRight: return "SnPeriodicRight";
    case WaveVariant::SnPeriodicLeft: return "SnPeriodicLeft";
    case WaveVariant::SolitaryRight: return "SolitaryRight";
    case WaveVariant::SolitaryLeft: return "SolitaryLeft";
    case WaveVariant::NumericOrbit: return "NumericOrbit";
  }
  return "?";
}

poly::Coeffs<double> QuarticFactorization::expand() const {
  poly::Coeffs<double> out{leadingCoefficient};
  for (std::size_t i = 0; i < realRoots.size(); ++i) {
    const poly::Coeffs<double> lin{-realRoots[i], 1.0};
    for (int j = 0; j < rootMultiplicities[i]; ++j) out = poly::multiply<double>(out, lin);
  }
  if (complexPair) {
    const double b1 = complexPair->real();
    const poly::Coeffs<double> quad{std::norm(*complexPair), -2.0 * b1, 1.0};
    out = poly::multiply<double>(out, quad);
  }
  return out;
}

namespace {

RootPattern pattern_of(const QuarticFactorization& f) {
  const auto& mult = f.rootMultiplicities;
  const std::size_t n = mult.size();
  auto simple = [&] { return std::all_of(mult.begin(), mult.end(), [](int m) { return m == 1; }); };
  if (!f.complexPair && n == 4 && simple()) return RootPattern::FourRealSimple;
  if (f.complexPair && n == 2 && simple()) return RootPattern::TwoRealComplexPair;
  if (!f.complexPair && n == 3 && mult[0] == 1 && mult[1] == 2 && mult[2] == 1) return RootPattern::DoubleAndTwoSimple;
  return RootPattern::Other;
}

}  // namespace

QuarticFactorization factor_quartic(const OrbitPolynomial& P, double tol) {
  poly::Coeffs<double> c = P.coefficients;
  poly::trim(c);
  if (c.size() < 3) throw RootPatternError("orbit polynomial must have degree >= 2");
  const auto roots = polynomial_roots(c);
  double scale = 1.0;
  for (const auto& r : roots) scale = std::max(scale, std::abs(r));

  QuarticFactorization out;
  out.leadingCoefficient = c.back();
  out.source = P.source;
  std::vector<double> reals;
  std::vector<std::complex<double>> upper;
  for (const auto& r : roots) {
    const double im = std::abs(r.imag());
    if (im <= tol * scale) {
      reals.push_back(r.real());
    } else if (im <= 10.0 * tol * scale) {
      throw RootPatternError(fmt::format("root {}{:+}i is too close to the real axis to classify", r.real(), r.imag()));
    } else if (r.imag() > 0.0) {
      upper.push_back(r);
    }
  }
  std::sort(reals.begin(), reals.end(), std::greater<>());
  std::vector<std::vector<double>> clusters;
  for (double x : reals) {
    if (!clusters.empty() && clusters.back().back() - x <= tol * scale) {
      clusters.back().push_back(x);
    } else {
      clusters.push_back({x});
    }
  }
  for (const auto& cl : clusters) {
    double mean = 0.0;
    for (double x : cl) mean += x;
    mean /= static_cast<double>(cl.size());
    const int mult = static_cast<int>(cl.size());
    out.realRoots.push_back(newton_on_derivative(c, mean, mult));
    out.rootMultiplicities.push_back(mult);
  }
  if (!upper.empty()) {
    // Polish the complex root by Newton in complex arithmetic.
    std::complex<double> w = upper.front();
    for (int it = 0; it < 3; ++it) {
      std::complex<double> p = c.back();
      std::complex<double> dp = 0.0;
      for (std::size_t i = c.size() - 1; i-- > 0;) {
        dp = dp * w + p;
        p = p * w + c[i];
      }
      if (dp == 0.0) break;
      w -= p / dp;
    }
    out.complexPair = std::complex<double>(w.real(), std::abs(w.imag()));
  }
  out.pattern = upper.size() > 1 ? RootPattern::Other : pattern_of(out);
  return out;
}

QuarticFactorization factorization_from_roots(double lead, std::vector<double> realRoots,
                                              std::vector<int> multiplicities,
                                              std::optional<std::complex<double>> pair) {
  QuarticFactorization out;
  out.leadingCoefficient = lead;
  std::vector<std::size_t> idx(realRoots.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return realRoots[a] > realRoots[b]; });
  for (std::size_t i : idx) {
    out.realRoots.push_back(realRoots[i]);
    out.rootMultiplicities.push_back(multiplicities.at(i));
  }
  if (pair) out.complexPair = std::complex<double>(pair->real(), std::abs(pair->imag()));
  out.pattern = pattern_of(out);
  return out;
}

double WaveSolution::operator()(double xi) const {
  const auto& q = parameters;
  switch (variant) {
    case WaveVariant::SnPeriodicRight: {
      const auto j = jacobi(q.omega * xi, {q.mParam});
      const double s2 = j.sn * j.sn;
      const double p1 = q.p[0], p2 = q.p[1], p3 = q.p[2];
      return (p2 * (p1 - p3) - p3 * (p1 - p2) * s2) / ((p1 - p3) - (p1 - p2) * s2);
    }
    case WaveVariant::SnPeriodicLeft: {
      const auto j = jacobi(q.omega * xi, {q.mParam});
      const double s2 = j.sn * j.sn;
      const double p1 = q.p[0], p3 = q.p[2], p4 = q.p[3];
      return (p4 * (p1 - p3) + p1 * (p3 - p4) * s2) / ((p1 - p3) + (p3 - p4) * s2);
    }
    case WaveVariant::CnPeriodic: {
      const double cn = jacobi(q.omega * xi, {q.mParam}).cn;
      const double p1 = q.p[0], p2 = q.p[1];
      const double A = q.A1, B = q.B1;
      return (p1 * B * (1.0 - cn) + p2 * A * (1.0 + cn)) / ((A + B) + cn * (A - B));
    }
    case WaveVariant::SolitaryRight: {
      const double p1 = q.p[0], p2 = q.p[1], p3 = q.p[2];
      return p2 + 2.0 * q.a / ((p1 - p3) * std::cosh(q.omega * xi) - q.b);
    }
    case WaveVariant::SolitaryLeft: {
      const double p1 = q.p[0], p2 = q.p[1], p3 = q.p[2];
      return p2 - 2.0 * q.a / ((p1 - p3) * std::cosh(q.omega * xi) + q.b);
    }
    case WaveVariant::NumericOrbit: {
      if (samples.empty()) return kNaN;
      if (xi <= samples.front().first) return samples.front().second;
      if (xi >= samples.back().first) return samples.back().second;
      const auto it = std::lower_bound(samples.begin(), samples.end(), xi,
                                       [](const std::pair<double, double>& s, double x) { return s.first < x; });
      const auto& [x1, y1] = *it;
      const auto& [x0, y0] = *(it - 1);
      return y0 + (y1 - y0) * (xi - x0) / (x1 - x0);
    }
  }
  return kNaN;
}

namespace {

void require_negative_lead(const QuarticFactorization& f, const char* what) {
  if (!(f.leadingCoefficient < 0.0)) {
    throw RootPatternError(fmt::format("{} needs a negative leading coefficient, got {}", what, f.leadingCoefficient));
  }
}

double step_for(const WaveSolution& w) { return std::min(0.02, 0.05 / std::max(w.parameters.omega, 1e-12)); }

void attach_residual(WaveSolution& w, const QuarticFactorization& f) {
  w.source = f.source;
  w.orbit = f.expand();
  const auto grid = default_grid(w);
  if (w.source) {
    w.residualReport = ode_residual(*w.source, w, grid);
  } else {
    w.residualReport = orbit_residual(w.orbit, [&w](double x) { return w(x); }, grid);
  }
}

}  // namespace

WaveSolution construct_sn_periodic(const QuarticFactorization& fact, bool right) {
  if (fact.pattern != RootPattern::FourRealSimple) {
    throw RootPatternError(fmt::format("sn-periodic wave needs four simple real roots, pattern is {}",
                                       to_string(fact.pattern)));
  }
  require_negative_lead(fact, "sn-periodic wave");
  WaveSolution w;
  w.variant = right ? WaveVariant::SnPeriodicRight : WaveVariant::SnPeriodicLeft;
  auto& q = w.parameters;
  for (int i = 0; i < 4; ++i) q.p[static_cast<std::size_t>(i)] = fact.realRoots[static_cast<std::size_t>(i)];
  const double p1 = q.p[0], p2 = q.p[1], p3 = q.p[2], p4 = q.p[3];
  q.leadMagnitude = -fact.leadingCoefficient;
  q.mParam = (p1 - p2) * (p3 - p4) / ((p1 - p3) * (p2 - p4));
  q.omega = 0.5 * std::sqrt(q.leadMagnitude * (p1 - p3) * (p2 - p4));
  q.omegaAlt = 2.0 / std::sqrt((p1 - p3) * (p2 - p4)) * std::sqrt(q.leadMagnitude / 2.0);
  q.period = 2.0 * complete_K({q.mParam}) / q.omega;
  q.lower = right ? p2 : p4;
  q.upper = right ? p1 : p3;
  w.notes = right ? "oscillates on [p2, p1]; xi = 0 at p2"
                  : "oscillates on [p4, p3]; xi = 0 at p4; profile (p4(p1-p3) + p1(p3-p4) sn^2)/((p1-p3) + (p3-p4) sn^2)";
  if (std::abs(q.omega - q.omegaAlt) > 1e-12 * q.omega) {
    w.notes += fmt::format("; omega = (1/2) sqrt(|lead| (p1-p3)(p2-p4)) = {:.17g}, alternative constant {:.17g} fails "
                           "the residual check",
                           q.omega, q.omegaAlt);
  }
  attach_residual(w, fact);
  return w;
}

WaveSolution construct_cn_periodic(const QuarticFactorization& fact) {
  if (fact.pattern != RootPattern::TwoRealComplexPair) {
    throw RootPatternError(fmt::format("cn-periodic wave needs two simple real roots and a complex pair, pattern is {}",
                                       to_string(fact.pattern)));
  }
  require_negative_lead(fact, "cn-periodic wave");
  WaveSolution w;
  w.variant = WaveVariant::CnPeriodic;
  auto& q = w.parameters;
  q.p = {fact.realRoots[0], fact.realRoots[1], kNaN, kNaN};
  const double p1 = q.p[0], p2 = q.p[1];
  q.b1 = fact.complexPair->real();
  q.a1 = fact.complexPair->imag();
  q.A1 = std::hypot(p1 - q.b1, q.a1);
  q.B1 = std::hypot(p2 - q.b1, q.a1);
  q.leadMagnitude = -fact.leadingCoefficient;
  const double dA = q.A1 - q.B1;
  q.mParam = std::clamp(((p1 - p2) * (p1 - p2) - dA * dA) / (4.0 * q.A1 * q.B1), 0.0, 1.0);
  q.omega = std::sqrt(q.leadMagnitude * q.A1 * q.B1);
  q.omegaAlt = std::sqrt(q.A1 * q.B1 * q.leadMagnitude / 2.0);
  q.period = 4.0 * complete_K({q.mParam}) / q.omega;
  q.lower = p2;
  q.upper = p1;
  w.notes = "oscillates on [p2, p1]; xi = 0 at p2; profile (p1 B1 (1-cn) + p2 A1 (1+cn))/((A1+B1) + (A1-B1) cn), "
            "elliptic parameter m = ((p1-p2)^2 - (A1-B1)^2)/(4 A1 B1)";
  attach_residual(w, fact);
  return w;
}

WaveSolution construct_solitary(const QuarticFactorization& fact, bool right) {
  if (fact.pattern != RootPattern::DoubleAndTwoSimple) {
    throw RootPatternError(fmt::format("solitary wave needs p1 > p2 (double) > p3, pattern is {}",
                                       to_string(fact.pattern)));
  }
  require_negative_lead(fact, "solitary wave");
  WaveSolution w;
  w.variant = right ? WaveVariant::SolitaryRight : WaveVariant::SolitaryLeft;
  auto& q = w.parameters;
  q.p = {fact.realRoots[0], fact.realRoots[1], fact.realRoots[2], kNaN};
  const double p1 = q.p[0], p2 = q.p[1], p3 = q.p[2];
  q.leadMagnitude = -fact.leadingCoefficient;
  q.a = (p1 - p2) * (p2 - p3);
  q.b = p1 - 2.0 * p2 + p3;
  q.omega = std::sqrt(q.leadMagnitude * q.a);
  q.omegaAlt = std::sqrt(q.a * q.leadMagnitude / 2.0);
  q.mParam = 1.0;
  q.period = std::numeric_limits<double>::infinity();
  q.lower = right ? p2 : p3;
  q.upper = right ? p1 : p2;
  w.notes = right ? "homoclinic to p2 through p1: p2 + 2a/((p1-p3) cosh(omega xi) - b)"
                  : "homoclinic to p2 through p3: p2 - 2a/((p1-p3) cosh(omega xi) + b)";
  attach_residual(w, fact);
  return w;
}

Derivatives extrapolated_derivatives(const std::function<double(double)>& fn, double x, double h0) {
  constexpr int kTab = 10;
  constexpr double kCon = 1.4;
  constexpr double kCon2 = kCon * kCon;
  constexpr double kSafe = 2.0;
  const double f0 = fn(x);
  Derivatives out;
  for (int order = 1; order <= 2; ++order) {
    auto diff = [&](double h) {
      const double fp = fn(x + h);
      const double fm = fn(x - h);
      return order == 1 ? (fp - fm) / (2.0 * h) : (fp - 2.0 * f0 + fm) / (h * h);
    };
    std::array<std::array<double, kTab>, kTab> a{};
    double hh = h0;
    a[0][0] = diff(hh);
    double err = std::numeric_limits<double>::max();
    double ans = a[0][0];
    for (int i = 1; i < kTab; ++i) {
      hh /= kCon;
      a[0][i] = diff(hh);
      double fac = kCon2;
      for (int j = 1; j <= i; ++j) {
        a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
        fac *= kCon2;
        const double errt = std::max(std::abs(a[j][i] - a[j - 1][i]), std::abs(a[j][i] - a[j - 1][i - 1]));
        if (errt <= err) {
          err = errt;
          ans = a[j][i];
        }
      }
      if (std::abs(a[i][i] - a[i - 1][i - 1]) >= kSafe * err) break;
    }
    (order == 1 ? out.d1 : out.d2) = ans;
  }
  return out;
}

double ode_residual(const WaveParams& wp, const std::function<double(double)>& profile,
                    std::span<const double> xiGrid) {
  return ode_residual(wp, profile, xiGrid, 0.02);
}

double ode_residual(const WaveParams& wp, const std::function<double(double)>& profile,
                    std::span<const double> xiGrid, double h0) {
  const double th = wp.theta.value();
  double worst = 0.0;
  for (double xi : xiGrid) {
    const double phi = profile(xi);
    const auto d = extrapolated_derivatives(profile, xi, h0);
    const double r = wp.C1 * d.d2 + eval_f(wp, phi) - 0.5 * (1.0 - 2.0 * th) * d.d1 * d.d1 - th * phi * d.d2;
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

double ode_residual(const WaveParams& wp, const WaveSolution& wave, std::span<const double> xiGrid) {
  return ode_residual(wp, [&wave](double x) { return wave(x); }, xiGrid, step_for(wave));
}

double orbit_residual(std::span<const double> P, const std::function<double(double)>& profile,
                      std::span<const double> xiGrid) {
  const auto dP = poly::derivative<double>(P);
  double worst = 0.0;
  for (double xi : xiGrid) {
    const double phi = profile(xi);
    const auto d = extrapolated_derivatives(profile, xi, 0.02);
    worst = std::max(worst, std::abs(d.d2 - 0.5 * poly::horner<double>(dP, phi)));
  }
  return worst;
}

std::vector<double> default_grid(const WaveSolution& wave, std::size_t n) {
  std::vector<double> g(n);
  const bool finitePeriod = std::isfinite(wave.parameters.period) && wave.parameters.period > 0.0;
  double lo = -30.0;
  double hi = 30.0;
  if (wave.variant == WaveVariant::NumericOrbit && !wave.samples.empty()) {
    lo = wave.samples.front().first;
    hi = wave.samples.back().first;
  } else if (finitePeriod) {
    lo = 0.0;
    hi = wave.parameters.period;
  }
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

}  // namespace rotwave
