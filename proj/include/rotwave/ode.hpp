/**
 * @file ode.hpp
 * @brief Dormand-Prince 5(4) integrator with continuous (dense) output.
 *
 * The caller receives every accepted step together with its interpolant and
 * may stop the integration from the callback; event location is done by the
 * caller on the interpolant.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace rotwave::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct Options {
  double rtol = 1e-12;
  double atol = 1e-14;
  std::array<double, 4> atolWeight{1.0, 1.0, 1.0, 1.0};  ///< per-component multiplier on atol
  double h0 = 0.0;  ///< 0 selects the initial step automatically
  double hmax = std::numeric_limits<double>::infinity();
  std::size_t maxSteps = 2'000'000;
};

enum class Status { Completed, Stopped, StepUnderflow, MaxSteps, NonFinite };

template <std::size_t N>
struct Step {
  double t0 = 0.0;
  double h = 0.0;
  State<N> y0{};
  State<N> y1{};
  std::array<State<N>, 5> rc{};

  [[nodiscard]] double t1() const { return t0 + h; }

  [[nodiscard]] State<N> operator()(double t) const {
    const double s = (t - t0) / h;
    const double s1 = 1.0 - s;
    State<N> out{};
    for (std::size_t i = 0; i < N; ++i)
      out[i] = rc[0][i] + s * (rc[1][i] + s1 * (rc[2][i] + s * (rc[3][i] + s1 * rc[4][i])));
    return out;
  }
};

template <std::size_t N>
struct Result {
  Status status = Status::Completed;
  double t = 0.0;
  State<N> y{};
  std::size_t steps = 0;
  std::size_t rejected = 0;
};

namespace detail {

// Butcher tableau and dense-output weights of the 5(4) pair.
inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                        a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                        a65 = -5103.0 / 18656.0;
inline constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                        a76 = 11.0 / 84.0;
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                        e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

}  // namespace detail

/// Integrates dy/dt = f(t, y) from t0 to t1 (either direction). onStep(const Step&) returns
/// false to stop; the stop is reported as Status::Stopped.
template <std::size_t N, class Rhs, class OnStep>
Result<N> integrate(Rhs&& f, double t0, const State<N>& y0, double t1, const Options& opt, OnStep&& onStep) {
  using namespace detail;
  Result<N> res;
  res.t = t0;
  res.y = y0;
  if (t1 == t0) return res;
  const double dir = t1 > t0 ? 1.0 : -1.0;

  auto norm = [&](const State<N>& err, const State<N>& ya, const State<N>& yb) {
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double w = i < opt.atolWeight.size() ? opt.atolWeight[i] : 1.0;
      const double sk = std::max(opt.atol * w + opt.rtol * std::max(std::abs(ya[i]), std::abs(yb[i])),
                                 std::numeric_limits<double>::min());
      acc += (err[i] / sk) * (err[i] / sk);
    }
    return std::sqrt(acc / static_cast<double>(N));
  };

  State<N> k1 = f(t0, y0);
  double h = opt.h0;
  if (h <= 0.0) {
    // Initial step from the size of y and y' (Hairer, Norsett, Wanner, II.4).
    State<N> zero{};
    const double d0 = norm(y0, y0, zero);
    const double dd1 = norm(k1, y0, zero);
    double hh = (d0 < 1e-5 || dd1 < 1e-5) ? 1e-6 : 0.01 * d0 / dd1;
    hh = std::min(hh, std::abs(t1 - t0));
    State<N> y1{};
    for (std::size_t i = 0; i < N; ++i) y1[i] = y0[i] + dir * hh * k1[i];
    const State<N> k2 = f(t0 + dir * hh, y1);
    State<N> diff{};
    for (std::size_t i = 0; i < N; ++i) diff[i] = k2[i] - k1[i];
    const double dd2 = norm(diff, y0, zero) / hh;
    const double mx = std::max(dd1, dd2);
    const double h1 = mx <= 1e-15 ? std::max(1e-6, hh * 1e-3) : std::pow(0.01 / mx, 1.0 / 5.0);
    h = std::min(100.0 * hh, h1);
  }
  h = std::min(h, opt.hmax);

  double t = t0;
  State<N> y = y0;
  double facOld = 1e-4;
  bool lastRejected = false;
  while (true) {
    if (res.steps >= opt.maxSteps) {
      res.status = Status::MaxSteps;
      break;
    }
    const double remaining = std::abs(t1 - t);
    bool last = false;
    if (h >= remaining) {
      h = remaining;
      last = true;
    }
    if (h <= 1e3 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
      res.status = Status::StepUnderflow;
      break;
    }
    const double hs = dir * h;
    State<N> tmp{};
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + hs * a21 * k1[i];
    const State<N> k2 = f(t + c2 * hs, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
    const State<N> k3 = f(t + c3 * hs, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    const State<N> k4 = f(t + c4 * hs, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    const State<N> k5 = f(t + c5 * hs, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    const State<N> k6 = f(t + hs, tmp);
    State<N> ynew{};
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] = y[i] + hs * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    const State<N> k7 = f(t + hs, ynew);
    State<N> err{};
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) {
      err[i] = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      finite = finite && std::isfinite(ynew[i]) && std::isfinite(err[i]);
    }
    const double en = finite ? norm(err, y, ynew) : std::numeric_limits<double>::infinity();

    if (en <= 1.0) {
      Step<N> st;
      st.t0 = t;
      st.h = hs;
      st.y0 = y;
      st.y1 = ynew;
      for (std::size_t i = 0; i < N; ++i) {
        const double dy = ynew[i] - y[i];
        const double bspl = hs * k1[i] - dy;
        st.rc[0][i] = y[i];
        st.rc[1][i] = dy;
        st.rc[2][i] = bspl;
        st.rc[3][i] = dy - hs * k7[i] - bspl;
        st.rc[4][i] = hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      ++res.steps;
      t = last ? t1 : t + hs;
      y = ynew;
      k1 = k7;
      res.t = t;
      res.y = y;
      if (!onStep(static_cast<const Step<N>&>(st))) {
        res.status = Status::Stopped;
        break;
      }
      if (last) break;
      // PI step-size control.
      const double fac11 = std::pow(std::max(en, 1e-10), 0.2 - 0.04 * 0.75);
      double fac = fac11 / std::pow(facOld, 0.04) / 0.9;
      fac = std::clamp(fac, 1.0 / 10.0, 1.0 / 0.2);
      double hnew = h / fac;
      if (lastRejected) hnew = std::min(hnew, h);
      facOld = std::max(en, 1e-4);
      h = std::min(hnew, opt.hmax);
      lastRejected = false;
    } else {
      if (!finite) {
        h *= 0.1;
      } else {
        const double fac11 = std::pow(en, 0.2 - 0.04 * 0.75);
        h /= std::min(1.0 / 0.2, fac11 / 0.9);
      }
      ++res.rejected;
      lastRejected = true;
      if (!std::isfinite(h) || h == 0.0) {
        res.status = Status::NonFinite;
        break;
      }
    }
  }
  return res;
}

}  // namespace rotwave::ode
