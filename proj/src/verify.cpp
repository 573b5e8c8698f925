#include "rotwave/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <fmt/format.h>

#include "rotwave/closedform.hpp"
#include "rotwave/elliptic.hpp"
#include "rotwave/errors.hpp"

namespace rotwave {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using Clock = std::chrono::steady_clock;

template <class Fn>
CheckResult timed(std::string id, std::string name, double budget, Fn&& body) {
  CheckResult r;
  r.id = std::move(id);
  r.name = std::move(name);
  r.budgetSeconds = budget;
  const auto t0 = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = fmt::format("exception: {}", e.what());
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  std::uint64_t out = 0;
  std::array<std::uint32_t, 2> v{};
  seq.generate(v.begin(), v.end());
  out = (static_cast<std::uint64_t>(v[0]) << 32) | v[1];
  return out;
}

PhasePoint random_start(std::mt19937_64& rng, const WaveParams& wp, double minLineGap) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const double th = wp.theta.value();
  for (;;) {
    const PhasePoint p{U(rng), U(rng)};
    if (std::abs(th * p.phi - wp.C1) >= minLineGap) return p;
  }
}

}  // namespace

double candidate_integral_half(const WaveParams& wp, PhasePoint p) {
  const double C1 = wp.C1, C2 = wp.C2, C3 = wp.C3, K = wp.K;
  const double a = C2 + 2 * C1 * C3;
  const double b = 0.5 + 2 * C1 * C2 + 4 * C1 * C1 * C3;
  const double g = K + C1 + 4 * C1 * C1 * C2 + 8 * C1 * C1 * C1 * C3;
  const double d = 2 * C1 * K + 2 * C1 * C1 + 8 * C1 * C1 * C1 * C2 + 16 * C1 * C1 * C1 * C1 * C3;
  const double x = p.phi;
  return -0.5 * (x - 4 * C1) * (x - 4 * C1) * p.y * p.y + x * x * x * x / 4 + a / 3 * x * x * x + b / 2 * x * x +
         g * x + d * std::log(std::abs(x - 2 * C1));
}

double candidate_integral_one(const WaveParams& wp, PhasePoint p) {
  const double x = p.phi;
  return p.y * p.y * (x - wp.C1) + 0.4 * wp.C3 * std::pow(x, 5) + 0.5 * wp.C2 * std::pow(x, 4) + x * x * x / 3.0 +
         wp.K * x * x;
}

CheckResult check_parameter_identities() {
  return timed("C1", "parameter-identities", 1.0, [](CheckResult& r) {
    const auto cp = derive_coriolis(0.0);
    // Exact values at k = 1 from rational arithmetic.
    const Rational k(1);
    const Rational beta0 = k * (k * k * k * k + 6 * k * k - 1) / (6 * (k * k + 1));
    const Rational beta = (3 * k * k * k * k + 8 * k * k - 1) / (6 * (k * k + 1));
    const Rational ratio = beta0 / beta;
    const double ratioExact = static_cast<double>(ratio);
    const double om1 = std::abs(cp.omega1);
    const double om2 = std::abs(cp.omega2);
    const double ratioErr = std::abs(cp.beta0 / cp.beta - ratioExact);
    // k(Omega) against 50-digit evaluation.
    using Big = boost::multiprecision::cpp_bin_float_50;
    double kErr = 0.0;
    for (double Om : {0.25, 0.5, 1.0, 2.0, 10.0, 100.0}) {
      const Big O(Om);
      const Big kb = boost::multiprecision::sqrt(1 + O * O) - O;
      const double kd = derive_coriolis(Om).k;
      kErr = std::max(kErr, static_cast<double>(boost::multiprecision::abs((Big(kd) - kb) / kb)));
    }
    r.pass = cp.k == 1.0 && om1 <= 1e-15 && om2 <= 1e-15 && ratioErr <= 1e-14 && ratio == Rational(3, 5) &&
             kErr <= 1e-14;
    r.detail = fmt::format("k={} |omega1|={:.3e} |omega2|={:.3e} |beta0/beta-3/5|={:.3e} k(Omega) rel err={:.3e}",
                           cp.k, om1, om2, ratioErr, kErr);
  });
}

CheckResult check_conservation(std::uint64_t seed, Execution exec) {
  return timed("C2", "first-integral-conservation", 60.0, [&](CheckResult& r) {
    std::mt19937_64 rng(derive_seed(seed, 2));
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<DriftCase> cases;
    for (Theta th : {Theta::quarter(), Theta::half(), Theta::one()}) {
      for (int i = 0; i < 100; ++i) {
        double C3 = 1.5 * U(rng);
        if (std::abs(C3) < 0.05) C3 = std::copysign(0.05, C3);
        const double C1 = 0.5 * U(rng);
        const double C2 = U(rng);
        const double K = 0.5 * U(rng);
        const auto wp = WaveParams::direct(th, C1, C2, C3, K);
        cases.push_back({wp, random_start(rng, wp, 0.05), 10.0});
      }
    }
    const auto res = drift_batch(cases, exec);
    double worst[3] = {0, 0, 0};
    int errors = 0;
    for (std::size_t i = 0; i < res.size(); ++i) {
      if (!res[i].error.empty()) ++errors;
      worst[i / 100] = std::max(worst[i / 100], res[i].drift);
    }

    // Exact coefficient replay at theta = 1/4 against the closed polynomial form.
    std::uniform_int_distribution<int> I(-40, 40);
    std::uniform_int_distribution<int> D(1, 17);
    int exactMismatch = 0;
    for (int i = 0; i < 50; ++i) {
      std::array<Rational, 4> q;
      for (auto& v : q) {
        const int num = I(rng);
        v = Rational(num, D(rng));
      }
      const Rational &C1 = q[0], &C2 = q[1], &C3 = q[2], &K = q[3];
      auto parts = integrate_potential<Rational>(1, 4 * C1, C2, C3, K);
      const std::vector<Rational> expected{0,
                                           0,
                                           -2 * C1 * K,
                                           (K - 2 * C1) / 3,
                                           Rational(1, 8) - C1 * C2,
                                           (C2 - 4 * C1 * C3) / 5,
                                           C3 / 6};
      auto got = parts.polynomial;
      got.resize(std::max(got.size(), expected.size()), Rational(0));
      for (std::size_t j = 0; j < got.size(); ++j) {
        const Rational e = j < expected.size() ? expected[j] : Rational(0);
        if (got[j] != e) ++exactMismatch;
      }
      if (parts.logCoefficient != 0 || !parts.inversePowers.empty()) ++exactMismatch;
    }
    const auto fq = build_first_integral(WaveParams::direct(Theta::quarter(), 0.1, 0.2, -0.3, 0.4));
    const bool ySquared = fq.ySquaredCoefficient == -0.125 && fq.ySquaredPowerExponent == 2;

    const double overall = std::max({worst[0], worst[1], worst[2]});
    r.pass = overall <= 1e-8 && errors == 0 && exactMismatch == 0 && ySquared;
    r.detail = fmt::format(
        "max relative drift theta=1/4 {:.3e}, 1/2 {:.3e}, 1 {:.3e} (limit 1e-8); errors {}; exact theta=1/4 "
        "coefficient mismatches {}; y^2 term {}",
        worst[0], worst[1], worst[2], errors, exactMismatch, ySquared ? "-(1/8)(phi-4C1)^2" : "wrong");
  });
}

CheckResult check_integral_audit(std::uint64_t seed) {
  return timed("C3", "candidate-integral-audit", 0.0, [&](CheckResult& r) {
    std::mt19937_64 rng(derive_seed(seed, 3));
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    struct Tally {
      int points = 0;
      int candidateFlagged = 0;
      double machineWorst = 0.0;
    };
    Tally tally[2];
    const Theta thetas[2] = {Theta::half(), Theta::one()};
    for (int t = 0; t < 2; ++t) {
      for (int i = 0; i < 20; ++i) {
        double C1 = 0.5 * U(rng);
        if (std::abs(C1) < 0.1) C1 = std::copysign(0.1, C1);
        const double C2 = U(rng);
        const double C3 = -0.3 - std::abs(U(rng));
        const double K = 0.5 * U(rng);
        const auto wp = WaveParams::direct(thetas[t], C1, C2, C3, K);
        const auto fi = build_first_integral(wp);
        const std::function<double(PhasePoint)> machine = [&](PhasePoint p) { return eval_H(fi, p).h; };
        const std::function<double(PhasePoint)> candidate = [&](PhasePoint p) {
          return t == 0 ? candidate_integral_half(wp, p) : candidate_integral_one(wp, p);
        };
        for (int j = 0; j < 20; ++j) {
          const auto p = random_start(rng, wp, 0.05);
          // Skip points where the flow is nearly stationary and any H looks conserved.
          const auto v = rhs_singular(wp, p);
          if (std::hypot(v.dphi, v.dy) < 1e-3) continue;
          ++tally[t].points;
          if (conservation_defect(wp, candidate, p) > 1e-3) ++tally[t].candidateFlagged;
          tally[t].machineWorst = std::max(tally[t].machineWorst, conservation_defect(wp, machine, p));
        }
      }
    }
    auto flagged = [](const Tally& x) { return x.candidateFlagged >= (9 * x.points) / 10; };
    const bool pass = flagged(tally[0]) && flagged(tally[1]) && tally[0].machineWorst <= 1e-6 &&
                      tally[1].machineWorst <= 1e-6;
    r.pass = pass;
    r.detail = fmt::format(
        "theta=1/2 candidate flagged at {}/{} points, machine defect {:.2e}; theta=1 candidate flagged at {}/{} "
        "points, machine defect {:.2e}",
        tally[0].candidateFlagged, tally[0].points, tally[0].machineWorst, tally[1].candidateFlagged, tally[1].points,
        tally[1].machineWorst);
  });
}

namespace {

/// Equilibrium count by dense sign scan of g plus the line pair.
std::pair<std::size_t, bool> scan_count(const WaveParams& wp) {
  auto g = [&](double x) { return ((wp.C3 * x + wp.C2) * x + 0.5) * x + wp.K; };
  const double coeffs[4] = {wp.K, 0.5, wp.C2, wp.C3};
  const double R = cauchy_bound(coeffs) + 1.0;
  const std::size_t cells = 200000;
  std::vector<double> roots;
  double xPrev = -R;
  double gPrev = g(xPrev);
  for (std::size_t i = 1; i <= cells; ++i) {
    const double x = -R + 2.0 * R * static_cast<double>(i) / static_cast<double>(cells);
    const double gx = g(x);
    if (gx == 0.0) {
      roots.push_back(x);
    } else if (gPrev != 0.0 && (gPrev < 0.0) != (gx < 0.0)) {
      roots.push_back(0.5 * (x + xPrev));
    }
    xPrev = x;
    gPrev = gx;
  }
  const double cell = 2.0 * R / static_cast<double>(cells);
  std::size_t count = 1;  // phi = 0
  for (double x : roots)
    if (std::abs(x) > cell) ++count;
  const double s = wp.singular_abscissa();
  const double fs = s * g(s);
  const double th = wp.theta.value();
  bool ambiguous = false;
  if (th != 0.5 && fs / (0.5 - th) > 0.0) count += 2;
  for (double x : roots)
    if (std::abs(x - s) <= cell) ambiguous = true;
  return {count, ambiguous};
}

}  // namespace

CheckResult check_census(std::uint64_t seed, Execution exec) {
  return timed("C4", "equilibrium-census", 30.0, [&](CheckResult& r) {
    std::mt19937_64 rng(derive_seed(seed, 4));
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<WaveParams> draws;
    for (int i = 0; i < 1000; ++i) {
      const std::array<double, 4> v{U(rng), 2 * U(rng), 2 * U(rng), U(rng)};  // braces fix the draw order
      draws.push_back(WaveParams::direct(Theta::quarter(), v[0], v[1], v[2], v[3]));
    }
    const auto cs = census_batch(draws, exec);
    int matched = 0;
    int unflaggedMismatch = 0;
    for (std::size_t i = 0; i < draws.size(); ++i) {
      const auto [count, ambiguous] = scan_count(draws[i]);
      if (cs[i].equilibria.size() == count) {
        ++matched;
      } else if (!cs[i].boundary && !ambiguous) {
        ++unflaggedMismatch;
      }
    }
    struct Stated {
      const char* name;
      WaveParams wp;
      CaseLabel label;
      std::size_t count;
    };
    const Stated stated[] = {
        {"1(i)", WaveParams::direct(Theta::quarter(), -0.125, 0.0, -1.0, -0.5), CaseLabel::C1i, 4},
        {"1(iii)", WaveParams::direct(Theta::quarter(), -0.1, 0.0, -1.0, 0.05), CaseLabel::C1iii, 6},
        {"3(iii)", WaveParams::direct(Theta::quarter(), 0.1, 0.0, 1.0, 0.0), CaseLabel::C3iii, 3},
    };
    std::string cases;
    bool casesOk = true;
    for (const auto& st : stated) {
      const auto c = census(st.wp);
      const bool ok = c.caseLabel == st.label && c.equilibria.size() == st.count && eval_f(st.wp, st.wp.singular_abscissa()) > 0.0;
      casesOk = casesOk && ok;
      cases += fmt::format(" {}->{}{}", st.name, c.equilibria.size(), ok ? "" : "(expected " + std::to_string(st.count) + ")");
    }
    r.pass = matched >= 999 && unflaggedMismatch == 0 && casesOk;
    r.detail = fmt::format("sign-scan agreement {}/1000, unflagged mismatches {}; stated counts:{}", matched,
                           unflaggedMismatch, cases);
  });
}

CheckResult check_elliptic() {
  return timed("C5", "elliptic-kernel", 5.0, [](CheckResult& r) {
    double pyth = 0.0;
    double period = 0.0;
    for (double m : {0.0, 0.1, 0.5, 0.9, 0.99, 0.999999, 1.0}) {
      for (int i = 0; i < 2000; ++i) {
        const double u = -25.0 + 50.0 * i / 1999.0;
        const auto t = jacobi(u, {m});
        pyth = std::max(pyth, std::abs(t.sn * t.sn + t.cn * t.cn - 1.0));
        pyth = std::max(pyth, std::abs(t.dn * t.dn + m * t.sn * t.sn - 1.0));
      }
    }
    for (double m : {0.1, 0.5, 0.9, 0.99}) {
      const double K = complete_K({m});
      for (int i = 0; i < 2000; ++i) {
        const double u = -10.0 + 20.0 * i / 1999.0;
        period = std::max(period, std::abs(jacobi(u + 4.0 * K, {m}).sn - jacobi(u, {m}).sn));
      }
    }
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double Kq = integrator.integrate(
        [](double t) { return 1.0 / std::sqrt(1.0 - 0.5 * std::sin(t) * std::sin(t)); }, 0.0, std::numbers::pi / 2);
    const double Kb = boost::math::ellint_1(std::sqrt(0.5));
    const double K = complete_K({0.5});
    const double kErr = std::max(std::abs(K - Kq), std::abs(K - Kb));
    r.pass = pyth <= 1e-12 && period <= 1e-10 && kErr <= 1e-12;
    r.detail = fmt::format("Pythagorean max {:.2e} (1e-12), 4K periodicity {:.2e} (1e-10), K(0.5) vs quadrature {:.2e} (1e-12)",
                           pyth, period, kErr);
  });
}

CheckResult check_closed_forms() {
  return timed("C6", "closed-form-residuals", 30.0, [](CheckResult& r) {
    const auto wp = WaveParams::direct(Theta::half(), 0.0, 0.0, -1.0, 0.05);
    const auto fi = build_first_integral(wp);
    const auto cs = census(wp);
    double hSaddle = 0.0;
    double hLeftCenter = 0.0;
    for (const auto& e : cs.equilibria) {
      if (e.onSingularLine) continue;
      if (e.kind == EquilibriumKind::Saddle) hSaddle = fi.potential(e.location.phi);
      if (e.kind == EquilibriumKind::Center && e.location.phi < 0.0) hLeftCenter = fi.potential(e.location.phi);
    }
    const auto Fsn = factor_quartic(orbit_polynomial(wp, 0.5 * (hSaddle + hLeftCenter)));
    const auto snR = construct_sn_periodic(Fsn, true);
    const auto snL = construct_sn_periodic(Fsn, false);
    const auto Fsol = factor_quartic(orbit_polynomial(wp, hSaddle));
    const auto solR = construct_solitary(Fsol, true);
    const auto solL = construct_solitary(Fsol, false);
    const double resid = std::max({snR.residualReport, snL.residualReport, solR.residualReport, solL.residualReport});

    // Period: 2K(m)/omega and the numerically traced level curve.
    const double convention = 2.0 * complete_K({snR.parameters.mParam}) / snR.parameters.omega;
    const double convErr = std::abs(snR.parameters.period - convention) / convention;
    StopRule rule;
    rule.closeOnReturn = true;
    const auto tr = integrate_until(wp, {snR.parameters.lower, 0.0}, 1e3, rule);
    const double numeric = tr.period.value_or(std::numeric_limits<double>::quiet_NaN());
    const double numErr = std::abs(snR.parameters.period - numeric) / snR.parameters.period;

    // Modulus -> 1: sn-periodic wave against the solitary wave it degenerates to.
    const double p1 = 1.0, p2 = 0.2, p4 = -1.5, gap = 1e-6;
    const auto sn = construct_sn_periodic(factorization_from_roots(-1.0, {p1, p2, p2 - gap, p4}, {1, 1, 1, 1}), true);
    const auto so = construct_solitary(factorization_from_roots(-1.0, {p1, p2, p4}, {1, 2, 1}), true);
    const double shift = complete_K({sn.parameters.mParam}) / sn.parameters.omega;
    double sup = 0.0;
    for (int i = -2000; i <= 2000; ++i) {
      const double x = 0.005 * i;
      sup = std::max(sup, std::abs(sn(x + shift) - so(x)));
    }
    r.pass = resid <= 1e-8 && convErr <= 1e-6 && numErr <= 1e-6 && sup <= 1e-6;
    r.detail = fmt::format(
        "ODE residual sn/solitary max {:.2e} (1e-8); period vs 2K/omega {:.2e}, vs level curve {:.2e} (1e-6); "
        "degeneration sup-error at gap 1e-6 {:.2e} (1e-6)",
        resid, convErr, numErr, sup);
  });
}

CheckResult check_peakons() {
  return timed("C7", "peakon-detection", 60.0, [](CheckResult& r) {
    auto run = [](double C1) {
      const auto wp = WaveParams::direct(Theta::quarter(), C1, 0.0, -1.0, 0.5);
      return survey(wp, census(wp));
    };
    const auto inside = run(0.125);   // 0 < 4C1 = 0.5 < phi1 = 1
    const auto outside = run(0.3);    // 4C1 = 1.2 > phi1
    const int arches = inside.peakon + inside.antiPeakon;
    double minRatio = std::numeric_limits<double>::infinity();
    for (const auto& o : inside.orbits) {
      if (o.cls.tag == OrbitTag::Peakon || o.cls.tag == OrbitTag::AntiPeakon || o.cls.tag == OrbitTag::PeriodicPeakon)
        minRatio = std::min(minRatio, std::abs(o.cls.derivativeJump.value_or(0.0)) / o.cls.amplitude);
    }
    const int outsideAny = outside.peakon + outside.antiPeakon + outside.periodicPeakon;
    r.pass = arches >= 1 && inside.periodicPeakon >= 2 && minRatio >= 0.1 && outsideAny == 0;
    r.detail = fmt::format(
        "0<4C1<phi1: {} arches (peakon {}, anti-peakon {}), {} periodic-peakon families, min |jump|/amplitude {:.3f} "
        "(0.1); 4C1>phi1: {} peaked orbits",
        arches, inside.peakon, inside.antiPeakon, inside.periodicPeakon, minRatio, outsideAny);
  });
}

CheckResult check_atlas(Execution exec) {
  return timed("C8", "atlas-agreement", 300.0, [&](CheckResult& r) {
    SweepOptions opt;
    opt.execution = exec;
    const auto t1 = sweep_singular_line(WaveParams::direct(Theta::quarter(), 0.0, 0.0, -1.0, 0.5), 0.4, -0.15, 200, opt);
    const auto t3 =
        sweep_integration_constant(WaveParams::direct(Theta::half(), 0.0, 0.0, -1.0, 0.0), 0.5, -0.5, 200, opt);
    r.pass = t1.compared > 0 && t3.compared > 0 && t1.agreement_rate() >= 0.95 && t3.agreement_rate() >= 0.95;
    r.detail = fmt::format("theta=1/4 C1 sweep {}/{} ({:.1f}%, {} excluded); theta=1/2 C1=0 K sweep {}/{} ({:.1f}%, {} excluded)",
                           t1.agreed, t1.compared, 100.0 * t1.agreement_rate(), t1.excluded, t3.agreed, t3.compared,
                           100.0 * t3.agreement_rate(), t3.excluded);
  });
}

std::vector<CheckResult> run_property_suite(std::uint64_t seed, Execution exec) {
  return {check_parameter_identities(), check_conservation(seed, exec), check_integral_audit(seed),
          check_census(seed, exec),     check_elliptic(),                check_closed_forms(),
          check_peakons(),              check_atlas(exec)};
}

std::string render_ledger(const std::vector<CheckResult>& results) {
  std::string out;
  std::size_t passed = 0;
  for (const auto& r : results) {
    out += fmt::format("{} {} {}: {}\n", r.pass ? "PASS" : "FAIL", r.id, r.name, r.detail);
    if (r.pass) ++passed;
  }
  out += fmt::format("{}/{} checks passed\n", passed, results.size());
  return out;
}

}  // namespace rotwave
