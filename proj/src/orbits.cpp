#include "rotwave/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include <boost/math/tools/toms748_solve.hpp>
#include <fmt/format.h>

#include "rotwave/errors.hpp"
#include "rotwave/ode.hpp"
#include "rotwave/roots.hpp"

namespace rotwave {

const char* to_string(IntegrationStatus s) {
  switch (s) {
    case IntegrationStatus::Completed: return "completed";
    case IntegrationStatus::Closed: return "closed";
    case IntegrationStatus::Arrived: return "arrived";
    case IntegrationStatus::Escaped: return "escaped";
    case IntegrationStatus::StepUnderflow: return "step-underflow";
    case IntegrationStatus::MaxSteps: return "max-steps";
  }
  return "?";
}

const char* to_string(OrbitTag t) {
  switch (t) {
    case OrbitTag::PeriodicSmooth: return "PeriodicSmooth";
    case OrbitTag::Solitary: return "Solitary";
    case OrbitTag::Peakon: return "Peakon";
    case OrbitTag::AntiPeakon: return "AntiPeakon";
    case OrbitTag::PeriodicPeakon: return "PeriodicPeakon";
    case OrbitTag::Unbounded: return "Unbounded";
    case OrbitTag::BoundaryDegenerate: return "BoundaryDegenerate";
  }
  return "?";
}

bool removable_line(const WaveParams& wp) {
  if (wp.theta != Theta::half()) return false;
  const double s = wp.singular_abscissa();
  const double mag = std::abs(wp.C3 * s * s * s * s) + std::abs(wp.C2 * s * s * s) + 0.5 * s * s + std::abs(wp.K * s);
  return std::abs(eval_f(wp, s)) <= 1e-13 * std::max(1.0, mag);
}

namespace {

double dist(PhasePoint a, PhasePoint b) { return std::hypot(a.phi - b.phi, a.y - b.y); }

/// f(phi)/(phi - s) by synthetic division (remainder dropped).
poly::Coeffs<double> deflate(const poly::Coeffs<double>& f, double s) {
  const std::size_t n = f.size();
  poly::Coeffs<double> q(n - 1, 0.0);
  double carry = 0.0;
  for (std::size_t i = n; i-- > 1;) {
    carry = f[i] + carry * s;
    q[i - 1] = carry;
  }
  return q;
}

// State (phi - offset, y, xi). In the regular system the offset is the line abscissa, so the
// first component is the distance to the invariant line and keeps its relative precision.
struct Flow {
  const WaveParams* wp = nullptr;
  bool reduced = false;
  double offset = 0.0;
  poly::Coeffs<double> q;

  ode::State<3> operator()(double, const ode::State<3>& u) const {
    if (reduced) return {u[1], 2.0 * poly::horner<double>(q, u[0]), 1.0};
    const double th = wp->theta.value();
    const auto v = rhs_regular(*wp, {u[0] + offset, u[1]});
    return {th * u[0] * u[1], v.dy, th * u[0]};
  }
};

FirstIntegral monitor_integral(const WaveParams& wp, bool reduced) {
  FirstIntegral fi = build_first_integral(wp);
  if (reduced) {
    fi.logCoefficient = 0.0;
    fi.inversePowerPart.clear();
  }
  return fi;
}

// Slopes where the orbit is 4x farther from the line than at sample c; closed orbits wrap around.
void fill_line_event(const Trajectory& tr, std::size_t c, double s, double d, bool cyclic, LineEvent& ev, bool& ok) {
  ok = false;
  const double target = 4.0 * d;
  // The closing sample duplicates the start of a closed orbit.
  const std::size_t n = cyclic ? tr.samples.size() - 1 : tr.samples.size();
  auto slope_at = [&](int step) -> std::optional<double> {
    std::size_t prev = c;
    for (std::size_t k = 1; k < n; ++k) {
      std::size_t i = 0;
      if (step < 0) {
        if (!cyclic && k > c) return std::nullopt;
        i = (c + n - k % n) % n;
      } else {
        if (!cyclic && c + k >= n) return std::nullopt;
        i = (c + k) % n;
      }
      const auto& a = tr.samples[prev].point;
      const auto& b = tr.samples[i].point;
      const double db = std::abs(b.phi - s);
      if (db >= target) {
        const double da = std::abs(a.phi - s);
        const double w = (da == db) ? 0.0 : (target - da) / (db - da);
        return a.y + w * (b.y - a.y);
      }
      prev = i;
    }
    return std::nullopt;
  };
  const auto before = slope_at(-1);
  const auto after = slope_at(1);
  if (before && after) {
    ev.yBefore = *before;
    ev.yAfter = *after;
    ok = true;
  }
}

Trajectory run(const WaveParams& wp, const FirstIntegral& fi, bool reduced, PhasePoint start, double tauSpan,
               const StopRule& rule, const IntegrationTolerances& tol) {
  Trajectory tr;
  tr.reduced = reduced;
  Flow flow;
  flow.wp = &wp;
  flow.reduced = reduced;
  const double s = wp.singular_abscissa();
  if (reduced) flow.q = deflate(f_coefficients(wp), s);
  else flow.offset = s;
  const double off = flow.offset;

  double H0 = 0.0;
  double Hscale = 0.0;
  bool monitor = true;
  try {
    H0 = reduced ? eval_H(fi, start).h : eval_H_from_line(fi, start.phi - off, start.y).h;
    Hscale = std::max(fi.term_magnitude(start), 1e-300);
  } catch (const SingularityError&) {
    monitor = false;
  }

  const ode::State<3> u0{start.phi - off, start.y, 0.0};
  tr.samples.push_back({0.0, start, 0.0});
  const auto d0 = flow(0.0, u0);
  const int startDir = d0[1] > 0.0 ? 1 : (d0[1] < 0.0 ? -1 : 0);
  const double closeTol = 1e-6 * std::max(1.0, std::abs(start.phi));
  bool departed = false;
  double phiMin = start.phi;
  double phiMax = start.phi;

  ode::Options opt;
  opt.rtol = tol.rtol;
  opt.atol = tol.atol;
  // The line is invariant, so the distance to it never changes sign: control it relatively.
  if (!reduced) opt.atolWeight[0] = 1e-12;
  opt.maxSteps = tol.maxSteps;

  auto onStep = [&](const ode::Step<3>& st) {
    const auto& a = st.y0;
    const auto& b = st.y1;
    // y = 0 crossings located on the interpolant.
    if ((a[1] != 0.0 && b[1] != 0.0 && (a[1] < 0.0) != (b[1] < 0.0)) || (b[1] == 0.0 && a[1] != 0.0)) {
      double tc = st.t1();
      if (b[1] != 0.0) {
        std::uintmax_t it = 100;
        auto fn = [&](double t) { return st(t)[1]; };
        const double lo = std::min(st.t0, st.t1());
        const double hi = std::max(st.t0, st.t1());
        const auto r = boost::math::tools::toms748_solve(fn, lo, hi, boost::math::tools::eps_tolerance<double>(50), it);
        tc = 0.5 * (r.first + r.second);
      }
      const auto uc = st(tc);
      AxisCrossing cr{tc, uc[0] + off, uc[2], b[1] > a[1] ? 1 : -1};
      tr.crossings.push_back(cr);
      tr.samples.push_back({tc, {uc[0] + off, 0.0}, uc[2]});
      if (rule.closeOnReturn && departed && cr.direction == startDir && std::abs(cr.phi - start.phi) <= closeTol) {
        tr.status = IntegrationStatus::Closed;
        tr.period = std::abs(cr.xi);
        return false;
      }
    }
    const PhasePoint p{b[0] + off, b[1]};
    tr.samples.push_back({st.t1(), p, b[2]});
    phiMin = std::min(phiMin, p.phi);
    phiMax = std::max(phiMax, p.phi);
    if (monitor) {
      try {
        // Rounding scale is the largest term of H met so far along the orbit.
        Hscale = std::max(Hscale, fi.term_magnitude(p));
        const double h = reduced ? eval_H(fi, p).h : eval_H_from_line(fi, b[0], b[1]).h;
        tr.hDriftMax = std::max(tr.hDriftMax, std::abs(h - H0) / Hscale);
      } catch (const SingularityError&) {
        monitor = false;
      }
    }
    if (!std::isfinite(p.phi) || !std::isfinite(p.y) || std::abs(p.phi) + std::abs(p.y) > tol.escapeRadius) {
      tr.status = IntegrationStatus::Escaped;
      return false;
    }
    if (!departed) {
      const double dep = rule.closeOnReturn ? 10.0 * closeTol : rule.departureRadius;
      departed = dist(p, start) >= dep;
    }
    if (departed) {
      for (std::size_t i = 0; i < rule.targets.size(); ++i) {
        const auto& tg = rule.targets[i];
        // Line saddles attract transversally but repel along the invariant line, so a
        // slightly perturbed arch lands on the line next to them rather than on them.
        const bool hit = (!reduced && tg.y != 0.0 && std::abs(tg.phi - s) <= 1e-12 * std::max(1.0, std::abs(s)))
                             ? std::abs(p.phi - s) <= rule.approachRadius && std::abs(p.y - tg.y) <= 0.05 * std::abs(tg.y)
                             : dist(p, tg) <= rule.approachRadius;
        if (hit) {
          tr.status = IntegrationStatus::Arrived;
          tr.arrivedAt = i;
          return false;
        }
      }
    }
    return true;
  };

  const auto res = ode::integrate<3>(flow, 0.0, u0, tauSpan, opt, onStep);
  if (res.status == ode::Status::StepUnderflow || res.status == ode::Status::NonFinite) {
    tr.status = IntegrationStatus::StepUnderflow;
    tr.diagnostic = fmt::format("step size underflow at tau={:.6g}, last state ({:.17g}, {:.17g})", res.t,
                                res.y[0] + off, res.y[1]);
  } else if (res.status == ode::Status::MaxSteps) {
    tr.status = IntegrationStatus::MaxSteps;
    tr.diagnostic = fmt::format("step limit reached at tau={:.6g}", res.t);
  }

  if (!reduced) {
    const bool cyclic = tr.status == IntegrationStatus::Closed;
    const std::size_t n = cyclic ? tr.samples.size() - 1 : tr.samples.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& smp = tr.samples[i];
      if (smp.point.y != 0.0 || (i == 0 && !cyclic)) continue;
      const double d = std::abs(smp.point.phi - s);
      if (d == 0.0) continue;
      LineEvent ev;
      ev.tau = smp.tau;
      ev.phi = smp.point.phi;
      ev.distance = d;
      bool ok = false;
      fill_line_event(tr, i, s, d, cyclic, ev, ok);
      if (ok) tr.events.push_back(ev);
    }
  }
  (void)phiMin;
  (void)phiMax;
  return tr;
}

}  // namespace

Trajectory integrate_until(const WaveParams& wp, PhasePoint start, double tauSpan, const StopRule& rule,
                           const IntegrationTolerances& tol) {
  const bool reduced = removable_line(wp);
  return run(wp, monitor_integral(wp, reduced), reduced, start, tauSpan, rule, tol);
}

Trajectory integrate(const WaveParams& wp, PhasePoint start, double tauSpan, const IntegrationTolerances& tol) {
  return integrate_until(wp, start, tauSpan, StopRule{}, tol);
}

Trajectory integrate_xi(const WaveParams& wp, PhasePoint start, double xiSpan, const IntegrationTolerances& tol) {
  Trajectory tr;
  const double th = wp.theta.value();
  const double s = wp.singular_abscissa();
  const double guard = 1e-9 * std::max(1.0, std::abs(s));
  auto rhs = [&](double, const ode::State<2>& u) -> ode::State<2> {
    const auto v = rhs_singular(wp, {u[0], u[1]});
    return {v.dphi, v.dy};
  };
  tr.samples.push_back({0.0, start, 0.0});
  ode::Options opt;
  opt.rtol = tol.rtol;
  opt.atol = tol.atol;
  opt.maxSteps = tol.maxSteps;
  const auto res = ode::integrate<2>(rhs, 0.0, ode::State<2>{start.phi, start.y}, xiSpan, opt,
                                     [&](const ode::Step<2>& st) {
                                       const PhasePoint p{st.y1[0], st.y1[1]};
                                       tr.samples.push_back({st.t1(), p, st.t1()});
                                       if (std::abs(th * p.phi - wp.C1) <= guard * th) {
                                         tr.diagnostic = "stopped next to the singular line";
                                         return false;
                                       }
                                       return std::abs(p.phi) + std::abs(p.y) <= tol.escapeRadius;
                                     });
  if (res.status == ode::Status::StepUnderflow) tr.status = IntegrationStatus::StepUnderflow;
  (void)s;
  return tr;
}

std::optional<PhasePoint> point_at_xi(const Trajectory& traj, double xi) {
  const auto& sm = traj.samples;
  for (std::size_t i = 1; i < sm.size(); ++i) {
    const double a = sm[i - 1].xi;
    const double b = sm[i].xi;
    if ((xi - a) * (xi - b) <= 0.0 && a != b) {
      const double w = (xi - a) / (b - a);
      return PhasePoint{sm[i - 1].point.phi + w * (sm[i].point.phi - sm[i - 1].point.phi),
                        sm[i - 1].point.y + w * (sm[i].point.y - sm[i - 1].point.y)};
    }
  }
  return std::nullopt;
}

std::vector<CurveBranch> trace_level_curve(const FirstIntegral& fi, double h, double phiLo, double phiHi,
                                           std::size_t samples) {
  std::vector<CurveBranch> out;
  if (!(phiHi > phiLo) || samples < 2) return out;
  const double s = fi.shift;
  auto ysq = [&](double phi) -> std::optional<double> {
    try {
      const double w = fi.y_weight(phi);
      if (w == 0.0) return std::nullopt;
      return (h - fi.potential(phi)) / w;
    } catch (const SingularityError&) {
      return std::nullopt;
    }
  };
  // Sign of h - p decides existence; y^2 = (h - p)/w with w < 0 except at poles.
  auto gap = [&](double phi) { return h - fi.potential(phi); };
  const bool lineSplits = fi.ySquaredPowerExponent != 0 || fi.singular_potential();

  CurveBranch cur;
  bool open = false;
  double prevPhi = phiLo;
  std::optional<double> prevY2;
  auto close_branch = [&](bool turning, double phiEnd) {
    cur.rightTurning = turning;
    cur.phiMax = phiEnd;
    out.push_back(cur);
    cur = CurveBranch{};
    open = false;
  };
  for (std::size_t i = 0; i < samples; ++i) {
    const double phi = phiLo + (phiHi - phiLo) * static_cast<double>(i) / static_cast<double>(samples - 1);
    const bool crossedLine = lineSplits && i > 0 && (prevPhi - s) * (phi - s) <= 0.0;
    if (crossedLine && open) close_branch(false, prevPhi);
    const auto y2 = ysq(phi);
    const bool inside = y2 && *y2 >= 0.0;
    if (inside && !open) {
      cur = CurveBranch{};
      open = true;
      if (i > 0 && prevY2 && *prevY2 < 0.0 && !crossedLine) {
        const double r = bracketed_root(gap, prevPhi, phi, gap(prevPhi), gap(phi));
        cur.upper.push_back({r, 0.0});
        cur.leftTurning = true;
        cur.phiMin = r;
      } else {
        cur.phiMin = phi;
      }
    }
    if (inside) {
      cur.upper.push_back({phi, std::sqrt(*y2)});
    } else if (open && y2) {
      const double r = bracketed_root(gap, prevPhi, phi, gap(prevPhi), gap(phi));
      cur.upper.push_back({r, 0.0});
      close_branch(true, r);
    } else if (open) {
      close_branch(false, prevPhi);
    }
    prevPhi = phi;
    prevY2 = y2;
  }
  if (open) close_branch(false, prevPhi);

  // Isolated points: extrema of p exactly at level h.
  auto dp = [&](double phi) {
    try {
      return fi.potential_derivative(phi);
    } catch (const SingularityError&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  for (double c : scan_roots(dp, phiLo, phiHi, samples)) {
    double pc = 0.0;
    try {
      pc = fi.potential(c);
    } catch (const SingularityError&) {
      continue;
    }
    if (std::abs(pc - h) > 1e-9 * std::max(1.0, std::abs(h))) continue;
    const bool covered = std::any_of(out.begin(), out.end(), [&](const CurveBranch& b) {
      return !b.isPoint && c > b.phiMin && c < b.phiMax;
    });
    if (covered) continue;
    CurveBranch pt;
    pt.isPoint = true;
    pt.upper.push_back({c, 0.0});
    pt.phiMin = pt.phiMax = c;
    pt.leftTurning = pt.rightTurning = true;
    out.push_back(pt);
  }
  std::sort(out.begin(), out.end(), [](const CurveBranch& a, const CurveBranch& b) { return a.phiMin < b.phiMin; });
  return out;
}

double portrait_scale(const WaveParams& wp, const EquilibriumCensus& census) {
  double lo = 0.0;
  double hi = 0.0;
  for (const auto& e : census.equilibria) {
    lo = std::min(lo, e.location.phi);
    hi = std::max(hi, e.location.phi);
  }
  const double s = wp.singular_abscissa();
  if (std::isfinite(s)) {
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return std::max(1.0, hi - lo);
}

std::optional<PhasePoint> unstable_direction(const WaveParams& wp, const Equilibrium& e) {
  if (e.kind != EquilibriumKind::Saddle) return std::nullopt;
  const double th = wp.theta.value();
  const double phi = e.location.phi;
  const double y = e.location.y;
  PhasePoint v;
  if (y != 0.0) {
    // Line saddle: transverse eigenvalue theta*y, eigenvector ((1 - theta) y, f'(s)).
    if (th * y <= 0.0) return std::nullopt;
    v = {(1.0 - th) * y, eval_df(wp, phi)};
  } else if (removable_line(wp)) {
    const auto q = deflate(f_coefficients(wp), wp.singular_abscissa());
    const double dq = poly::horner<double>(poly::derivative<double>(q), phi);
    if (dq <= 0.0) return std::nullopt;
    v = {1.0, std::sqrt(2.0 * dq)};
  } else {
    const double a = th * phi - wp.C1;
    const double b = eval_df(wp, phi);
    if (a * b <= 0.0) return std::nullopt;
    v = {a, std::copysign(std::sqrt(a * b), 1.0)};
  }
  const double n = std::hypot(v.phi, v.y);
  return PhasePoint{v.phi / n, v.y / n};
}

namespace {

std::optional<std::size_t> nearest_saddle(const EquilibriumCensus& census, PhasePoint p, double radius) {
  std::optional<std::size_t> best;
  double bestD = radius;
  for (std::size_t i = 0; i < census.equilibria.size(); ++i) {
    const auto& e = census.equilibria[i];
    if (e.kind != EquilibriumKind::Saddle) continue;
    const double d = dist(p, e.location);
    if (d <= bestD) {
      bestD = d;
      best = i;
    }
  }
  return best;
}

double amplitude_of(const Trajectory& tr) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : tr.samples) {
    lo = std::min(lo, s.point.phi);
    hi = std::max(hi, s.point.phi);
  }
  return tr.samples.empty() ? 0.0 : hi - lo;
}

}  // namespace

OrbitClass classify_orbit(const WaveParams& wp, const Trajectory& traj, const EquilibriumCensus& census,
                          const ClassifyOptions& opt) {
  OrbitClass out;
  out.amplitude = amplitude_of(traj);
  if (traj.samples.empty()) {
    out.diagnostic = "empty trajectory";
    return out;
  }
  if (traj.status == IntegrationStatus::Escaped) {
    out.tag = OrbitTag::Unbounded;
    return out;
  }
  const double scale = portrait_scale(wp, census);
  const double s = wp.singular_abscissa();
  if (traj.status == IntegrationStatus::Closed) {
    out.period = traj.period;
    // The line is invariant in the regular system, so a family can only close up on it
    // through equilibria on the line; without them a steep turn is still a smooth wave.
    const bool lineHasEquilibria = census.line_count() > 0;
    for (const auto& ev : traj.events) {
      const double jump = ev.yAfter - ev.yBefore;
      if (ev.distance <= opt.nearFraction * out.amplitude && std::abs(jump) >= opt.jumpFraction * out.amplitude) {
        if (!lineHasEquilibria) {
          out.diagnostic = fmt::format("steep turn at distance {:.3e} from a line without equilibria", ev.distance);
          break;
        }
        out.tag = OrbitTag::PeriodicPeakon;
        out.derivativeJump = jump;
        out.diagnostic = fmt::format("turning point at distance {:.3e} from the line", ev.distance);
        return out;
      }
    }
    out.tag = OrbitTag::PeriodicSmooth;
    return out;
  }
  const auto& first = traj.samples.front().point;
  const auto& last = traj.samples.back().point;
  const auto from = nearest_saddle(census, first, 1e-4 * scale);
  auto to = nearest_saddle(census, last, 2.0 * opt.approachRadius * scale);
  if (!to && std::abs(last.phi - s) <= 2.0 * opt.approachRadius * scale) {
    for (std::size_t i = 0; i < census.equilibria.size(); ++i) {
      const auto& e = census.equilibria[i];
      if (e.kind == EquilibriumKind::Saddle && e.onSingularLine && e.location.y != 0.0 &&
          std::abs(last.y - e.location.y) <= 0.05 * std::abs(e.location.y))
        to = i;
    }
  }
  if (from && to) {
    const auto& a = census.equilibria[*from];
    const auto& b = census.equilibria[*to];
    if (*from == *to && !a.onSingularLine) {
      out.tag = OrbitTag::Solitary;
      return out;
    }
    if (a.onSingularLine && b.onSingularLine && a.location.y != 0.0 && b.location.y == -a.location.y) {
      double mean = 0.0;
      for (const auto& smp : traj.samples) mean += smp.point.phi;
      mean /= static_cast<double>(traj.samples.size());
      const double jump = last.y - first.y;
      out.derivativeJump = jump;
      if (std::abs(jump) < opt.jumpFraction * out.amplitude) {
        out.diagnostic = fmt::format("arch slope jump {:.3e} below threshold", jump);
        return out;
      }
      out.tag = mean < s ? OrbitTag::Peakon : OrbitTag::AntiPeakon;
      return out;
    }
    out.diagnostic = "heteroclinic connection between distinct saddles";
    return out;
  }
  out.diagnostic = fmt::format("inconclusive: integration {}{}", to_string(traj.status),
                               traj.diagnostic.empty() ? "" : ", " + traj.diagnostic);
  return out;
}

std::vector<double> critical_levels(const WaveParams& wp, const FirstIntegral& fi, const EquilibriumCensus& census) {
  const bool reduced = removable_line(wp);
  std::vector<double> out;
  for (const auto& e : census.equilibria) {
    if (e.onSingularLine && (reduced || e.location.y == 0.0)) continue;
    try {
      const double h = eval_H(fi, e.location).h;
      if (std::isfinite(h)) out.push_back(h);
    } catch (const SingularityError&) {
    }
  }
  std::sort(out.begin(), out.end());
  std::vector<double> uniq;
  for (double h : out) {
    if (uniq.empty() || std::abs(h - uniq.back()) > 1e-12 * std::max(1.0, std::abs(h))) uniq.push_back(h);
  }
  return uniq;
}

std::vector<double> canonical_levels(const std::vector<double>& critical, double offset) {
  std::vector<double> out;
  if (critical.empty()) return out;
  const double spread = critical.size() > 1 ? critical.back() - critical.front() : std::max(1.0, std::abs(critical[0]));
  for (std::size_t i = 0; i < critical.size(); ++i) {
    out.push_back(critical[i] - offset * spread);
    out.push_back(critical[i] + offset * spread);
    if (i + 1 < critical.size()) out.push_back(0.5 * (critical[i] + critical[i + 1]));
  }
  out.push_back(critical.front() - 0.5 * spread);
  out.push_back(critical.back() + 0.5 * spread);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

int winding_number(const Trajectory& tr, PhasePoint c) {
  double total = 0.0;
  const auto& sm = tr.samples;
  for (std::size_t i = 0; i < sm.size(); ++i) {
    const auto& a = sm[i].point;
    const auto& b = sm[(i + 1) % sm.size()].point;
    const double a1 = std::atan2(a.y - c.y, a.phi - c.phi);
    const double a2 = std::atan2(b.y - c.y, b.phi - c.phi);
    double d = a2 - a1;
    while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
    while (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
    total += d;
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

std::vector<double> axis_starts(const FirstIntegral& fi, double h, double lo, double hi, double s, bool avoidLine) {
  auto gap = [&](double phi) {
    try {
      return fi.potential(phi) - h;
    } catch (const SingularityError&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  std::vector<double> out;
  const std::size_t cells = 4000;
  if (avoidLine && s > lo && s < hi) {
    const double eps = 1e-9 * std::max(1.0, std::abs(s));
    for (double r : scan_roots(gap, lo, s - eps, cells)) out.push_back(r);
    for (double r : scan_roots(gap, s + eps, hi, cells)) out.push_back(r);
  } else {
    out = scan_roots(gap, lo, hi, cells);
  }
  return out;
}

}  // namespace

ObservedMenu survey(const WaveParams& wp, const EquilibriumCensus& census, const SurveyOptions& opt) {
  ObservedMenu menu;
  const bool reduced = removable_line(wp);
  const FirstIntegral fi = monitor_integral(wp, reduced);
  const double scale = portrait_scale(wp, census);
  const double s = wp.singular_abscissa();
  const double th = wp.theta.value();

  // Slowest saddle rate sets the time budget.
  double rateMin = std::numeric_limits<double>::infinity();
  std::vector<PhasePoint> targets;
  for (const auto& e : census.equilibria) {
    if (reduced && e.onSingularLine) continue;
    if (e.kind == EquilibriumKind::Saddle || e.kind == EquilibriumKind::Node) targets.push_back(e.location);
    if (e.kind == EquilibriumKind::Saddle) rateMin = std::min(rateMin, std::sqrt(-e.J));
    if (e.kind == EquilibriumKind::Saddle && e.location.y != 0.0) rateMin = std::min(rateMin, std::abs(th * e.location.y));
  }
  const double tauMax = opt.tauMax + (std::isfinite(rateMin) && rateMin > 0.0 ? 80.0 / rateMin : 0.0);

  auto record = [&](ObservedOrbit&& o) {
    if (!opt.keepTrajectories) o.traj = Trajectory{};
    menu.orbits.push_back(std::move(o));
  };

  // Separatrices.
  for (std::size_t i = 0; i < census.equilibria.size(); ++i) {
    const auto& e = census.equilibria[i];
    if (reduced && e.onSingularLine) continue;
    const auto dir = unstable_direction(wp, e);
    if (!dir) continue;
    for (int sign : {1, -1}) {
      const PhasePoint start{e.location.phi + sign * opt.shootOffset * scale * dir->phi,
                             e.location.y + sign * opt.shootOffset * scale * dir->y};
      StopRule rule;
      rule.targets = targets;
      rule.approachRadius = opt.classify.approachRadius * scale;
      rule.departureRadius = 1e-2 * scale;
      auto tr = integrate_until(wp, start, tauMax, rule, opt.integration);
      ObservedOrbit o;
      o.cls = classify_orbit(wp, tr, census, opt.classify);
      o.origin = fmt::format("separatrix from ({:.6g}, {:.6g}) {}", e.location.phi, e.location.y, sign > 0 ? "+" : "-");
      o.start = start;
      o.level = eval_H(fi, e.location.y != 0.0 ? PhasePoint{e.location.phi, e.location.y} : e.location).h;
      o.side = (start.phi < s) ? -1 : 1;
      switch (o.cls.tag) {
        case OrbitTag::Solitary: ++menu.solitary; break;
        case OrbitTag::Peakon: ++menu.peakon; break;
        case OrbitTag::AntiPeakon: ++menu.antiPeakon; break;
        case OrbitTag::Unbounded: ++menu.unbounded; break;
        case OrbitTag::BoundaryDegenerate:
          if (o.cls.diagnostic.rfind("inconclusive", 0) == 0) ++menu.inconclusive;
          break;
        default: break;
      }
      o.traj = std::move(tr);
      record(std::move(o));
    }
  }

  // Periodic families on canonical levels.
  const auto crit = critical_levels(wp, fi, census);
  auto levels = canonical_levels(crit, opt.levelOffset);
  // Probes just inside each family bounded by the line level, scaled by that family's depth.
  for (const auto& e : census.equilibria) {
    if (!e.onSingularLine || e.location.y == 0.0 || e.kind != EquilibriumKind::Saddle) continue;
    double hs = 0.0;
    try {
      hs = eval_H(fi, e.location).h;
    } catch (const SingularityError&) {
      break;
    }
    for (const auto& c : census.equilibria) {
      if (c.kind != EquilibriumKind::Center || c.onSingularLine) continue;
      const double hc = eval_H(fi, c.location).h;
      levels.push_back(hs + opt.lineLevelOffset * (hc - hs));
      levels.push_back(hs + 100.0 * opt.lineLevelOffset * (hc - hs));
    }
    break;
  }
  std::sort(levels.begin(), levels.end());
  menu.levels = levels;

  std::vector<std::size_t> centers;
  for (std::size_t i = 0; i < census.equilibria.size(); ++i) {
    const auto& e = census.equilibria[i];
    if (e.kind == EquilibriumKind::Center && !(reduced && e.onSingularLine)) centers.push_back(i);
  }
  std::set<std::vector<int>> smoothFamilies;
  std::set<std::pair<std::vector<int>, int>> peakonFamilies;
  const double R = 3.0 * scale + std::abs(s);
  for (double h : levels) {
    std::vector<double> covered;
    for (double phi0 : axis_starts(fi, h, -R, R, s, !reduced)) {
      const PhasePoint start{phi0, 0.0};
      if (std::abs(eval_f(wp, phi0)) <= 1e-12 * scale) continue;
      if (std::any_of(covered.begin(), covered.end(),
                      [&](double c) { return std::abs(c - phi0) <= 1e-7 * scale; }))
        continue;
      StopRule rule;
      rule.closeOnReturn = true;
      auto tr = integrate_until(wp, start, tauMax, rule, opt.integration);
      for (const auto& c : tr.crossings) covered.push_back(c.phi);
      ObservedOrbit o;
      o.cls = classify_orbit(wp, tr, census, opt.classify);
      o.origin = fmt::format("level {:.9g}", h);
      o.level = h;
      o.start = start;
      if (tr.status == IntegrationStatus::Closed) {
        for (std::size_t ci : centers) {
          if (winding_number(tr, census.equilibria[ci].location) != 0) o.enclosed.push_back(static_cast<int>(ci));
        }
        double mean = 0.0;
        for (const auto& smp : tr.samples) mean += smp.point.phi;
        mean /= static_cast<double>(tr.samples.size());
        o.side = reduced ? 0 : (mean < s ? -1 : 1);
      }
      switch (o.cls.tag) {
        case OrbitTag::PeriodicSmooth: smoothFamilies.insert(o.enclosed); break;
        case OrbitTag::PeriodicPeakon: peakonFamilies.insert({o.enclosed, o.side}); break;
        case OrbitTag::Unbounded: ++menu.unbounded; break;
        case OrbitTag::BoundaryDegenerate: ++menu.inconclusive; break;
        default: break;
      }
      o.traj = std::move(tr);
      record(std::move(o));
    }
  }
  menu.periodicSmooth = static_cast<int>(smoothFamilies.size());
  menu.periodicPeakon = static_cast<int>(peakonFamilies.size());
  return menu;
}

}  // namespace rotwave
