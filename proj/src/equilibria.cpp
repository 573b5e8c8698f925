#include "rotwave/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace rotwave {

const char* to_string(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::Saddle: return "Saddle";
    case EquilibriumKind::Center: return "Center";
    case EquilibriumKind::Node: return "Node";
    case EquilibriumKind::Cusp: return "Cusp";
    case EquilibriumKind::Degenerate: return "Degenerate";
  }
  return "?";
}

const char* to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::C1i: return "1i";
    case CaseLabel::C1ii: return "1ii";
    case CaseLabel::C1iii: return "1iii";
    case CaseLabel::C1iv: return "1iv";
    case CaseLabel::C1v: return "1v";
    case CaseLabel::C2: return "2";
    case CaseLabel::C3i: return "3i";
    case CaseLabel::C3ii: return "3ii";
    case CaseLabel::C3iii: return "3iii";
    case CaseLabel::NonCubic: return "noncubic";
  }
  return "?";
}

std::size_t EquilibriumCensus::axis_count() const {
  return static_cast<std::size_t>(
      std::count_if(equilibria.begin(), equilibria.end(), [](const Equilibrium& e) { return e.location.y == 0.0; }));
}

std::size_t EquilibriumCensus::line_count() const { return equilibria.size() - axis_count(); }

std::vector<RealRoot> find_g_roots(const WaveParams& wp, double relTol) {
  return cubic_real_roots(wp.K, 0.5, wp.C2, wp.C3, relTol);
}

std::pair<double, double> linearization_determinant(const WaveParams& wp, PhasePoint p, double eqTol) {
  const double th = wp.theta.value();
  const auto v = rhs_regular(wp, p);
  const double phi = p.phi;
  const double scale = 1.0 + p.y * p.y + std::abs(wp.C3 * phi * phi * phi * phi) + std::abs(wp.C2 * phi * phi * phi) +
                       0.5 * phi * phi + std::abs(wp.K * phi);
  if (std::abs(v.dphi) > eqTol * scale || std::abs(v.dy) > eqTol * scale) {
    throw std::invalid_argument(fmt::format("({}, {}) is not an equilibrium of the regular system", p.phi, p.y));
  }
  const double J = 2.0 * th * (th - 0.5) * p.y * p.y - (th * p.phi - wp.C1) * eval_df(wp, p.phi);
  const double trace = (3.0 * th - 1.0) * p.y;
  return {J, trace};
}

EquilibriumKind classify(double J, double trace, int multiplicity, double tol) {
  if (J < -tol) return EquilibriumKind::Saddle;
  if (J > tol) return (trace * trace - 4.0 * J < -tol) ? EquilibriumKind::Center : EquilibriumKind::Node;
  return multiplicity == 2 ? EquilibriumKind::Cusp : EquilibriumKind::Degenerate;
}

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b))); }

void label_case(const WaveParams& wp, double tol, EquilibriumCensus& out) {
  const double C2 = wp.C2;
  const double C3 = wp.C3;
  const double K = wp.K;
  out.discriminant = 4.0 * C2 * C2 - 6.0 * C3;
  const double D = out.discriminant;
  if (D > 0.0 && C3 != 0.0) {
    const double sq = std::sqrt(D);
    const double lo = (-2.0 * C2 + sq) / (6.0 * C3);  // g'' = +sqrt(D): local minimum
    const double hi = (-2.0 * C2 - sq) / (6.0 * C3);  // g'' = -sqrt(D): local maximum
    out.criticalPoints = std::make_pair(lo, hi);
    out.gAtCriticalPoints = std::make_pair(eval_g(wp, lo), eval_g(wp, hi));
  }
  if (C3 == 0.0) {
    out.caseLabel = CaseLabel::NonCubic;
    return;
  }
  if (std::abs(K) <= tol) {
    if (K != 0.0) out.boundary = true;
    const double q = C2 * C2 - 2.0 * C3;
    if (std::abs(q) <= tol) {
      out.caseLabel = CaseLabel::C3ii;
      if (q != 0.0) out.boundary = true;
    } else {
      out.caseLabel = q > 0.0 ? CaseLabel::C3i : CaseLabel::C3iii;
    }
    return;
  }
  if (D <= tol) {
    if (D > -tol) out.boundary = true;
    out.caseLabel = CaseLabel::C2;
    return;
  }
  const auto [gmin, gmax] = *out.gAtCriticalPoints;
  if (gmax < -tol) {
    out.caseLabel = CaseLabel::C1i;
  } else if (gmax <= tol) {
    out.caseLabel = CaseLabel::C1ii;
    if (gmax != 0.0) out.boundary = true;
  } else if (gmin < -tol) {
    out.caseLabel = CaseLabel::C1iii;
  } else if (gmin <= tol) {
    out.caseLabel = CaseLabel::C1iv;
    if (gmin != 0.0) out.boundary = true;
  } else {
    out.caseLabel = CaseLabel::C1v;
  }
}

}  // namespace

EquilibriumCensus census(const WaveParams& wp, double tol) {
  EquilibriumCensus out;
  label_case(wp, tol, out);

  // Axis points: roots of f = phi g.
  std::vector<RealRoot> axis{{0.0, 1}};
  for (const auto& r : find_g_roots(wp)) {
    if (near(r.value, 0.0, 1e-7)) {
      axis[0].multiplicity += r.multiplicity;
    } else {
      axis.push_back(r);
    }
  }
  std::sort(axis.begin(), axis.end(), [](const RealRoot& a, const RealRoot& b) { return a.value < b.value; });

  const double s = wp.singular_abscissa();
  const double th = wp.theta.value();
  for (const auto& r : axis) {
    Equilibrium e;
    e.location = {r.value, 0.0};
    e.multiplicity = r.multiplicity;
    e.onSingularLine = near(r.value, s, tol);
    if (e.onSingularLine && r.value != s) out.boundary = true;
    e.J = -(th * r.value - wp.C1) * eval_df(wp, r.value);
    e.trace = 0.0;
    e.kind = e.onSingularLine ? EquilibriumKind::Degenerate : classify(e.J, e.trace, e.multiplicity, tol);
    out.equilibria.push_back(e);
  }

  if (wp.theta != Theta::half()) {
    const double fs = eval_f(wp, s);
    const double y2 = fs / (0.5 - th);
    if (std::abs(fs) <= tol) {
      out.boundary = true;
    } else if (y2 > 0.0) {
      const double y = std::sqrt(y2);
      for (double yy : {y, -y}) {
        Equilibrium e;
        e.location = {s, yy};
        e.onSingularLine = true;
        e.multiplicity = 1;
        e.J = 2.0 * th * (th - 0.5) * yy * yy - (th * s - wp.C1) * eval_df(wp, s);
        e.trace = (3.0 * th - 1.0) * yy;
        e.kind = classify(e.J, e.trace, 1, tol);
        out.equilibria.push_back(e);
      }
    }
  }

  if (out.caseLabel == CaseLabel::C1iv && out.line_count() == 2) {
    out.notes.push_back(fmt::format(
        "case 1iv: E0, a simple and a double root of g and the two line saddles give {} equilibria, not four",
        out.equilibria.size()));
  }
  return out;
}

}  // namespace rotwave
