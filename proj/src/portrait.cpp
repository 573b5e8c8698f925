#include "rotwave/portrait.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "rotwave/writers.hpp"

namespace rotwave {

PortraitWindow default_window(const WaveParams& wp, const EquilibriumCensus& census) {
  double lo = 0.0;
  double hi = 0.0;
  double ymax = 1.0;
  for (const auto& e : census.equilibria) {
    lo = std::min(lo, e.location.phi);
    hi = std::max(hi, e.location.phi);
    ymax = std::max(ymax, 1.5 * std::abs(e.location.y));
  }
  const double s = wp.singular_abscissa();
  lo = std::min(lo, s);
  hi = std::max(hi, s);
  const double pad = 0.5 * std::max(0.5, hi - lo);
  return {lo - pad, hi + pad, -ymax, ymax};
}

namespace {

const char* glyph(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::Saddle: return "cross";
    case EquilibriumKind::Center: return "circle";
    case EquilibriumKind::Node: return "square";
    case EquilibriumKind::Cusp: return "triangle";
    case EquilibriumKind::Degenerate: return "diamond";
  }
  return "circle";
}

const char* stroke_for(OrbitTag t) {
  switch (t) {
    case OrbitTag::Solitary: return "#c0392b";
    case OrbitTag::Peakon:
    case OrbitTag::AntiPeakon: return "#1f5fbf";
    case OrbitTag::PeriodicPeakon: return "#7d3c98";
    case OrbitTag::PeriodicSmooth: return "#888888";
    case OrbitTag::Unbounded: return "#e67e22";
    case OrbitTag::BoundaryDegenerate: return "#16a085";
  }
  return "black";
}

}  // namespace

PortraitOutput render_portrait(const PortraitConfig& cfg) {
  PortraitOutput out;
  const auto& wp = cfg.wp;
  out.census = census(wp);
  out.window = cfg.window.value_or(default_window(wp, out.census));
  const auto& w = out.window;

  SurveyOptions sopt = cfg.survey;
  sopt.keepTrajectories = true;
  out.menu = survey(wp, out.census, sopt);

  io::SvgCanvas svg(w.phiMin, w.phiMax, w.yMin, w.yMax);
  io::CsvTable csv({"orbitId", "branchId", "kind", "tag", "phi", "y"});
  std::size_t orbitId = 0;
  auto emit = [&](const std::vector<PhasePoint>& pts, std::size_t branch, const char* kind, const char* tag) {
    for (const auto& p : pts) csv.row({std::to_string(orbitId), std::to_string(branch), kind, tag, io::num(p.phi), io::num(p.y)});
  };

  const double s = wp.singular_abscissa();
  if (std::isfinite(s)) svg.segment({s, w.yMin}, {s, w.yMax}, "black", 1.2, true);
  svg.segment({w.phiMin, 0.0}, {w.phiMax, 0.0}, "#cccccc", 0.8);

  for (const auto& o : out.menu.orbits) {
    std::vector<PhasePoint> pts;
    pts.reserve(o.traj.samples.size());
    for (const auto& smp : o.traj.samples) pts.push_back(smp.point);
    const bool separatrix = o.origin.rfind("separatrix", 0) == 0;
    svg.polyline(pts, stroke_for(o.cls.tag), separatrix ? 1.8 : 1.0);
    emit(pts, 0, separatrix ? "separatrix" : "orbit", to_string(o.cls.tag));
    ++orbitId;
  }

  if (!cfg.levels.empty()) {
    const bool reduced = removable_line(wp);
    FirstIntegral fi = build_first_integral(wp);
    if (reduced) {
      fi.logCoefficient = 0.0;
      fi.inversePowerPart.clear();
    }
    for (double h : cfg.levels) {
      std::size_t branch = 0;
      for (const auto& b : trace_level_curve(fi, h, w.phiMin, w.phiMax, 1500)) {
        std::vector<PhasePoint> lower;
        lower.reserve(b.upper.size());
        for (const auto& p : b.upper) lower.push_back({p.phi, -p.y});
        svg.polyline(b.upper, "#2e8b57", 1.2);
        svg.polyline(lower, "#2e8b57", 1.2);
        emit(b.upper, branch++, "level", "level");
        emit(lower, branch++, "level", "level");
      }
      ++orbitId;
    }
  }

  if (cfg.randomOrbits > 0) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    IntegrationTolerances tol = sopt.integration;
    for (std::size_t i = 0; i < cfg.randomOrbits; ++i) {
      const PhasePoint p{w.phiMin + (w.phiMax - w.phiMin) * U(rng), w.yMin + (w.yMax - w.yMin) * U(rng)};
      std::vector<PhasePoint> pts;
      for (double dir : {-1.0, 1.0}) {
        const auto tr = integrate(wp, p, dir * 50.0, tol);
        std::vector<PhasePoint> part;
        for (const auto& smp : tr.samples) part.push_back(smp.point);
        if (dir < 0) std::reverse(part.begin(), part.end());
        pts.insert(pts.end(), part.begin(), part.end());
      }
      svg.polyline(pts, "#bbbbbb", 0.7);
      emit(pts, 0, "sample", "sample");
      ++orbitId;
    }
  }

  for (const auto& e : out.census.equilibria) svg.marker(e.location, glyph(e.kind), "black");

  svg.frame("phi", "y");
  svg.text(io::SvgCanvas::kMargin, 30,
           fmt::format("theta={} C1={:.6g} C2={:.6g} C3={:.6g} K={:.6g} case {}", wp.theta.str(), wp.C1, wp.C2, wp.C3,
                       wp.K, to_string(out.census.caseLabel)),
           13);
  out.svg = svg.str();
  out.csv = csv.str();
  return out;
}

}  // namespace rotwave
