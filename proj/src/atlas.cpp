#include "rotwave/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace rotwave {

const char* to_string(TheoremId t) {
  switch (t) {
    case TheoremId::None: return "none";
    case TheoremId::T1: return "T1";
    case TheoremId::T2: return "T2";
    case TheoremId::T3: return "T3";
  }
  return "?";
}

std::string RegionLabel::str() const {
  return fmt::format("{}/{} [{}]{}", to_string(theorem), domain, singularLinePosition, boundary ? " boundary" : "");
}

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

std::string line_symbol(const Theta& th) {
  if (th.den() == 1) return "C1";
  return fmt::format("{}C1", th.den());
}

struct Ref {
  double value;
  std::string name;
};

}  // namespace

RegionLabel classify_region(const WaveParams& wp, const EquilibriumCensus& census, double tol) {
  RegionLabel out;
  out.lineAbscissa = wp.singular_abscissa();
  for (const auto& r : find_g_roots(wp)) out.gRoots.push_back(r.value);
  std::sort(out.gRoots.begin(), out.gRoots.end(), std::greater<>());

  if (wp.theta == Theta::quarter()) {
    out.theorem = TheoremId::T1;
  } else if (wp.theta == Theta::half()) {
    out.theorem = std::abs(wp.C1) <= tol ? TheoremId::T3 : TheoremId::T2;
  }

  // Position of the singular line among 0 and the roots of g.
  std::vector<Ref> refs{{0.0, "0"}};
  for (std::size_t i = 0; i < out.gRoots.size(); ++i) {
    const std::string name = fmt::format("phi{}", i + 1);
    auto same = std::find_if(refs.begin(), refs.end(), [&](const Ref& r) { return near(out.gRoots[i], r.value, tol); });
    if (same != refs.end())
      same->name += "=" + name;
    else
      refs.push_back({out.gRoots[i], name});
  }
  std::sort(refs.begin(), refs.end(), [](const Ref& a, const Ref& b) { return a.value < b.value; });
  const std::string sym = line_symbol(wp.theta);
  const double s = out.lineAbscissa;
  bool onRef = false;
  for (const auto& r : refs) {
    if (near(s, r.value, tol)) {
      out.singularLinePosition = fmt::format("{} = {}", sym, r.name);
      onRef = true;
    }
  }
  if (!onRef) {
    const Ref* lo = nullptr;
    const Ref* hi = nullptr;
    for (const auto& r : refs) {
      if (r.value < s) lo = &r;
      if (r.value > s && !hi) hi = &r;
    }
    out.singularLinePosition = (lo ? lo->name + " < " : std::string()) + sym + (hi ? " < " + hi->name : std::string());
  }

  if (out.theorem == TheoremId::None) {
    out.domain = "none";
    out.diagnostic = "no region statement for this theta";
    return out;
  }
  if (wp.C3 == 0.0) {
    out.domain = "none";
    out.diagnostic = "g is not cubic";
    return out;
  }

  const double disc = census.discriminant;
  const auto gv = census.gAtCriticalPoints;
  if (out.theorem == TheoremId::T3) {
    if (std::abs(disc) <= tol || !gv) {
      out.domain = "none";
      out.boundary = std::abs(disc) <= tol;
      out.diagnostic = "requires 4 C2^2 > 6 C3";
      return out;
    }
    const auto [gmin, gmax] = *gv;
    if (std::abs(gmin) <= tol) {
      out.domain = "D1";
      out.boundary = true;
    } else if (std::abs(gmax) <= tol) {
      out.domain = "D2";
      out.boundary = true;
    } else if (gmin > 0.0) {
      out.domain = "D1";
    } else if (gmax < 0.0) {
      out.domain = "D2";
    } else {
      out.domain = "D3";
    }
    return out;
  }

  // T1 and T2 share the same domain conditions; K = 0 takes priority.
  out.boundary = onRef || census.boundary;
  if (std::abs(wp.K) <= tol) {
    if (disc > tol) {
      out.domain = out.theorem == TheoremId::T1 ? "D5" : "D6";
    } else {
      out.domain = "none";
      out.boundary = out.boundary || std::abs(disc) <= tol;
    }
    return out;
  }
  if (std::abs(disc) <= tol || !gv) {
    out.domain = "none";
    out.boundary = out.boundary || std::abs(disc) <= tol;
    out.diagnostic = "requires 4 C2^2 > 6 C3";
    return out;
  }
  const auto [gmin, gmax] = *gv;
  if (std::abs(gmin) <= tol) {
    out.domain = "D2";
  } else if (std::abs(gmax) <= tol) {
    out.domain = "D3";
  } else if (gmin > 0.0) {
    out.domain = "D1";
  } else if (gmax < 0.0) {
    out.domain = out.theorem == TheoremId::T2 ? "D4" : "none";
  } else {
    out.domain = out.theorem == TheoremId::T2 ? "D5" : "D4";
  }
  return out;
}

bool MenuEntry::admits(int observed) const {
  switch (bound) {
    case Bound::Unspecified: return true;
    case Bound::Exactly: return observed == count;
    case Bound::AtLeast: return observed >= count;
  }
  return true;
}

std::string MenuEntry::str() const {
  switch (bound) {
    case Bound::Unspecified: return "-";
    case Bound::Exactly: return fmt::format("{}", count);
    case Bound::AtLeast: return fmt::format(">={}", count);
  }
  return "?";
}

std::string WaveMenu::str() const {
  return fmt::format("smooth={} solitary={} periodic={} peakon={} periodicPeakon={}", smoothPresent ? "yes" : "-",
                     solitary.str(), periodicSmooth.str(), peakon.str(), periodicPeakon.str());
}

WaveMenu predict_wave_menu(const RegionLabel& label) {
  if (label.boundary) throw std::invalid_argument("boundary region label has no prediction: " + label.str());
  WaveMenu menu;
  if (label.theorem == TheoremId::None || label.domain == "none") return menu;
  const double s = label.lineAbscissa;
  const auto& r = label.gRoots;
  switch (label.theorem) {
    case TheoremId::T1: {
      menu.smoothPresent = true;
      const bool first = !r.empty() && s > 0.0 && s < r[0];
      const bool second = r.size() >= 3 && s > r[2] && s < r[1];
      bool window = first;
      if (label.domain == "D4" || label.domain == "D5") window = first || second;
      if (!window) {
        menu.peakon = MenuEntry::exactly(0);
        menu.periodicPeakon = MenuEntry::exactly(0);
      } else {
        menu.periodicPeakon = MenuEntry::at_least(2);
        if (label.domain != "D2") menu.peakon = MenuEntry::at_least(1);
      }
      break;
    }
    case TheoremId::T2:
      menu.smoothPresent = true;
      menu.peakon = MenuEntry::exactly(0);
      break;
    case TheoremId::T3:
      menu.smoothPresent = true;
      menu.peakon = MenuEntry::exactly(0);
      menu.periodicPeakon = MenuEntry::exactly(0);
      if (label.domain == "D3") {
        menu.periodicSmooth = MenuEntry::at_least(2);
        menu.solitary = MenuEntry::exactly(2);
      } else {
        menu.periodicSmooth = MenuEntry::at_least(1);
      }
      break;
    case TheoremId::None: break;
  }
  return menu;
}

WaveMenu observed_wave_menu(const ObservedMenu& obs) {
  WaveMenu m;
  m.solitary = MenuEntry::exactly(obs.solitary);
  m.periodicSmooth = MenuEntry::exactly(obs.periodicSmooth);
  m.peakon = MenuEntry::exactly(obs.peakon + obs.antiPeakon);
  m.periodicPeakon = MenuEntry::exactly(obs.periodicPeakon);
  m.smoothPresent = obs.solitary + obs.periodicSmooth > 0;
  return m;
}

std::vector<std::string> disagreements(const WaveMenu& predicted, const WaveMenu& observed) {
  std::vector<std::string> out;
  auto check = [&](const char* name, const MenuEntry& p, const MenuEntry& o) {
    if (!p.admits(o.count)) out.push_back(fmt::format("{}: predicted {}, observed {}", name, p.str(), o.count));
  };
  if (predicted.smoothPresent && !observed.smoothPresent) out.emplace_back("smooth: predicted present, observed none");
  check("solitary", predicted.solitary, observed.solitary);
  check("periodicSmooth", predicted.periodicSmooth, observed.periodicSmooth);
  check("peakon", predicted.peakon, observed.peakon);
  check("periodicPeakon", predicted.periodicPeakon, observed.periodicPeakon);
  return out;
}

double SweepReport::agreement_rate() const {
  return compared == 0 ? 0.0 : static_cast<double>(agreed) / static_cast<double>(compared);
}

namespace {

SweepSample evaluate_sample(double value, const std::function<WaveParams(double)>& make, const SweepOptions& opt) {
  SweepSample smp;
  smp.parameter = value;
  try {
    smp.wp = make(value);
    const auto cen = census(smp.wp, opt.censusTol);
    smp.label = classify_region(smp.wp, cen, opt.censusTol);
    const auto obs = survey(smp.wp, cen, opt.survey);
    smp.observed = observed_wave_menu(obs);
    std::vector<std::string> diag;
    if (!smp.label.boundary && smp.label.theorem != TheoremId::None && smp.label.domain != "none") {
      smp.predicted = predict_wave_menu(smp.label);
      diag = disagreements(*smp.predicted, smp.observed);
      smp.agreement = diag.empty();
    }
    if (!diag.empty() || obs.inconclusive > 0) {
      for (const auto& o : obs.orbits) {
        if (o.cls.tag == OrbitTag::BoundaryDegenerate || !diag.empty())
          diag.push_back(fmt::format("{} -> {}{}", o.origin, to_string(o.cls.tag),
                                     o.cls.diagnostic.empty() ? "" : " (" + o.cls.diagnostic + ")"));
      }
    }
    for (std::size_t i = 0; i < diag.size(); ++i) smp.diagnostic += (i ? "; " : "") + diag[i];
  } catch (const std::exception& e) {
    smp.diagnostic = fmt::format("evaluation failed: {}", e.what());
    smp.agreement.reset();
  }
  return smp;
}

}  // namespace

SweepReport sweep_family(const std::string& name, const std::vector<double>& values,
                         const std::function<WaveParams(double)>& make, const SweepOptions& opt) {
  SweepReport rep;
  rep.parameterName = name;
  rep.samples.resize(values.size());
  const auto n = static_cast<std::ptrdiff_t>(values.size());
  if (opt.execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) rep.samples[i] = evaluate_sample(values[i], make, opt);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) rep.samples[i] = evaluate_sample(values[i], make, opt);
  }
  for (const auto& s : rep.samples) {
    if (!s.agreement) {
      ++rep.excluded;
      continue;
    }
    ++rep.compared;
    if (*s.agreement) ++rep.agreed;
  }
  return rep;
}

std::vector<double> descending_grid(double start, double end, std::size_t n) {
  if (n < 2) throw std::invalid_argument("a sweep needs at least two samples");
  if (!(start > end)) throw std::invalid_argument("sweep range must run from right to left (start > end)");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = start + (end - start) * static_cast<double>(i) / static_cast<double>(n - 1);
  out.back() = end;
  return out;
}

SweepReport sweep_singular_line(const WaveParams& base, double c1Start, double c1End, std::size_t sampleCount,
                                const SweepOptions& opt) {
  return sweep_family("C1", descending_grid(c1Start, c1End, sampleCount),
                      [base](double v) {
                        WaveParams wp = base;
                        wp.C1 = v;
                        return wp;
                      },
                      opt);
}

SweepReport sweep_integration_constant(const WaveParams& base, double kStart, double kEnd, std::size_t sampleCount,
                                       const SweepOptions& opt) {
  return sweep_family("K", descending_grid(kStart, kEnd, sampleCount),
                      [base](double v) {
                        WaveParams wp = base;
                        wp.K = v;
                        return wp;
                      },
                      opt);
}

SweepReport sweep_speed(double Omega, Theta theta, double cStart, double cEnd, std::size_t sampleCount,
                        const SweepOptions& opt) {
  const auto cp = derive_coriolis(Omega);
  return sweep_family("c", descending_grid(cStart, cEnd, sampleCount),
                      [cp, theta](double v) { return derive_wave_params(cp, v, theta); }, opt);
}

std::vector<EquilibriumCensus> census_batch(const std::vector<WaveParams>& params, Execution exec, double tol) {
  std::vector<EquilibriumCensus> out(params.size());
  const auto n = static_cast<std::ptrdiff_t>(params.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = census(params[i], tol);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = census(params[i], tol);
  }
  return out;
}

namespace {

DriftResult drift_one(const DriftCase& c, const IntegrationTolerances& tol) {
  DriftResult r;
  try {
    const auto tr = integrate(c.wp, c.start, c.tauSpan, tol);
    r.drift = tr.hDriftMax;
    r.status = tr.status;
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

}  // namespace

std::vector<DriftResult> drift_batch(const std::vector<DriftCase>& cases, Execution exec,
                                     const IntegrationTolerances& tol) {
  std::vector<DriftResult> out(cases.size());
  const auto n = static_cast<std::ptrdiff_t>(cases.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = drift_one(cases[i], tol);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = drift_one(cases[i], tol);
  }
  return out;
}

}  // namespace rotwave
