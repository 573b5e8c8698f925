/**
 * @file atlas.hpp
 * @brief Parameter-region labels, predicted wave menus, sweeps comparing them with observed orbits,
 *        and batch kernels with serial and OpenMP execution.
 *
 * Domain names are internal and unambiguous:
 *   theta = 1/4:        D1 g(phi~-) > 0, D2 g(phi~-) = 0, D3 g(phi~+) = 0, D4 g(phi~-) < 0 < g(phi~+),
 *                       D5 K = 0 (takes priority); all require 4 C2^2 > 6 C3.
 *   theta = 1/2, C1!=0: D1..D3 as above, D4 g(phi~+) < 0, D5 g(phi~-) < 0 < g(phi~+), D6 K = 0.
 *   theta = 1/2, C1=0:  D1 g(phi~-) >= 0, D2 g(phi~+) <= 0, D3 g(phi~-) < 0 < g(phi~+).
 * phi~- and phi~+ are the local minimum and maximum of g; roots of g are named phi1 > phi2 > phi3.
 */
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rotwave/equilibria.hpp"
#include "rotwave/orbits.hpp"

namespace rotwave {

enum class Execution { Serial, Parallel };

enum class TheoremId { None, T1, T2, T3 };

[[nodiscard]] const char* to_string(TheoremId t);

struct RegionLabel {
  TheoremId theorem = TheoremId::None;
  std::string domain;                ///< "D1".."D6", or "none" when no domain applies
  std::string singularLinePosition;  ///< e.g. "0 < 4C1 < phi1"
  bool boundary = false;
  std::vector<double> gRoots;  ///< distinct real roots of g, descending (phi1, phi2, ...)
  double lineAbscissa = 0.0;
  std::string diagnostic;

  [[nodiscard]] std::string str() const;
};

[[nodiscard]] RegionLabel classify_region(const WaveParams& wp, const EquilibriumCensus& census, double tol = 1e-9);

/// Count with the strength of the claim attached.
struct MenuEntry {
  enum class Bound { Unspecified, Exactly, AtLeast };
  Bound bound = Bound::Unspecified;
  int count = 0;

  [[nodiscard]] static MenuEntry exactly(int n) { return {Bound::Exactly, n}; }
  [[nodiscard]] static MenuEntry at_least(int n) { return {Bound::AtLeast, n}; }
  [[nodiscard]] bool admits(int observed) const;
  [[nodiscard]] std::string str() const;
};

struct WaveMenu {
  MenuEntry solitary;
  MenuEntry periodicSmooth;
  MenuEntry peakon;  ///< peakon and anti-peakon arches together
  MenuEntry periodicPeakon;
  bool smoothPresent = false;  ///< at least one solitary or smooth periodic wave

  [[nodiscard]] std::string str() const;
};

/// Menu asserted for a region. Throws std::invalid_argument for boundary labels.
[[nodiscard]] WaveMenu predict_wave_menu(const RegionLabel& label);

/// Observed counts as an exact menu.
[[nodiscard]] WaveMenu observed_wave_menu(const ObservedMenu& obs);

/// Empty when the observation satisfies every claim of the prediction, otherwise one line per failed claim.
[[nodiscard]] std::vector<std::string> disagreements(const WaveMenu& predicted, const WaveMenu& observed);

struct SweepSample {
  double parameter = 0.0;  ///< swept value (C1, K or c)
  WaveParams wp;
  RegionLabel label;
  std::optional<WaveMenu> predicted;
  WaveMenu observed;
  std::optional<bool> agreement;  ///< unset for boundary or unclassified samples
  std::string diagnostic;
};

struct SweepReport {
  std::string parameterName;
  std::vector<SweepSample> samples;
  std::size_t compared = 0;
  std::size_t agreed = 0;
  std::size_t excluded = 0;

  [[nodiscard]] double agreement_rate() const;
};

struct SweepOptions {
  SurveyOptions survey;
  double censusTol = 1e-9;
  Execution execution = Execution::Parallel;
};

/// Evaluates region, prediction and observation for each parameter set; output keeps input order.
[[nodiscard]] SweepReport sweep_family(const std::string& name, const std::vector<double>& values,
                                       const std::function<WaveParams(double)>& make, const SweepOptions& opt = {});

/// Moves the singular line: C1 from c1Start down to c1End (c1Start > c1End) in sampleCount steps.
[[nodiscard]] SweepReport sweep_singular_line(const WaveParams& base, double c1Start, double c1End,
                                              std::size_t sampleCount, const SweepOptions& opt = {});

/// Varies K from kStart down to kEnd with the other coefficients fixed.
[[nodiscard]] SweepReport sweep_integration_constant(const WaveParams& base, double kStart, double kEnd,
                                                     std::size_t sampleCount, const SweepOptions& opt = {});

/// Physical mode: wave speed c from cStart down to cEnd at fixed Omega and theta (C1 and K follow c).
[[nodiscard]] SweepReport sweep_speed(double Omega, Theta theta, double cStart, double cEnd, std::size_t sampleCount,
                                      const SweepOptions& opt = {});

/// Strictly decreasing grid of n points from start to end.
[[nodiscard]] std::vector<double> descending_grid(double start, double end, std::size_t n);

/// Census of every parameter set.
[[nodiscard]] std::vector<EquilibriumCensus> census_batch(const std::vector<WaveParams>& params, Execution exec,
                                                          double tol = 1e-9);

struct DriftCase {
  WaveParams wp;
  PhasePoint start;
  double tauSpan = 10.0;
};

struct DriftResult {
  double drift = 0.0;  ///< relative H drift over the trajectory
  IntegrationStatus status = IntegrationStatus::Completed;
  std::string error;   ///< set when the case could not be integrated
};

/// Integrates each case and reports its first-integral drift.
[[nodiscard]] std::vector<DriftResult> drift_batch(const std::vector<DriftCase>& cases, Execution exec,
                                                   const IntegrationTolerances& tol = {});

}  // namespace rotwave
