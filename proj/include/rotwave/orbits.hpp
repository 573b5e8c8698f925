/**
 * @file orbits.hpp
 * @brief Numerical orbits of the regular system, level curves, and orbit-to-wave classification.
 *
 * Integration runs in the regular time tau (dxi = (theta phi - C1) dtau) with
 * xi carried as a third state component. When theta = 1/2 and f vanishes on
 * the singular line the line is removable: the xi-system phi'' = 2 q(phi) with
 * q = f/(phi - 2C1) is integrated directly instead (tau = xi).
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rotwave/equilibria.hpp"
#include "rotwave/field.hpp"

namespace rotwave {

struct IntegrationTolerances {
  double rtol = 1e-12;
  double atol = 1e-14;
  double escapeRadius = 1e4;
  std::size_t maxSteps = 2'000'000;
};

enum class IntegrationStatus { Completed, Closed, Arrived, Escaped, StepUnderflow, MaxSteps };

[[nodiscard]] const char* to_string(IntegrationStatus s);

struct TrajectorySample {
  double tau = 0.0;
  PhasePoint point;
  double xi = 0.0;
};

/// Closest approach to the singular line, at a y = 0 crossing. yBefore/yAfter are the slopes
/// where the orbit is 4x farther from the line on either side of the turn.
struct LineEvent {
  double tau = 0.0;
  double phi = 0.0;
  double distance = 0.0;
  double yBefore = 0.0;
  double yAfter = 0.0;
};

struct AxisCrossing {
  double tau = 0.0;
  double phi = 0.0;
  double xi = 0.0;
  int direction = 0;  ///< sign of dy/dtau at the crossing
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double hDriftMax = 0.0;
  std::vector<LineEvent> events;
  std::vector<AxisCrossing> crossings;
  IntegrationStatus status = IntegrationStatus::Completed;
  std::string diagnostic;
  bool reduced = false;         ///< integrated in the removable-line xi-system
  std::optional<double> period;  ///< xi-period when the orbit closed
  std::optional<std::size_t> arrivedAt;  ///< index into the target list of integrate_until
};

/// What integrate_until should watch for besides the time limit.
struct StopRule {
  bool closeOnReturn = false;          ///< stop at the first same-direction y = 0 return to the start
  std::vector<PhasePoint> targets;     ///< stop on approach to any of these
  double approachRadius = 1e-4;
  double departureRadius = 1e-2;       ///< targets only count after leaving the start by this much
};

/// True when theta = 1/2 and f(2C1) is negligible, so the line is removable.
[[nodiscard]] bool removable_line(const WaveParams& wp);

/// Adaptive Dormand-Prince trajectory with dense-output event location.
[[nodiscard]] Trajectory integrate(const WaveParams& wp, PhasePoint start, double tauSpan,
                                   const IntegrationTolerances& tol = {});

[[nodiscard]] Trajectory integrate_until(const WaveParams& wp, PhasePoint start, double tauSpan, const StopRule& rule,
                                         const IntegrationTolerances& tol = {});

/// Integrates the singular system directly in xi (for consistency checks away from the line).
[[nodiscard]] Trajectory integrate_xi(const WaveParams& wp, PhasePoint start, double xiSpan,
                                      const IntegrationTolerances& tol = {});

/// Point along a trajectory at a given xi, interpolated linearly between samples.
[[nodiscard]] std::optional<PhasePoint> point_at_xi(const Trajectory& traj, double xi);

struct CurveBranch {
  std::vector<PhasePoint> upper;  ///< y >= 0 half, phi ascending; lower half is its mirror
  double phiMin = 0.0;
  double phiMax = 0.0;
  bool leftTurning = false;   ///< left end is a turning point (y = 0)
  bool rightTurning = false;
  bool isPoint = false;       ///< degenerate level at an isolated extremum
};

/// Solves H(phi, y) = h for y >= 0 on a phi grid over [phiLo, phiHi]; branches split at
/// turning points and at the singular line.
[[nodiscard]] std::vector<CurveBranch> trace_level_curve(const FirstIntegral& fi, double h, double phiLo,
                                                         double phiHi, std::size_t samples = 2000);

enum class OrbitTag { PeriodicSmooth, Solitary, Peakon, AntiPeakon, PeriodicPeakon, Unbounded, BoundaryDegenerate };

[[nodiscard]] const char* to_string(OrbitTag t);

struct OrbitClass {
  OrbitTag tag = OrbitTag::BoundaryDegenerate;
  std::optional<double> period;
  std::optional<double> derivativeJump;
  double amplitude = 0.0;
  std::string diagnostic;
};

struct ClassifyOptions {
  double jumpFraction = 0.1;    ///< jump threshold as a fraction of the profile amplitude
  double nearFraction = 0.1;    ///< turning point counts as near the line within this fraction of the amplitude
  double approachRadius = 1e-4;
};

[[nodiscard]] OrbitClass classify_orbit(const WaveParams& wp, const Trajectory& traj, const EquilibriumCensus& census,
                                        const ClassifyOptions& opt = {});

/// Length scale of the phase portrait (max of 1 and the spread of equilibria).
[[nodiscard]] double portrait_scale(const WaveParams& wp, const EquilibriumCensus& census);

/// Saddle shooting directions from the analytic linearization: unit unstable eigenvector.
[[nodiscard]] std::optional<PhasePoint> unstable_direction(const WaveParams& wp, const Equilibrium& e);

struct ObservedOrbit {
  OrbitClass cls;
  std::string origin;
  double level = 0.0;
  PhasePoint start;
  std::vector<int> enclosed;  ///< indices (into the census) of centers the orbit winds around
  int side = 0;               ///< -1 left of the line, +1 right, 0 unknown
  Trajectory traj;
};

struct ObservedMenu {
  int solitary = 0;
  int periodicSmooth = 0;  ///< distinct families
  int peakon = 0;
  int antiPeakon = 0;
  int periodicPeakon = 0;  ///< distinct families
  int unbounded = 0;
  int inconclusive = 0;
  std::vector<ObservedOrbit> orbits;
  std::vector<double> levels;
};

struct SurveyOptions {
  ClassifyOptions classify;
  IntegrationTolerances integration;
  double shootOffset = 1e-8;
  double levelOffset = 1e-3;      ///< relative to the spread of critical levels
  double lineLevelOffset = 1e-5;  ///< probe levels next to the line level, relative to each family depth
  double tauMax = 4000.0;
  bool keepTrajectories = false;
};

/// Critical levels H at equilibria off the line (and on the line where H is finite), sorted, unique.
[[nodiscard]] std::vector<double> critical_levels(const WaveParams& wp, const FirstIntegral& fi,
                                                  const EquilibriumCensus& census);

/// Canonical sample levels: midpoints between consecutive critical levels, critical +- offset*spread,
/// and one level beyond each extreme.
[[nodiscard]] std::vector<double> canonical_levels(const std::vector<double>& critical, double offset);

/// Observes every orbit family: saddle separatrices by shooting, then periodic families on the
/// canonical levels.
[[nodiscard]] ObservedMenu survey(const WaveParams& wp, const EquilibriumCensus& census,
                                  const SurveyOptions& opt = {});

}  // namespace rotwave
