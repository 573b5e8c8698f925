/**
 * @file equilibria.hpp
 * @brief Equilibria of the regular system, their linear type and the root-count case label.
 */
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rotwave/field.hpp"
#include "rotwave/roots.hpp"

namespace rotwave {

enum class EquilibriumKind { Saddle, Center, Node, Cusp, Degenerate };

[[nodiscard]] const char* to_string(EquilibriumKind k);

struct Equilibrium {
  PhasePoint location;
  EquilibriumKind kind = EquilibriumKind::Degenerate;
  bool onSingularLine = false;
  int multiplicity = 1;  ///< root multiplicity of f for axis points, 1 on the line
  double J = 0.0;
  double trace = 0.0;
};

/// Root-structure cases of g. NonCubic covers C3 = 0, where the cubic case list does not apply.
enum class CaseLabel { C1i, C1ii, C1iii, C1iv, C1v, C2, C3i, C3ii, C3iii, NonCubic };

[[nodiscard]] const char* to_string(CaseLabel c);

struct EquilibriumCensus {
  std::vector<Equilibrium> equilibria;  ///< axis points ascending in phi, then the line pair (y+ first)
  CaseLabel caseLabel = CaseLabel::NonCubic;
  double discriminant = 0.0;  ///< 4 C2^2 - 6 C3
  /// (g at the local minimum phi~-, g at the local maximum phi~+) when the discriminant is positive.
  std::optional<std::pair<double, double>> gAtCriticalPoints;
  std::optional<std::pair<double, double>> criticalPoints;  ///< (phi~-, phi~+)
  /// True when some sign decision (discriminant, g at a critical point, K, f on the line,
  /// line against an axis root) fell within tolerance.
  bool boundary = false;
  std::vector<std::string> notes;

  [[nodiscard]] std::size_t axis_count() const;
  [[nodiscard]] std::size_t line_count() const;
};

/// Real roots of g ascending with multiplicities (relTol is the merging tolerance).
[[nodiscard]] std::vector<RealRoot> find_g_roots(const WaveParams& wp, double relTol = 1e-7);

/// Jacobian determinant and trace of the regular system. Throws std::invalid_argument when
/// p is not an equilibrium to within eqTol (relative to the field scale).
[[nodiscard]] std::pair<double, double> linearization_determinant(const WaveParams& wp, PhasePoint p,
                                                                  double eqTol = 1e-6);

[[nodiscard]] EquilibriumKind classify(double J, double trace, int multiplicity, double tol = 1e-9);

[[nodiscard]] EquilibriumCensus census(const WaveParams& wp, double tol = 1e-9);

}  // namespace rotwave
