/**
 * @file portrait.hpp
 * @brief Phase portrait assembly: equilibria, singular line, separatrices, sampled orbits and level curves.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rotwave/orbits.hpp"

namespace rotwave {

struct PortraitWindow {
  double phiMin = -1.0;
  double phiMax = 1.0;
  double yMin = -1.0;
  double yMax = 1.0;
};

struct PortraitConfig {
  WaveParams wp;
  std::optional<PortraitWindow> window;  ///< derived from the equilibria when unset
  std::vector<double> levels;            ///< extra level curves H = h
  std::size_t randomOrbits = 0;          ///< extra orbits from seeded random starts
  std::uint64_t seed = 1;
  SurveyOptions survey;
};

struct PortraitOutput {
  std::string svg;
  std::string csv;  ///< orbitId,branchId,kind,tag,phi,y
  EquilibriumCensus census;
  ObservedMenu menu;
  PortraitWindow window;
};

[[nodiscard]] PortraitWindow default_window(const WaveParams& wp, const EquilibriumCensus& census);

/// Deterministic for a fixed config (including the seed).
[[nodiscard]] PortraitOutput render_portrait(const PortraitConfig& cfg);

}  // namespace rotwave
