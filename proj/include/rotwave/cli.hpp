/**
 * @file cli.hpp
 * @brief Command-line front end: params, portrait, wave, sweep and verify.
 *
 * Settings come from defaults, then an optional `--config FILE` of key=value lines
 * (keys are long option names without dashes), then command-line flags.
 * Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rotwave/params.hpp"

namespace rotwave::cli {

enum class Command { Params, Portrait, Wave, Sweep, Verify };
enum class Format { Csv, Jsonl, Svg, Text };

struct RunConfig {
  Command command = Command::Params;
  std::string theta = "1/4";
  std::optional<double> omega;
  std::optional<double> c;
  std::optional<double> c1;
  std::optional<double> c2;
  std::optional<double> c3;
  std::optional<double> k;
  std::vector<double> h;
  std::string out;
  Format format = Format::Text;
  double tolerance = 1e-8;
  std::uint64_t seed = 7;
  bool serial = false;

  // portrait
  std::optional<double> phiMin, phiMax, yMin, yMax;
  std::size_t orbits = 0;
  // wave
  std::string waveType = "sn-right";
  std::size_t samples = 1000;
  // sweep
  std::string scenario = "t1";
  std::string vary = "c1";
  std::optional<double> from, to;
  std::size_t sweepSamples = 200;

  [[nodiscard]] bool direct_mode() const { return c1 || c2 || c3 || k; }
  /// Wave parameters from either mode; throws std::invalid_argument on inconsistent input.
  [[nodiscard]] WaveParams wave_params() const;
};

/// Reads key=value lines ('#' starts a comment) into "--key value" tokens.
[[nodiscard]] std::vector<std::string> config_tokens(const std::string& path);

/// Parses and runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rotwave::cli
