/**
 * @file verify.hpp
 * @brief Property suite behind the `verify` command and the acceptance binary.
 *
 * Each check is self-contained, seeded where it draws random cases, and reports a
 * deterministic detail string; wall time is measured separately and never enters the ledger.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rotwave/atlas.hpp"

namespace rotwave {

struct CheckResult {
  std::string id;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double budgetSeconds = 0.0;  ///< 0 when the check has no time limit

  [[nodiscard]] bool within_budget() const { return budgetSeconds <= 0.0 || seconds < budgetSeconds; }
};

/// Candidate closed-form first integrals whose conservation is audited.
/// theta = 1/2: -1/2 (phi - 4C1)^2 y^2 + phi^4/4 + a phi^3/3 + b phi^2/2 + g phi + d ln|phi - 2C1|.
[[nodiscard]] double candidate_integral_half(const WaveParams& wp, PhasePoint p);
/// theta = 1: y^2 (phi - C1) + 2/5 C3 phi^5 + 1/2 C2 phi^4 + 1/3 phi^3 + K phi^2.
[[nodiscard]] double candidate_integral_one(const WaveParams& wp, PhasePoint p);

[[nodiscard]] CheckResult check_parameter_identities();
[[nodiscard]] CheckResult check_conservation(std::uint64_t seed, Execution exec = Execution::Parallel);
[[nodiscard]] CheckResult check_integral_audit(std::uint64_t seed);
[[nodiscard]] CheckResult check_census(std::uint64_t seed, Execution exec = Execution::Parallel);
[[nodiscard]] CheckResult check_elliptic();
[[nodiscard]] CheckResult check_closed_forms();
[[nodiscard]] CheckResult check_peakons();
[[nodiscard]] CheckResult check_atlas(Execution exec = Execution::Parallel);

/// Runs every check above in order.
[[nodiscard]] std::vector<CheckResult> run_property_suite(std::uint64_t seed, Execution exec = Execution::Parallel);

/// One "PASS|FAIL id name: detail" line per check plus a summary line; no timings.
[[nodiscard]] std::string render_ledger(const std::vector<CheckResult>& results);

}  // namespace rotwave
