/**
 * @file acceptance.cpp
 * @brief Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
 *
 * Criteria 1-8 are the property checks with their runtime budgets; criterion 9 repeats
 * `verify` and `portrait` through the command-line driver and compares the bytes.
 */
#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "rotwave/cli.hpp"
#include "rotwave/verify.hpp"

namespace {

constexpr std::uint64_t kSeed = 7;

struct Captured {
  int code = 0;
  std::string out;
};

Captured run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = rotwave::cli::run(args, out, err);
  return {code, out.str() + err.str()};
}

rotwave::CheckResult check_determinism() {
  rotwave::CheckResult r;
  r.id = "C9";
  r.name = "determinism";
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::string> verify{"verify", "--seed", std::to_string(kSeed)};
  const std::vector<std::string> portrait{"portrait", "--theta", "1/4", "--c1", "0.125", "--c2", "0", "--c3", "-1",
                                          "--k",      "0.5",     "--orbits", "6", "--seed", std::to_string(kSeed)};
  const auto v1 = run_cli(verify);
  const auto v2 = run_cli(verify);
  const auto p1 = run_cli(portrait);
  const auto p2 = run_cli(portrait);
  auto csv = portrait;
  csv.insert(csv.end(), {"--format", "csv"});
  const auto c1 = run_cli(csv);
  const auto c2 = run_cli(csv);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool sameVerify = v1.out == v2.out;
  const bool samePortrait = p1.out == p2.out && c1.out == c2.out;
  r.pass = sameVerify && samePortrait && p1.code == 0 && c1.code == 0 && !p1.out.empty() && !v1.out.empty();
  r.detail = fmt::format("verify ledger {} ({} bytes), portrait svg {} ({} bytes), portrait csv {} ({} bytes)",
                         sameVerify ? "identical" : "differs", v1.out.size(),
                         p1.out == p2.out ? "identical" : "differs", p1.out.size(),
                         c1.out == c2.out ? "identical" : "differs", c1.out.size());
  return r;
}

}  // namespace

int main() {
  auto results = rotwave::run_property_suite(kSeed);
  results.push_back(check_determinism());
  int failed = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    const bool ok = r.pass && r.within_budget();
    if (!ok) ++failed;
    const std::string budget = r.budgetSeconds > 0 ? fmt::format(", budget {:g} s", r.budgetSeconds) : "";
    std::printf("%s criterion %zu %s (%.2f s%s): %s%s\n", ok ? "PASS" : "FAIL", i + 1, r.name.c_str(), r.seconds,
                budget.c_str(), r.detail.c_str(), r.pass && !r.within_budget() ? " [over budget]" : "");
  }
  std::printf("%zu/%zu criteria passed\n", results.size() - failed, results.size());
  return failed == 0 ? 0 : 1;
}
