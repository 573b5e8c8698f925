/**
 * @file test_atlas.cpp
 * @brief Region labels, predicted menus and sweep bookkeeping.
 */
#include <gtest/gtest.h>

#include <random>

#include "rotwave/atlas.hpp"

namespace rotwave {
namespace {

RegionLabel label_of(const WaveParams& wp) { return classify_region(wp, census(wp)); }

TEST(Atlas, QuarterRegionsAroundTheLargestRoot) {
  // g = -phi^3 + phi/2 + 1/2 has the single real root phi1 = 1 and two positive critical values.
  const auto inside = label_of(WaveParams::direct(Theta::quarter(), 0.125, 0.0, -1.0, 0.5));
  EXPECT_EQ(inside.theorem, TheoremId::T1);
  EXPECT_EQ(inside.domain, "D1");
  EXPECT_FALSE(inside.boundary);
  ASSERT_EQ(inside.gRoots.size(), 1u);
  EXPECT_NEAR(inside.gRoots[0], 1.0, 1e-12);
  EXPECT_NEAR(inside.lineAbscissa, 0.5, 1e-15);
  EXPECT_NE(inside.singularLinePosition.find("0 <"), std::string::npos);
  EXPECT_NE(inside.singularLinePosition.find("< phi1"), std::string::npos);

  const auto beyond = label_of(WaveParams::direct(Theta::quarter(), 0.3, 0.0, -1.0, 0.5));
  EXPECT_NE(beyond.singularLinePosition.find("phi1 <"), std::string::npos);

  const auto onRoot = label_of(WaveParams::direct(Theta::quarter(), 0.25, 0.0, -1.0, 0.5));
  EXPECT_TRUE(onRoot.boundary);
  EXPECT_THROW((void)predict_wave_menu(onRoot), std::invalid_argument);
}

TEST(Atlas, HalfRemovableRegionsFollowCriticalValues) {
  auto at = [](double K) { return label_of(WaveParams::direct(Theta::half(), 0.0, 0.0, -1.0, K)); };
  EXPECT_EQ(at(0.05).theorem, TheoremId::T3);
  EXPECT_EQ(at(0.05).domain, "D3");
  EXPECT_EQ(at(0.5).domain, "D1");
  EXPECT_EQ(at(-0.5).domain, "D2");
  EXPECT_EQ(label_of(WaveParams::direct(Theta::half(), 0.1, 0.0, -1.0, 0.05)).theorem, TheoremId::T2);
  EXPECT_EQ(label_of(WaveParams::direct(Theta::one(), 0.1, 0.0, -1.0, 0.05)).theorem, TheoremId::None);
}

TEST(Atlas, PredictedMenuInsideTheReferenceWindow) {
  const auto m = predict_wave_menu(label_of(WaveParams::direct(Theta::quarter(), 0.125, 0.0, -1.0, 0.5)));
  EXPECT_TRUE(m.peakon.admits(1));
  EXPECT_FALSE(m.peakon.admits(0));
  EXPECT_TRUE(m.periodicPeakon.admits(2));
  EXPECT_FALSE(m.periodicPeakon.admits(1));
}

TEST(Atlas, DisagreementsNameTheFailedClaim) {
  WaveMenu predicted;
  predicted.solitary = {MenuEntry::Bound::Exactly, 2};
  WaveMenu observed;
  observed.solitary = {MenuEntry::Bound::Exactly, 1};
  const auto d = disagreements(predicted, observed);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_NE(d[0].find("solitary"), std::string::npos);
  observed.solitary.count = 2;
  EXPECT_TRUE(disagreements(predicted, observed).empty());
}

TEST(Atlas, DescendingGrid) {
  const auto g = descending_grid(0.4, -0.15, 12);
  ASSERT_EQ(g.size(), 12u);
  EXPECT_DOUBLE_EQ(g.front(), 0.4);
  EXPECT_DOUBLE_EQ(g.back(), -0.15);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_LT(g[i], g[i - 1]);
}

TEST(Atlas, SweepSerialEqualsParallel) {
  const auto base = WaveParams::direct(Theta::quarter(), 0.0, 0.0, -1.0, 0.5);
  SweepOptions s;
  s.execution = Execution::Serial;
  SweepOptions p;
  p.execution = Execution::Parallel;
  const auto a = sweep_singular_line(base, 0.4, -0.15, 12, s);
  const auto b = sweep_singular_line(base, 0.4, -0.15, 12, p);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  EXPECT_EQ(a.compared, b.compared);
  EXPECT_EQ(a.agreed, b.agreed);
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].parameter, b.samples[i].parameter);
    EXPECT_EQ(a.samples[i].observed.str(), b.samples[i].observed.str());
    EXPECT_EQ(a.samples[i].agreement, b.samples[i].agreement);
  }
  EXPECT_EQ(a.compared + a.excluded, a.samples.size());
}

TEST(Atlas, DriftBatchSerialEqualsParallel) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<DriftCase> cases;
  for (int i = 0; i < 16; ++i) {
    const std::array<double, 6> v{U(rng), U(rng), U(rng), U(rng), U(rng), U(rng)};
    cases.push_back({WaveParams::direct(Theta::quarter(), 0.5 * v[0], v[1], v[2], 0.5 * v[3]), {v[4], v[5]}, 5.0});
  }
  const auto a = drift_batch(cases, Execution::Serial);
  const auto b = drift_batch(cases, Execution::Parallel);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].drift, b[i].drift);
    EXPECT_EQ(a[i].status, b[i].status);
    if (a[i].error.empty()) {
      EXPECT_LE(a[i].drift, 1e-8);
    }
  }
}

}  // namespace
}  // namespace rotwave
