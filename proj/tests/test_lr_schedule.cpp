#include <gtest/gtest.h>

#include <vector>

#include "adaptive_pool/errors.hpp"
#include "adaptive_pool/lr_schedule.hpp"
#include "adaptive_pool/rng.hpp"

using namespace adaptive_pool;

namespace {

LrState run(double lr, const std::vector<double>& fractions) {
  LrState s = LrState::initial(lr);
  for (double f : fractions) s = lr_step(s, f);
  return s;
}

}  // namespace

TEST(LrStep, ReducesAboveTwentyPercent) {
  EXPECT_EQ(run(0.01, std::vector<double>(10, 0.25)).lr, 0.001);
}

TEST(LrStep, RaisesBelowTenPercentUpToTheCeiling) {
  EXPECT_EQ(run(0.01, std::vector<double>(10, 0.05)).lr, 0.1);
  EXPECT_EQ(run(0.1, std::vector<double>(10, 0.0)).lr, 0.1);
}

TEST(LrStep, FloorHolds) {
  EXPECT_EQ(run(1e-6, std::vector<double>(10, 0.5)).lr, 1e-6);
}

TEST(LrStep, DeadZoneLeavesTheRateAlone) {
  EXPECT_EQ(run(0.01, std::vector<double>(10, 0.15)).lr, 0.01);
  // The thresholds themselves are inside the dead zone.
  EXPECT_EQ(run(0.01, std::vector<double>(10, 0.10)).lr, 0.01);
  EXPECT_EQ(run(0.01, std::vector<double>(10, 0.20)).lr, 0.01);
}

TEST(LrStep, DecidesOnTheWindowMean) {
  // Nine clean iterations and one with every border clamped: mean 0.1.
  std::vector<double> f(9, 0.0);
  f.push_back(1.0);
  EXPECT_EQ(run(0.01, f).lr, 0.01);
  f[0] = 0.5;  // mean 0.15
  EXPECT_EQ(run(0.01, f).lr, 0.01);
  f[1] = 0.6;  // mean 0.21
  EXPECT_EQ(run(0.01, f).lr, 0.001);
}

TEST(LrStep, WindowClearsAfterEachAdjustment) {
  LrState s = run(0.01, std::vector<double>(10, 0.5));
  EXPECT_TRUE(s.window.empty());
  EXPECT_EQ(s.iteration, 10);
  // The next block sees only its own fractions.
  std::vector<double> clean(10, 0.0);
  for (double f : clean) s = lr_step(s, f);
  EXPECT_EQ(s.lr, 0.01);
}

TEST(LrStep, RejectsOutOfRangeInput) {
  EXPECT_THROW(lr_step(LrState::initial(0.01), -0.1), ArgumentError);
  EXPECT_THROW(lr_step(LrState::initial(0.01), 1.5), ArgumentError);
  EXPECT_THROW(LrState::initial(0.5), ArgumentError);
  EXPECT_THROW(LrState::initial(1e-7), ArgumentError);
}

TEST(LrStep, FuzzStaysInBoundsAndMovesOnlyOnMultiplesOfTen) {
  Rng rng(31);
  LrState s = LrState::initial(0.01);
  std::vector<double> trace;
  std::vector<double> fractions;
  for (int i = 1; i <= 100000; ++i) {
    const double f = rng.uniform() < 0.3 ? rng.uniform() : rng.uniform(0.0, 0.3);
    fractions.push_back(f);
    const double before = s.lr;
    s = lr_step(s, f);
    ASSERT_GE(s.lr, LrState::kMinLr);
    ASSERT_LE(s.lr, LrState::kMaxLr);
    ASSERT_LE(s.window.size(), 10u);
    if (i % 10 != 0) {
      ASSERT_EQ(s.lr, before) << "iteration " << i;
    }
    trace.push_back(s.lr);
  }
  // Same fractions, same trajectory.
  LrState again = LrState::initial(0.01);
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    again = lr_step(again, fractions[i]);
    ASSERT_EQ(again.lr, trace[i]);
  }
}
