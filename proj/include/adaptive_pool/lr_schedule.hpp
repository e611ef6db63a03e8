#pragma once

#include <cstdint>
#include <vector>

namespace adaptive_pool {

/// Overpass-driven learning-rate controller for the offset head.
///
/// Every iteration contributes the fraction of movable borders that had to
/// be clamped. After each block of kAdjustEvery iterations the block mean
/// decides the adjustment: above kReduceAbove the rate drops tenfold, below
/// kRaiseBelow it grows tenfold, otherwise it is left alone. The rate is
/// then clamped to [kMinLr, kMaxLr] and the window is cleared.
struct LrState {
  static constexpr double kMinLr = 1e-6;
  static constexpr double kMaxLr = 1e-1;
  static constexpr int kAdjustEvery = 10;
  static constexpr double kReduceAbove = 0.20;
  static constexpr double kRaiseBelow = 0.10;

  double lr = 0.01;
  std::vector<double> window;
  std::int64_t iteration = 0;

  /// Fresh controller; `lr` must already lie inside the bounds.
  static LrState initial(double lr);
};

/// Records one iteration's overpass fraction (in [0, 1]) and applies the
/// adjustment rule when the iteration count reaches a multiple of 10.
LrState lr_step(LrState state, double overpass_fraction);

}  // namespace adaptive_pool
