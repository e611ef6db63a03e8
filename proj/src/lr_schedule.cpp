#include "adaptive_pool/lr_schedule.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "adaptive_pool/errors.hpp"

namespace adaptive_pool {

LrState LrState::initial(double lr) {
  if (!(lr >= kMinLr && lr <= kMaxLr)) {
    throw ArgumentError("initial learning rate " + std::to_string(lr) + " outside [1e-6, 1e-1]");
  }
  LrState state;
  state.lr = lr;
  state.window.reserve(kAdjustEvery);
  return state;
}

LrState lr_step(LrState state, double overpass_fraction) {
  if (!(overpass_fraction >= 0.0 && overpass_fraction <= 1.0)) {
    throw ArgumentError("overpass fraction must lie in [0, 1]");
  }
  state.window.push_back(overpass_fraction);
  ++state.iteration;
  if (state.iteration % LrState::kAdjustEvery != 0) return state;

  // Sum in extended precision, then round once to double: a window whose
  // mean is 0.10 or 0.20 lands exactly on the threshold constant.
  const double mean = static_cast<double>(
      std::accumulate(state.window.begin(), state.window.end(), 0.0L) /
      static_cast<long double>(state.window.size()));
  if (mean > LrState::kReduceAbove) {
    state.lr /= 10.0;
  } else if (mean < LrState::kRaiseBelow) {
    state.lr *= 10.0;
  }
  state.lr = std::clamp(state.lr, LrState::kMinLr, LrState::kMaxLr);
  state.window.clear();
  return state;
}

}  // namespace adaptive_pool
