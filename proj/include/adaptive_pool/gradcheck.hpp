#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace adaptive_pool {

struct GradcheckEntry {
  int instance = 0;
  int width = 0;
  int height = 0;
  int channels = 0;
  int k_cols = 0;
  int k_rows = 0;
  std::string kind;               // "random", "constant" or "tight"
  bool borders_exact = false;     // chain_border_gradients == brute force, bit for bit
  double input_max_error = 0.0;   // max |input_gradient - central difference|
  bool pass = false;
};

struct GradcheckReport {
  std::vector<GradcheckEntry> entries;
  int passed() const;
  int total() const { return static_cast<int>(entries.size()); }
  bool ok() const { return passed() == total(); }
};

inline constexpr double kInputGradTolerance = 1e-6;
inline constexpr double kInputGradStep = 1e-4;

/// Compares the border and input gradients against brute force on random
/// small instances (at most 12x12, K <= 4). Every tenth instance uses a
/// constant image and every tenth (offset by five) a grid whose borders all
/// sit one pixel apart; both must yield all-zero border gradients.
GradcheckReport gradcheck(std::uint64_t seed, int instances = 100);

}  // namespace adaptive_pool
