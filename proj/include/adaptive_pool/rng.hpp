#pragma once

#include <cstdint>
#include <random>

namespace adaptive_pool {

/// std::mt19937_64 with hand-rolled conversions. The engine is fully
/// specified by the standard but the <random> distributions are not, so
/// doubles are built from the top 53 bits to keep streams identical across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next_u64();
  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  int uniform_int(int lo, int hi);       // [lo, hi]

 private:
  std::mt19937_64 engine_;
};

/// Combines seeds into one stream id (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace adaptive_pool
