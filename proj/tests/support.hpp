#pragma once

// Independent reference implementations used as test oracles. They share no
// code with the library beyond the data types.

#include <algorithm>
#include <cmath>
#include <vector>

#include "adaptive_pool/grid.hpp"
#include "adaptive_pool/image.hpp"
#include "adaptive_pool/rng.hpp"

namespace adaptive_pool::oracle {

// Pixel-by-pixel average pooling over an integral grid.
inline PooledMap naive_pool(const Image& image, const std::vector<int>& cols,
                            const std::vector<int>& rows) {
  const int kc = static_cast<int>(cols.size()) - 1;
  const int kr = static_cast<int>(rows.size()) - 1;
  PooledMap out(kc, kr, image.channels());
  for (int c = 0; c < image.channels(); ++c) {
    for (int j = 0; j < kr; ++j) {
      for (int i = 0; i < kc; ++i) {
        double total = 0.0;
        int n = 0;
        for (int y = 0; y < image.height(); ++y) {
          for (int x = 0; x < image.width(); ++x) {
            if (x >= cols[i] && x < cols[i + 1] && y >= rows[j] && y < rows[j + 1]) {
              total += image.at(x, y, c);
              ++n;
            }
          }
        }
        out.at(i, j, c) = total / n;
      }
    }
  }
  return out;
}

inline std::vector<int> as_ints(const std::vector<double>& borders) {
  std::vector<int> out;
  for (double b : borders) out.push_back(static_cast<int>(b));
  return out;
}

inline PooledMap naive_pool(const Image& image, const PoolGrid& grid) {
  return naive_pool(image, as_ints(grid.cols()), as_ints(grid.rows()));
}

inline Image random_image(Rng& rng, int w, int h, int channels, double lo = 0.0, double hi = 1.0) {
  Image image(w, h, channels);
  for (double& v : image.data()) v = rng.uniform(lo, hi);
  return image;
}

// Strictly increasing integer borders 0 = b0 < ... < bk = extent.
inline std::vector<double> random_integral_borders(Rng& rng, int extent, int k) {
  std::vector<int> picks;
  for (int v = 1; v < extent; ++v) picks.push_back(v);
  for (int i = 0; i < k - 1; ++i) {
    const int j = rng.uniform_int(i, static_cast<int>(picks.size()) - 1);
    std::swap(picks[static_cast<std::size_t>(i)], picks[static_cast<std::size_t>(j)]);
  }
  std::vector<double> out{0.0};
  std::vector<int> chosen(picks.begin(), picks.begin() + (k - 1));
  std::sort(chosen.begin(), chosen.end());
  for (int v : chosen) out.push_back(v);
  out.push_back(extent);
  return out;
}

inline bool grid_invariants_hold(const PoolGrid& g) {
  for (Axis a : {Axis::Cols, Axis::Rows}) {
    const auto& b = g.borders(a);
    if (b.front() != 0.0 || b.back() != g.extent(a)) return false;
    for (std::size_t i = 1; i < b.size(); ++i) {
      if (!(b[i] - b[i - 1] >= 1.0) || !std::isfinite(b[i])) return false;
      // Rounding half-up never merges two borders.
      if (std::floor(b[i] + 0.5) < std::floor(b[i - 1] + 0.5) + 1.0) return false;
    }
  }
  return true;
}

}  // namespace adaptive_pool::oracle
