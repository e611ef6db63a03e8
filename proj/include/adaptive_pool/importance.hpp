#pragma once

#include <optional>
#include <vector>

#include "adaptive_pool/grid.hpp"
#include "adaptive_pool/image.hpp"

namespace adaptive_pool {

/// Per-pixel weights in [0, 1] steering how many cells a region receives.
class ImportanceMap {
 public:
  ImportanceMap(int width, int height, double fill = 0.0);
  ImportanceMap(int width, int height, std::vector<double> weights);

  int width() const { return width_; }
  int height() const { return height_; }
  double at(int x, int y) const { return weights_[index(x, y)]; }
  void set(int x, int y, double w);
  const std::vector<double>& weights() const { return weights_; }

  /// Converts a single-channel image; intensities must already lie in [0, 1].
  static ImportanceMap from_image(const Image& image);
  Image to_image() const;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<double> weights_;
};

struct Roi {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
};

/// Three-level map description: cores at 1.0, a ring of `ring_value` around
/// each core, 0 elsewhere.
struct RoiSpec {
  static constexpr double kDefaultRingValue = 0.5;

  std::vector<Roi> rois;
  /// Ring thickness in pixels; unset means 10% of each core's larger side
  /// (rounded half-up, at least one pixel).
  std::optional<int> ring_px;
  double ring_value = kDefaultRingValue;

  int ring_for(const Roi& roi) const;
};

/// Rasterizes the spec. Ring membership uses Chebyshev distance to the core,
/// overlaps resolve by maximum. Throws ArgumentError for rectangles outside
/// the image or a ring value outside (0, 1).
ImportanceMap build_map(const RoiSpec& spec, int width, int height);

/// 1e-6 times the mean column marginal, or 1e-6 for an all-zero map.
double default_floor(const ImportanceMap& map);

/// Separable equal-mass partition: column marginal m(c) = floor + sum_rows
/// map(r, c), treated as uniformly spread over [c, c+1). Border i sits where
/// the cumulative mass crosses i * total / K. Rows analogous. The result is
/// discretized.
PoolGrid grid_from_importance(const ImportanceMap& map, int k_cols, int k_rows, double floor);
PoolGrid grid_from_importance(const ImportanceMap& map, int k_cols, int k_rows);

struct Compressed {
  PooledMap pooled;
  PoolGrid grid;
};

/// Importance-driven downsampling to k_cols x k_rows.
Compressed compress(const Image& image, const ImportanceMap& map, int k_cols, int k_rows);

}  // namespace adaptive_pool
