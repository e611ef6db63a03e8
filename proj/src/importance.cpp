#include "adaptive_pool/importance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adaptive_pool/errors.hpp"
#include "adaptive_pool/kernels.hpp"
#include "adaptive_pool/pool_ops.hpp"

namespace adaptive_pool {

namespace {

void check_weight(double w) {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw ArgumentError("importance weight " + std::to_string(w) + " outside [0, 1]");
  }
}

// Positions are snapped to this resolution before rounding so that an exact
// tie in the continuous partition (a border at k + 0.5) is not flipped by
// accumulated summation error.
constexpr double kSnap = 1e-9;

std::vector<double> equal_mass_borders(const std::vector<double>& marginal, int k) {
  const int extent = static_cast<int>(marginal.size());
  std::vector<double> cumulative(marginal.size() + 1, 0.0);
  for (std::size_t c = 0; c < marginal.size(); ++c) {
    cumulative[c + 1] = cumulative[c] + marginal[c];
  }
  const double total = cumulative.back();

  std::vector<double> borders(static_cast<std::size_t>(k) + 1, 0.0);
  borders.back() = static_cast<double>(extent);
  std::size_t c = 0;
  for (int i = 1; i < k; ++i) {
    const double target = static_cast<double>(i) * total / k;
    while (c + 1 < marginal.size() && cumulative[c + 1] <= target) ++c;
    double pos = static_cast<double>(c) + (target - cumulative[c]) / marginal[c];
    pos = std::clamp(pos, 0.0, static_cast<double>(extent));
    const double snapped = std::round(pos / kSnap) * kSnap;
    borders[i] = std::max(snapped, borders[i - 1]);
  }
  return discretize_borders(borders, extent);
}

}  // namespace

ImportanceMap::ImportanceMap(int width, int height, double fill)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) throw ArgumentError("importance map extents must be positive");
  check_weight(fill);
  weights_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

ImportanceMap::ImportanceMap(int width, int height, std::vector<double> weights)
    : width_(width), height_(height), weights_(std::move(weights)) {
  if (width < 1 || height < 1) throw ArgumentError("importance map extents must be positive");
  if (weights_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw DimensionError("importance weights do not match map extents");
  }
  std::for_each(weights_.begin(), weights_.end(), check_weight);
}

void ImportanceMap::set(int x, int y, double w) {
  check_weight(w);
  weights_[index(x, y)] = w;
}

ImportanceMap ImportanceMap::from_image(const Image& image) {
  if (image.channels() != 1) {
    throw DimensionError("importance map image must have a single channel");
  }
  const auto data = image.data();
  return ImportanceMap(image.width(), image.height(), std::vector<double>(data.begin(), data.end()));
}

Image ImportanceMap::to_image() const { return Image(width_, height_, 1, weights_); }

int RoiSpec::ring_for(const Roi& roi) const {
  if (ring_px) return *ring_px;
  const double side = static_cast<double>(std::max(roi.w, roi.h));
  return std::max(1, static_cast<int>(round_half_up(0.1 * side)));
}

ImportanceMap build_map(const RoiSpec& spec, int width, int height) {
  if (!(spec.ring_value > 0.0 && spec.ring_value < 1.0)) {
    throw ArgumentError("ring value must lie strictly between 0 and 1");
  }
  if (spec.ring_px && *spec.ring_px < 0) throw ArgumentError("ring thickness must be >= 0");

  ImportanceMap map(width, height);
  for (const Roi& roi : spec.rois) {
    if (roi.w < 1 || roi.h < 1 || roi.x < 0 || roi.y < 0 || roi.x + roi.w > width ||
        roi.y + roi.h > height) {
      throw ArgumentError("ROI (" + std::to_string(roi.x) + "," + std::to_string(roi.y) + "," +
                          std::to_string(roi.w) + "," + std::to_string(roi.h) +
                          ") is outside the " + std::to_string(width) + "x" +
                          std::to_string(height) + " image");
    }
    const int ring = spec.ring_for(roi);
    const int x0 = std::max(0, roi.x - ring);
    const int y0 = std::max(0, roi.y - ring);
    const int x1 = std::min(width, roi.x + roi.w + ring);
    const int y1 = std::min(height, roi.y + roi.h + ring);
    for (int y = y0; y < y1; ++y) {
      for (int x = x0; x < x1; ++x) {
        const bool core = x >= roi.x && x < roi.x + roi.w && y >= roi.y && y < roi.y + roi.h;
        const double w = core ? 1.0 : spec.ring_value;
        if (w > map.at(x, y)) map.set(x, y, w);
      }
    }
  }
  return map;
}

double default_floor(const ImportanceMap& map) {
  const auto& k = kernels::active();
  const double mean_marginal = k.sum(map.weights()) / map.width();
  return mean_marginal > 0.0 ? 1e-6 * mean_marginal : 1e-6;
}

PoolGrid grid_from_importance(const ImportanceMap& map, int k_cols, int k_rows, double floor) {
  if (k_cols < 1 || k_rows < 1 || k_cols > map.width() || k_rows > map.height()) {
    throw SizingError("cannot place a " + std::to_string(k_cols) + "x" + std::to_string(k_rows) +
                      " grid on a " + std::to_string(map.width()) + "x" +
                      std::to_string(map.height()) + " map");
  }
  if (!(floor > 0.0)) throw ArgumentError("importance floor must be positive");

  const auto& k = kernels::active();
  const auto w = static_cast<std::size_t>(map.width());
  std::vector<double> col_marginal(w, 0.0);
  std::vector<double> row_marginal(static_cast<std::size_t>(map.height()), 0.0);
  const std::span<const double> weights(map.weights());
  for (int y = 0; y < map.height(); ++y) {
    const auto row = weights.subspan(static_cast<std::size_t>(y) * w, w);
    k.add(col_marginal, row);
    row_marginal[static_cast<std::size_t>(y)] = floor + k.sum(row);
  }
  for (double& m : col_marginal) m += floor;

  return PoolGrid(map.width(), map.height(), equal_mass_borders(col_marginal, k_cols),
                  equal_mass_borders(row_marginal, k_rows));
}

PoolGrid grid_from_importance(const ImportanceMap& map, int k_cols, int k_rows) {
  return grid_from_importance(map, k_cols, k_rows, default_floor(map));
}

Compressed compress(const Image& image, const ImportanceMap& map, int k_cols, int k_rows) {
  if (image.width() != map.width() || image.height() != map.height()) {
    throw DimensionError("importance map is " + std::to_string(map.width()) + "x" +
                         std::to_string(map.height()) + " but image is " +
                         std::to_string(image.width()) + "x" + std::to_string(image.height()));
  }
  PoolGrid grid = grid_from_importance(map, k_cols, k_rows);
  PooledMap pooled = pool_forward(image, grid);
  return Compressed{std::move(pooled), std::move(grid)};
}

}  // namespace adaptive_pool
