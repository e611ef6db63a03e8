#include "adaptive_pool/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adaptive_pool/errors.hpp"

namespace adaptive_pool {

namespace {

void check_axis(const std::vector<double>& borders, int extent, const char* name) {
  if (borders.size() < 2) {
    throw ArgumentError(std::string(name) + ": need at least two borders");
  }
  if (borders.front() != 0.0 || borders.back() != static_cast<double>(extent)) {
    throw ArgumentError(std::string(name) + ": outer borders must be 0 and " +
                        std::to_string(extent));
  }
  for (std::size_t i = 1; i < borders.size(); ++i) {
    if (!std::isfinite(borders[i]) || !(borders[i] > borders[i - 1])) {
      throw ArgumentError(std::string(name) + ": borders must be finite and strictly increasing");
    }
  }
}

// Smallest x with x - left >= 1 and largest x with right - x >= 1, exactly in
// floating point. left + 1 alone can round to a gap one ulp short.
double one_past(double left) {
  double x = left + 1.0;
  while (x - left < 1.0) x = std::nextafter(x, HUGE_VAL);
  return x;
}

double one_before(double right) {
  double x = right - 1.0;
  while (right - x < 1.0) x = std::nextafter(x, -HUGE_VAL);
  return x;
}

// Sequential clamp sweep over one axis. `flags` receives one entry per
// interior border.
int clamp_axis(std::vector<double>& b, const std::vector<double>& offsets, int extent,
               std::vector<bool>& flags) {
  const int k = static_cast<int>(b.size()) - 1;
  flags.assign(static_cast<std::size_t>(k - 1), false);
  int overpassed = 0;
  for (int j = 1; j < k; ++j) {
    const double left = b[j - 1];
    const double lo = one_past(left);
    // Never leave less than one pixel per remaining cell on the right.
    const double hi = std::min(one_before(b[j + 1]), static_cast<double>(extent - (k - j)));
    const double moved = b[j] + offsets[j - 1];
    double placed = moved;
    if (lo > hi || moved < lo) {
      placed = lo;
    } else if (moved > hi) {
      placed = hi;
    }
    if (placed != moved) {
      flags[j - 1] = true;
      ++overpassed;
    }
    b[j] = placed;
  }
  return overpassed;
}

std::vector<double> discretize_axis_impl(const std::vector<double>& b, int extent) {
  const int k = static_cast<int>(b.size()) - 1;
  if (k > extent) {
    throw SizingError("cannot fit " + std::to_string(k) + " cells into " +
                      std::to_string(extent) + " pixels");
  }
  std::vector<double> r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = round_half_up(b[i]);
  r.front() = 0.0;
  r.back() = static_cast<double>(extent);
  for (int j = 1; j < k; ++j) r[j] = std::max(r[j], r[j - 1] + 1.0);
  for (int j = k - 1; j >= 1; --j) r[j] = std::min(r[j], r[j + 1] - 1.0);
  return r;
}

bool axis_discretized(const std::vector<double>& b) {
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] != std::floor(b[i])) return false;
    if (i > 0 && b[i] < b[i - 1] + 1.0) return false;
  }
  return true;
}

}  // namespace

double round_half_up(double x) { return std::floor(x + 0.5); }

std::vector<double> discretize_borders(const std::vector<double>& borders, int extent) {
  return discretize_axis_impl(borders, extent);
}

PoolGrid::PoolGrid(int width, int height, std::vector<double> cols, std::vector<double> rows)
    : width_(width), height_(height), cols_(std::move(cols)), rows_(std::move(rows)) {
  if (width_ < 1 || height_ < 1) {
    throw ArgumentError("grid extents must be positive");
  }
  check_axis(cols_, width_, "cols");
  check_axis(rows_, height_, "rows");
}

bool PoolGrid::is_discretized() const { return axis_discretized(cols_) && axis_discretized(rows_); }

PoolGrid PoolGrid::with_border(Axis axis, int index, double value) const {
  if (index < 1 || index >= cells(axis)) {
    throw ArgumentError("border " + std::to_string(index) + " is not movable");
  }
  std::vector<double> c = cols_;
  std::vector<double> r = rows_;
  (axis == Axis::Cols ? c : r)[static_cast<std::size_t>(index)] = value;
  return PoolGrid(width_, height_, std::move(c), std::move(r));
}

OffsetVector OffsetVector::zeros(const PoolGrid& grid) {
  return OffsetVector{std::vector<double>(static_cast<std::size_t>(grid.movable(Axis::Cols)), 0.0),
                      std::vector<double>(static_cast<std::size_t>(grid.movable(Axis::Rows)), 0.0)};
}

double ClampReport::fraction() const {
  return total_movable == 0 ? 0.0 : static_cast<double>(overpass_count) / total_movable;
}

PoolGrid uniform_grid(int width, int height, int k_cols, int k_rows) {
  if (width < 1 || height < 1 || k_cols < 1 || k_rows < 1) {
    throw SizingError("grid extents and cell counts must be positive");
  }
  if (width < k_cols || height < k_rows) {
    throw SizingError("image " + std::to_string(width) + "x" + std::to_string(height) +
                      " is smaller than grid " + std::to_string(k_cols) + "x" +
                      std::to_string(k_rows));
  }
  auto axis = [](int extent, int k) {
    std::vector<double> b(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) b[i] = static_cast<double>(i) * extent / k;
    return b;
  };
  return PoolGrid(width, height, axis(width, k_cols), axis(height, k_rows));
}

ClampedGrid apply_offsets(const PoolGrid& grid, const OffsetVector& offsets) {
  if (offsets.cols.size() != static_cast<std::size_t>(grid.movable(Axis::Cols)) ||
      offsets.rows.size() != static_cast<std::size_t>(grid.movable(Axis::Rows))) {
    throw DimensionError("offset vector length does not match the grid's movable borders");
  }
  std::vector<double> cols = grid.cols();
  std::vector<double> rows = grid.rows();
  ClampReport report;
  report.total_movable = grid.total_movable();
  report.overpass_count = clamp_axis(cols, offsets.cols, grid.width(), report.col_flags) +
                          clamp_axis(rows, offsets.rows, grid.height(), report.row_flags);
  return ClampedGrid{PoolGrid(grid.width(), grid.height(), std::move(cols), std::move(rows)),
                     std::move(report)};
}

PoolGrid discretize(const PoolGrid& grid) {
  return PoolGrid(grid.width(), grid.height(), discretize_borders(grid.cols(), grid.width()),
                  discretize_borders(grid.rows(), grid.height()));
}

std::vector<int> pixel_edges(const PoolGrid& grid, Axis axis) {
  const auto& b = grid.borders(axis);
  if (!axis_discretized(b)) {
    throw DimensionError("grid is not discretized");
  }
  std::vector<int> edges(b.size());
  std::transform(b.begin(), b.end(), edges.begin(), [](double v) { return static_cast<int>(v); });
  return edges;
}

}  // namespace adaptive_pool
