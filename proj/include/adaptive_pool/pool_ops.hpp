#pragma once

#include <vector>

#include "adaptive_pool/grid.hpp"
#include "adaptive_pool/image.hpp"

namespace adaptive_pool {

/// An interior border: `index` runs over 1..K-1 of the axis' border list.
struct BorderId {
  Axis axis;
  int index;
};

/// dL/dp for every movable border, same layout as OffsetVector.
struct BorderGradient {
  std::vector<double> cols;
  std::vector<double> rows;
  int h = 1;  // probe displacement in pixels

  const std::vector<double>& axis(Axis a) const { return a == Axis::Cols ? cols : rows; }
};

/// Average of every cell, per channel. The grid must be discretized and span
/// the image exactly.
PooledMap pool_forward(const Image& image, const PoolGrid& grid);

/// Forward-difference derivative of every output cell with respect to one
/// interior border: (y' - y) / h, where y pools discretize(grid) and y'
/// pools discretize(grid with the border moved by +h). Only cells adjacent
/// to a border whose pixel edge actually moved are recomputed; the others
/// are exactly zero. If the probe would bring the border within one pixel
/// of its right neighbour, the whole derivative is zero.
PooledMap border_gradient(const Image& image, const PoolGrid& grid, BorderId border, int h = 1);

/// True when moving `border` by +h would violate the one-pixel gap.
bool probe_overpasses(const PoolGrid& grid, BorderId border, int h);

/// Chain rule over border_gradient: dL/dp_j = sum_cells upstream * dy/dp_j.
/// Border probes run in parallel (see thread_count()); results do not depend
/// on the number of threads.
BorderGradient chain_border_gradients(const Image& image, const PoolGrid& grid,
                                      const PooledMap& upstream, int h = 1);

/// Average-pooling backward: each pixel receives upstream(cell) / n_cell.
Image input_gradient(const PoolGrid& grid, const PooledMap& upstream);

/// Pixel count of every cell of a discretized grid (single channel).
PooledMap cell_sizes(const PoolGrid& grid);

}  // namespace adaptive_pool
