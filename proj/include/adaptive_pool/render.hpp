#pragma once

#include "adaptive_pool/grid.hpp"
#include "adaptive_pool/image.hpp"

namespace adaptive_pool {

/// Full-resolution cell-size map of a discretized grid: each pixel gets
/// 1 - (area - min_area) / (max_area - min_area) of its cell, so small cells
/// are white and large cells black. A grid with a single cell size renders
/// as a constant 0.5.
Image render_grid(const PoolGrid& grid);

/// Nearest-neighbour expansion of pooled values back onto the grid's pixels.
Image expand_cells(const PooledMap& pooled, const PoolGrid& grid);

}  // namespace adaptive_pool
