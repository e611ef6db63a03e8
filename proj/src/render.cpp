#include "adaptive_pool/render.hpp"

#include <algorithm>

#include "adaptive_pool/errors.hpp"
#include "adaptive_pool/pool_ops.hpp"

namespace adaptive_pool {

Image render_grid(const PoolGrid& grid) {
  const PooledMap areas = cell_sizes(grid);
  const auto [lo, hi] = std::minmax_element(areas.data().begin(), areas.data().end());
  const double min_area = *lo;
  const double range = *hi - *lo;

  PooledMap shade(areas.width(), areas.height(), 1);
  for (int j = 0; j < areas.height(); ++j) {
    for (int i = 0; i < areas.width(); ++i) {
      shade.at(i, j) = range == 0.0 ? 0.5 : 1.0 - (areas.at(i, j) - min_area) / range;
    }
  }
  return expand_cells(shade, grid);
}

Image expand_cells(const PooledMap& pooled, const PoolGrid& grid) {
  if (pooled.width() != grid.cells_cols() || pooled.height() != grid.cells_rows()) {
    throw DimensionError("pooled map does not match the grid's cell counts");
  }
  const auto cols = pixel_edges(grid, Axis::Cols);
  const auto rows = pixel_edges(grid, Axis::Rows);
  Image out(grid.width(), grid.height(), pooled.channels());
  for (int c = 0; c < pooled.channels(); ++c) {
    for (int j = 0; j < grid.cells_rows(); ++j) {
      for (int i = 0; i < grid.cells_cols(); ++i) {
        const double v = pooled.at(i, j, c);
        for (int y = rows[j]; y < rows[j + 1]; ++y) {
          auto row = out.row(y, c);
          std::fill(row.begin() + cols[i], row.begin() + cols[i + 1], v);
        }
      }
    }
  }
  return out;
}

}  // namespace adaptive_pool
