#include "adaptive_pool/pool_ops.hpp"

#include <string>

#include "adaptive_pool/errors.hpp"
#include "adaptive_pool/kernels.hpp"
#include "adaptive_pool/parallel.hpp"

namespace adaptive_pool {

namespace {

struct CellEdges {
  std::vector<int> cols;
  std::vector<int> rows;
};

CellEdges edges_of(const PoolGrid& grid) {
  return CellEdges{pixel_edges(grid, Axis::Cols), pixel_edges(grid, Axis::Rows)};
}

void check_extent(const Image& image, const PoolGrid& grid) {
  if (image.width() != grid.width() || image.height() != grid.height()) {
    throw DimensionError("image is " + std::to_string(image.width()) + "x" +
                         std::to_string(image.height()) + " but grid spans " +
                         std::to_string(grid.width()) + "x" + std::to_string(grid.height()));
  }
}

void check_upstream(const PoolGrid& grid, const PooledMap& upstream) {
  if (upstream.width() != grid.cells_cols() || upstream.height() != grid.cells_rows()) {
    throw DimensionError("upstream gradient is " + std::to_string(upstream.width()) + "x" +
                         std::to_string(upstream.height()) + " but grid has " +
                         std::to_string(grid.cells_cols()) + "x" +
                         std::to_string(grid.cells_rows()) + " cells");
  }
}

// Mean over [x0, x1) x [y0, y1) of channel c. Every caller goes through here
// so a cell's value depends only on its rectangle.
double cell_mean(const Image& image, int c, int x0, int x1, int y0, int y1) {
  const auto& k = kernels::active();
  const auto width = static_cast<std::size_t>(x1 - x0);
  double total = 0.0;
  for (int y = y0; y < y1; ++y) {
    total += k.sum(image.row(y, c).subspan(static_cast<std::size_t>(x0), width));
  }
  return total / (static_cast<double>(x1 - x0) * static_cast<double>(y1 - y0));
}

void check_movable(const PoolGrid& grid, BorderId border) {
  if (border.index < 1 || border.index >= grid.cells(border.axis)) {
    throw ArgumentError("border " + std::to_string(border.index) + " on the " +
                        (border.axis == Axis::Cols ? "column" : "row") + " axis is not movable");
  }
}

}  // namespace

PooledMap pool_forward(const Image& image, const PoolGrid& grid) {
  check_extent(image, grid);
  const CellEdges e = edges_of(grid);
  const int kc = grid.cells_cols();
  const int kr = grid.cells_rows();
  PooledMap out(kc, kr, image.channels());
  for (int c = 0; c < image.channels(); ++c) {
    for (int j = 0; j < kr; ++j) {
      for (int i = 0; i < kc; ++i) {
        out.at(i, j, c) = cell_mean(image, c, e.cols[i], e.cols[i + 1], e.rows[j], e.rows[j + 1]);
      }
    }
  }
  return out;
}

bool probe_overpasses(const PoolGrid& grid, BorderId border, int h) {
  check_movable(grid, border);
  const auto& b = grid.borders(border.axis);
  const auto j = static_cast<std::size_t>(border.index);
  return b[j] + h > b[j + 1] - 1.0;
}

PooledMap border_gradient(const Image& image, const PoolGrid& grid, BorderId border, int h) {
  check_extent(image, grid);
  check_movable(grid, border);
  if (h < 1) throw ArgumentError("probe displacement h must be at least 1");

  const int kc = grid.cells_cols();
  const int kr = grid.cells_rows();
  PooledMap deriv(kc, kr, image.channels());
  if (probe_overpasses(grid, border, h)) return deriv;

  const double moved_pos = grid.borders(border.axis)[static_cast<std::size_t>(border.index)] + h;
  const CellEdges base = edges_of(discretize(grid));
  const CellEdges moved = edges_of(discretize(grid.with_border(border.axis, border.index, moved_pos)));

  // Cells along the probed axis whose extent changed.
  const auto& base_axis = border.axis == Axis::Cols ? base.cols : base.rows;
  const auto& moved_axis = border.axis == Axis::Cols ? moved.cols : moved.rows;
  const int k_axis = grid.cells(border.axis);
  std::vector<bool> touched(static_cast<std::size_t>(k_axis), false);
  bool any = false;
  for (int e = 1; e < k_axis; ++e) {
    if (base_axis[e] != moved_axis[e]) {
      touched[e - 1] = true;
      touched[e] = true;
      any = true;
    }
  }
  if (!any) return deriv;

  const double step = static_cast<double>(h);
  for (int c = 0; c < image.channels(); ++c) {
    for (int j = 0; j < kr; ++j) {
      for (int i = 0; i < kc; ++i) {
        if (!touched[border.axis == Axis::Cols ? i : j]) continue;
        const double before =
            cell_mean(image, c, base.cols[i], base.cols[i + 1], base.rows[j], base.rows[j + 1]);
        const double after = cell_mean(image, c, moved.cols[i], moved.cols[i + 1],
                                        moved.rows[j], moved.rows[j + 1]);
        deriv.at(i, j, c) = (after - before) / step;
      }
    }
  }
  return deriv;
}

BorderGradient chain_border_gradients(const Image& image, const PoolGrid& grid,
                                      const PooledMap& upstream, int h) {
  check_extent(image, grid);
  check_upstream(grid, upstream);
  if (upstream.channels() != image.channels()) {
    throw DimensionError("upstream gradient channel count does not match the image");
  }

  std::vector<BorderId> borders;
  for (Axis axis : {Axis::Cols, Axis::Rows}) {
    for (int j = 1; j < grid.cells(axis); ++j) borders.push_back(BorderId{axis, j});
  }

  std::vector<double> values(borders.size(), 0.0);
  parallel_for(borders.size(), [&](std::size_t n) {
    const PooledMap deriv = border_gradient(image, grid, borders[n], h);
    double total = 0.0;
    for (int c = 0; c < deriv.channels(); ++c) {
      for (int j = 0; j < deriv.height(); ++j) {
        for (int i = 0; i < deriv.width(); ++i) total += upstream.at(i, j, c) * deriv.at(i, j, c);
      }
    }
    values[n] = total;
  });

  BorderGradient out;
  out.h = h;
  const auto n_cols = static_cast<std::size_t>(grid.movable(Axis::Cols));
  out.cols.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(n_cols));
  out.rows.assign(values.begin() + static_cast<std::ptrdiff_t>(n_cols), values.end());
  return out;
}

Image input_gradient(const PoolGrid& grid, const PooledMap& upstream) {
  check_upstream(grid, upstream);
  const CellEdges e = edges_of(grid);
  Image out(grid.width(), grid.height(), upstream.channels());
  for (int c = 0; c < upstream.channels(); ++c) {
    for (int j = 0; j < grid.cells_rows(); ++j) {
      for (int i = 0; i < grid.cells_cols(); ++i) {
        const double n = static_cast<double>(e.cols[i + 1] - e.cols[i]) *
                         static_cast<double>(e.rows[j + 1] - e.rows[j]);
        const double g = upstream.at(i, j, c) / n;
        for (int y = e.rows[j]; y < e.rows[j + 1]; ++y) {
          for (int x = e.cols[i]; x < e.cols[i + 1]; ++x) out.at(x, y, c) = g;
        }
      }
    }
  }
  return out;
}

PooledMap cell_sizes(const PoolGrid& grid) {
  const CellEdges e = edges_of(grid);
  PooledMap out(grid.cells_cols(), grid.cells_rows(), 1);
  for (int j = 0; j < grid.cells_rows(); ++j) {
    for (int i = 0; i < grid.cells_cols(); ++i) {
      out.at(i, j) = static_cast<double>(e.cols[i + 1] - e.cols[i]) *
                     static_cast<double>(e.rows[j + 1] - e.rows[j]);
    }
  }
  return out;
}

}  // namespace adaptive_pool
