#pragma once

#include <vector>

namespace adaptive_pool {

enum class Axis { Cols, Rows };

/// Non-uniform pooling grid: K+1 border positions per axis partitioning a
/// W x H image into K_cols x K_rows cells. Outer borders sit exactly at 0 and
/// at the image extent; interior borders are real-valued until discretized.
///
/// Construction checks the structural invariants (outer borders pinned,
/// strictly increasing, at least one cell per axis). Whether the grid can be
/// rounded onto whole pixels is checked by discretize().
class PoolGrid {
 public:
  PoolGrid(int width, int height, std::vector<double> cols, std::vector<double> rows);

  int width() const { return width_; }
  int height() const { return height_; }
  int extent(Axis axis) const { return axis == Axis::Cols ? width_ : height_; }

  const std::vector<double>& cols() const { return cols_; }
  const std::vector<double>& rows() const { return rows_; }
  const std::vector<double>& borders(Axis axis) const {
    return axis == Axis::Cols ? cols_ : rows_;
  }

  int cells(Axis axis) const { return static_cast<int>(borders(axis).size()) - 1; }
  int cells_cols() const { return cells(Axis::Cols); }
  int cells_rows() const { return cells(Axis::Rows); }

  /// Interior borders per axis; outer borders never move.
  int movable(Axis axis) const { return cells(axis) - 1; }
  int total_movable() const { return movable(Axis::Cols) + movable(Axis::Rows); }

  /// All borders integral with gaps of at least one pixel.
  bool is_discretized() const;

  /// Copy with interior border `index` (1..K-1) of `axis` set to `value`.
  /// The result must still be strictly increasing.
  PoolGrid with_border(Axis axis, int index, double value) const;

  friend bool operator==(const PoolGrid&, const PoolGrid&) = default;

 private:
  int width_;
  int height_;
  std::vector<double> cols_;
  std::vector<double> rows_;
};

/// Predicted displacements for the interior borders, in pixels.
struct OffsetVector {
  std::vector<double> cols;  // K_cols - 1 entries
  std::vector<double> rows;  // K_rows - 1 entries

  static OffsetVector zeros(const PoolGrid& grid);
  std::size_t size() const { return cols.size() + rows.size(); }
  const std::vector<double>& axis(Axis a) const { return a == Axis::Cols ? cols : rows; }
  std::vector<double>& axis(Axis a) { return a == Axis::Cols ? cols : rows; }

  friend bool operator==(const OffsetVector&, const OffsetVector&) = default;
};

struct ClampReport {
  int overpass_count = 0;
  int total_movable = 0;
  std::vector<bool> col_flags;
  std::vector<bool> row_flags;

  /// overpass_count / total_movable, or 0 for a grid without movable borders.
  double fraction() const;
  const std::vector<bool>& flags(Axis a) const { return a == Axis::Cols ? col_flags : row_flags; }
};

struct ClampedGrid {
  PoolGrid grid;
  ClampReport report;
};

/// Border i at i*W/K (real-valued). Throws SizingError when W < K or H < K.
PoolGrid uniform_grid(int width, int height, int k_cols, int k_rows);

/// Moves every interior border by its offset, sweeping left to right per
/// axis. A border that would end up less than one pixel from its (already
/// moved) left neighbour or its (not yet moved) right neighbour is pinned one
/// pixel inside that neighbour and flagged as overpassed.
ClampedGrid apply_offsets(const PoolGrid& grid, const OffsetVector& offsets);

/// Rounds borders half-up onto pixel boundaries and restores the one-pixel
/// minimum gap. Throws SizingError if an axis has more cells than pixels.
PoolGrid discretize(const PoolGrid& grid);

/// discretize() for one axis given as a non-decreasing border list with the
/// outer borders at 0 and `extent`.
std::vector<double> discretize_borders(const std::vector<double>& borders, int extent);

/// Integer pixel edges of a discretized grid along `axis`. Pixel c belongs to
/// cell i iff edges[i] <= c < edges[i+1]. Throws DimensionError when the grid
/// is not discretized.
std::vector<int> pixel_edges(const PoolGrid& grid, Axis axis);

/// floor(x + 0.5)
double round_half_up(double x);

}  // namespace adaptive_pool
