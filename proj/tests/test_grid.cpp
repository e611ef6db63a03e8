#include <gtest/gtest.h>

#include <vector>

#include "adaptive_pool/errors.hpp"
#include "adaptive_pool/grid.hpp"
#include "adaptive_pool/rng.hpp"
#include "support.hpp"

using namespace adaptive_pool;

namespace {

PoolGrid cols_only(int width, std::vector<double> cols) { return PoolGrid(width, 1, std::move(cols), {0.0, 1.0}); }

ClampedGrid offset_cols(int width, std::vector<double> cols, std::vector<double> offsets) {
  return apply_offsets(cols_only(width, std::move(cols)), OffsetVector{std::move(offsets), {}});
}

int flag_count(const ClampReport& r) {
  int n = 0;
  for (Axis a : {Axis::Cols, Axis::Rows}) {
    for (bool f : r.flags(a)) n += f ? 1 : 0;
  }
  return n;
}

}  // namespace

TEST(UniformGrid, EvenDivision) {
  const PoolGrid g = uniform_grid(4, 4, 2, 2);
  EXPECT_EQ(g.cols(), (std::vector<double>{0, 2, 4}));
  EXPECT_EQ(g.rows(), (std::vector<double>{0, 2, 4}));
}

TEST(UniformGrid, ThirtyCellsOn112) {
  const PoolGrid g = uniform_grid(112, 112, 30, 30);
  ASSERT_EQ(g.cols().size(), 31u);
  for (int i = 0; i <= 30; ++i) {
    EXPECT_DOUBLE_EQ(g.cols()[i], i * 112.0 / 30.0);
    EXPECT_DOUBLE_EQ(g.rows()[i], i * 112.0 / 30.0);
  }
  EXPECT_EQ(g.cols().back(), 112.0);
  EXPECT_EQ(g.total_movable(), 58);
}

TEST(UniformGrid, MoreCellsThanPixelsIsRejected) {
  EXPECT_THROW(uniform_grid(3, 3, 4, 4), SizingError);
  EXPECT_NO_THROW(uniform_grid(3, 8, 2, 4));
  EXPECT_THROW(uniform_grid(8, 3, 2, 4), SizingError);
}

TEST(PoolGrid, RejectsBrokenBorders) {
  EXPECT_THROW(PoolGrid(4, 1, {0, 3, 2, 4}, {0, 1}), ArgumentError);
  EXPECT_THROW(PoolGrid(4, 1, {0.5, 2, 4}, {0, 1}), ArgumentError);
  EXPECT_THROW(PoolGrid(4, 1, {0, 2, 5}, {0, 1}), ArgumentError);
  EXPECT_THROW(PoolGrid(4, 1, {0}, {0, 1}), ArgumentError);
}

TEST(ApplyOffsets, ZeroOffsetIsIdentity) {
  const ClampedGrid r = offset_cols(4, {0, 2, 4}, {0.0});
  EXPECT_EQ(r.grid.cols(), (std::vector<double>{0, 2, 4}));
  EXPECT_EQ(r.report.overpass_count, 0);
}

TEST(ApplyOffsets, ClampsOnePixelBelowRightNeighbour) {
  const ClampedGrid r = offset_cols(4, {0, 2, 4}, {5.0});
  EXPECT_EQ(r.grid.cols(), (std::vector<double>{0, 3, 4}));
  EXPECT_EQ(r.report.overpass_count, 1);
  EXPECT_TRUE(r.report.col_flags[0]);
}

TEST(ApplyOffsets, SequentialSweepAgainstUpdatedLeftNeighbour) {
  // First border: 2+4=6 clamps to 4 (one below the original 5). Second: 5-1=4
  // is now too close to the updated left neighbour 4, so it clamps to 5.
  const ClampedGrid r = offset_cols(8, {0, 2, 5, 8}, {4.0, -1.0});
  EXPECT_EQ(r.grid.cols(), (std::vector<double>{0, 4, 5, 8}));
  EXPECT_EQ(r.report.overpass_count, 2);
  EXPECT_EQ(r.report.total_movable, 2);
  EXPECT_DOUBLE_EQ(r.report.fraction(), 1.0);
}

TEST(ApplyOffsets, FreeMoveIsNotFlagged) {
  const ClampedGrid r = offset_cols(10, {0, 3, 6, 10}, {-1.5, 2.25});
  EXPECT_EQ(r.grid.cols(), (std::vector<double>{0, 1.5, 8.25, 10}));
  EXPECT_EQ(r.report.overpass_count, 0);
}

TEST(ApplyOffsets, LengthMismatchIsRejected) {
  EXPECT_THROW(offset_cols(8, {0, 2, 5, 8}, {1.0}), DimensionError);
}

TEST(ApplyOffsets, FuzzedOffsetsKeepInvariants) {
  Rng rng(20240101);
  for (int n = 0; n < 2000; ++n) {
    const int w = rng.uniform_int(1, 40);
    const int h = rng.uniform_int(1, 40);
    const int kc = rng.uniform_int(1, w);
    const int kr = rng.uniform_int(1, h);
    const PoolGrid g = uniform_grid(w, h, kc, kr);
    OffsetVector off = OffsetVector::zeros(g);
    for (double& o : off.cols) o = rng.uniform(-10.0, 10.0) * w;
    for (double& o : off.rows) o = rng.uniform(-10.0, 10.0) * h;
    const ClampedGrid r = apply_offsets(g, off);
    ASSERT_TRUE(oracle::grid_invariants_hold(r.grid)) << "case " << n;
    EXPECT_EQ(r.report.overpass_count, flag_count(r.report));
    EXPECT_LE(r.report.overpass_count, r.report.total_movable);
    EXPECT_NO_THROW(discretize(r.grid));
  }
}

TEST(ApplyOffsets, OverpassCountMonotoneInCommonScale) {
  Rng rng(5);
  for (int n = 0; n < 500; ++n) {
    const int w = rng.uniform_int(4, 30);
    const int k = rng.uniform_int(2, std::min(w, 8));
    const PoolGrid g = uniform_grid(w, w, k, k);
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    OffsetVector base = OffsetVector::zeros(g);
    for (double& o : base.cols) o = sign * rng.uniform(0.0, 2.0);
    for (double& o : base.rows) o = sign * rng.uniform(0.0, 2.0);
    int previous = 0;
    for (double scale : {1.0, 1.5, 2.0, 4.0, 10.0, 100.0}) {
      OffsetVector scaled = base;
      for (double& o : scaled.cols) o *= scale;
      for (double& o : scaled.rows) o *= scale;
      const int count = apply_offsets(g, scaled).report.overpass_count;
      EXPECT_GE(count, previous) << "case " << n << " scale " << scale;
      previous = count;
    }
  }
}

TEST(Discretize, Examples) {
  EXPECT_EQ(discretize(cols_only(4, {0, 1.4, 4})).cols(), (std::vector<double>{0, 1, 4}));
  EXPECT_EQ(discretize(cols_only(4, {0, 1.5, 2.2, 4})).cols(), (std::vector<double>{0, 2, 3, 4}));
  EXPECT_EQ(discretize(cols_only(4, {0, 2, 4})).cols(), (std::vector<double>{0, 2, 4}));
}

TEST(Discretize, PushesBackFromTheOuterBorder) {
  EXPECT_EQ(discretize(cols_only(4, {0, 2.6, 3.2, 3.7, 4})).cols(), (std::vector<double>{0, 1, 2, 3, 4}));
}

TEST(Discretize, TooDenseIsRejected) {
  EXPECT_THROW(discretize(cols_only(2, {0, 0.5, 1.0, 1.5, 2})), SizingError);
}

TEST(Discretize, IdempotentAndTiles) {
  Rng rng(77);
  for (int n = 0; n < 1000; ++n) {
    const int w = rng.uniform_int(1, 50);
    const int h = rng.uniform_int(1, 50);
    const PoolGrid g0 = uniform_grid(w, h, rng.uniform_int(1, w), rng.uniform_int(1, h));
    OffsetVector off = OffsetVector::zeros(g0);
    for (double& o : off.cols) o = rng.uniform(-1.0, 1.0) * w;
    for (double& o : off.rows) o = rng.uniform(-1.0, 1.0) * h;
    const PoolGrid d = discretize(apply_offsets(g0, off).grid);
    ASSERT_TRUE(d.is_discretized());
    EXPECT_EQ(discretize(d), d);

    // Every pixel column lands in exactly one cell.
    const auto edges = pixel_edges(d, Axis::Cols);
    for (int x = 0; x < w; ++x) {
      int owners = 0;
      for (std::size_t i = 0; i + 1 < edges.size(); ++i) owners += (edges[i] <= x && x < edges[i + 1]) ? 1 : 0;
      ASSERT_EQ(owners, 1);
    }
  }
}

TEST(PixelEdges, RequiresDiscretizedGrid) {
  EXPECT_THROW(pixel_edges(cols_only(4, {0, 1.5, 4}), Axis::Cols), DimensionError);
  EXPECT_EQ(pixel_edges(cols_only(4, {0, 1, 4}), Axis::Cols), (std::vector<int>{0, 1, 4}));
}

TEST(RoundHalfUp, TiesGoUp) {
  EXPECT_EQ(round_half_up(2.5), 3.0);
  EXPECT_EQ(round_half_up(-2.5), -2.0);
  EXPECT_EQ(round_half_up(2.4999), 2.0);
}
