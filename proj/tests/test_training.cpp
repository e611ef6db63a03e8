#include <gtest/gtest.h>

#include <vector>

#include "adaptive_pool/errors.hpp"
#include "adaptive_pool/training.hpp"

using namespace adaptive_pool;

namespace {

TrainConfig short_run(int iters) {
  TrainConfig c;
  c.iters = iters;
  c.eval_samples = 16;
  return c;
}

}  // namespace

TEST(ToyTask, DeterministicAndInBounds) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const ToyTask a = ToyTask::make(seed);
    const ToyTask b = ToyTask::make(seed);
    EXPECT_EQ(a.roi.x, b.roi.x);
    EXPECT_EQ(a.roi.y, b.roi.y);
    EXPECT_GE(a.roi.x, 0);
    EXPECT_GE(a.roi.y, 0);
    EXPECT_LE(a.roi.x + a.roi.w, a.size);
    EXPECT_LE(a.roi.y + a.roi.h, a.size);
  }
  EXPECT_THROW(ToyTask::make(0, 8, 9), ArgumentError);
}

TEST(ToyTask, TargetIsRoiMeanAndCentre) {
  ToyTask task;
  task.size = 8;
  task.roi = Roi{2, 4, 2, 2};
  Image image(8, 8, 1, 0.0);
  image.at(2, 4) = 1.0;
  image.at(3, 5) = 0.5;
  image.at(0, 0) = 9.0;  // outside the ROI
  const auto t = task.target_of(image);
  EXPECT_EQ(t[0], 0.375);
  EXPECT_EQ(t[1], 3.0 / 8.0);
}

TEST(OffsetPredictor, ShapesAndZeroInit) {
  const OffsetPredictor p(32, 6);
  EXPECT_EQ(p.inputs(), 64);
  EXPECT_EQ(p.outputs(), 10);
  const Image image(32, 32, 1, 0.8);
  const auto f = p.features(image);
  ASSERT_EQ(f.size(), 64u);
  for (double v : f) EXPECT_NEAR(v, 0.3, 1e-12);
  const OffsetVector o = p.predict(f);
  EXPECT_EQ(o.cols.size(), 5u);
  EXPECT_EQ(o.rows.size(), 5u);
  for (double v : o.cols) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(p.features(Image(16, 16, 1)), DimensionError);
}

TEST(OffsetPredictor, BiasUnitMovesOneBaseCell) {
  OffsetPredictor p(32, 4);
  std::vector<double> grad_w(static_cast<std::size_t>(p.inputs() * p.outputs()), 0.0);
  std::vector<double> grad_b(static_cast<std::size_t>(p.outputs()), 0.0);
  grad_b[0] = -1.0;
  p.update(1.0, grad_w, grad_b);
  const OffsetVector o = p.predict(p.features(Image(32, 32, 1, 0.5)));
  EXPECT_EQ(o.cols[0], 8.0);
  EXPECT_EQ(o.cols[1], 0.0);
}

TEST(TrainDemo, SingleIterationFromZeroInit) {
  const TrainingReport r = train_demo(ToyTask::make(3), short_run(1));
  ASSERT_EQ(r.loss.size(), 1u);
  EXPECT_EQ(r.overpass[0], 0.0);
  EXPECT_EQ(r.lr[0], 0.01);
  ASSERT_TRUE(r.final_grid.has_value());
}

TEST(TrainDemo, ZeroRateKeepsTheUniformGrid) {
  TrainConfig c = short_run(30);
  c.base_lr = 0.0;
  c.dynamic_lr = false;
  const TrainingReport r = train_demo(ToyTask::make(4), c);
  for (double f : r.overpass) EXPECT_EQ(f, 0.0);
  EXPECT_EQ(*r.final_grid, discretize(uniform_grid(32, 32, 6, 6)));
}

TEST(TrainDemo, BitIdenticalGivenSeeds) {
  TrainConfig c = short_run(60);
  c.seed = 9;
  const ToyTask task = ToyTask::make(5);
  const TrainingReport a = train_demo(task, c);
  const TrainingReport b = train_demo(task, c);
  EXPECT_EQ(a.loss, b.loss);
  EXPECT_EQ(a.lr, b.lr);
  EXPECT_EQ(a.overpass, b.overpass);
  EXPECT_EQ(a.final_loss, b.final_loss);
  EXPECT_EQ(*a.final_grid, *b.final_grid);

  c.seed = 10;
  EXPECT_NE(train_demo(task, c).loss, a.loss);
}

TEST(TrainDemo, RateTraceFollowsTheController) {
  const TrainingReport r = train_demo(ToyTask::make(6), short_run(40));
  LrState s = LrState::initial(0.01);
  for (std::size_t i = 0; i < r.lr.size(); ++i) {
    EXPECT_EQ(r.lr[i], s.lr) << "iteration " << i;
    s = lr_step(s, r.overpass[i]);
  }
  EXPECT_EQ(r.final_lr, s.lr);
}

TEST(TrainDemo, FrozenModesNeverOverpass) {
  for (GridMode m : {GridMode::Uniform, GridMode::Importance}) {
    TrainConfig c = short_run(20);
    c.grid_mode = m;
    const TrainingReport r = train_demo(ToyTask::make(7), c);
    for (double f : r.overpass) EXPECT_EQ(f, 0.0);
    EXPECT_EQ(r.grid_mode, m);
  }
}

TEST(TrainDemo, DivergenceIsReported) {
  TrainConfig c = short_run(50);
  c.readout_lr = 1e308;
  EXPECT_THROW(train_demo(ToyTask::make(8), c), DivergenceError);
}

TEST(TrainDemo, RejectsBadConfigs) {
  const ToyTask task = ToyTask::make(0);
  TrainConfig c = short_run(0);
  EXPECT_THROW(train_demo(task, c), ArgumentError);
  c = short_run(1);
  c.k = 40;
  EXPECT_THROW(train_demo(task, c), SizingError);
  c = short_run(1);
  c.base_lr = 0.5;
  EXPECT_THROW(train_demo(task, c), ArgumentError);
}

TEST(GridMode, NamesRoundTrip) {
  for (GridMode m : {GridMode::Learned, GridMode::Uniform, GridMode::Importance}) {
    EXPECT_EQ(parse_grid_mode(grid_mode_name(m)), m);
  }
  EXPECT_FALSE(parse_grid_mode("random").has_value());
}
