#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "adaptive_pool/errors.hpp"
#include "adaptive_pool/rng.hpp"
#include "adaptive_pool/serialization.hpp"

using namespace adaptive_pool;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(GridJson, IntegralBordersAreWrittenAsIntegers) {
  const json j = grid_to_json(PoolGrid(4, 3, {0, 2, 4}, {0, 1, 3}));
  EXPECT_EQ(j.dump(), R"({"cols":[0,2,4],"h":3,"rows":[0,1,3],"w":4})");
}

TEST(GridJson, RoundTripIsExact) {
  Rng rng(51);
  for (int n = 0; n < 200; ++n) {
    const int w = rng.uniform_int(1, 120);
    const int h = rng.uniform_int(1, 120);
    const PoolGrid base = uniform_grid(w, h, rng.uniform_int(1, w), rng.uniform_int(1, h));
    OffsetVector off = OffsetVector::zeros(base);
    for (double& o : off.cols) o = rng.uniform(-0.3, 0.3) * w;
    for (double& o : off.rows) o = rng.uniform(-0.3, 0.3) * h;
    const PoolGrid real = apply_offsets(base, off).grid;
    EXPECT_EQ(grid_from_json(json::parse(grid_to_json(real).dump())), real);
    const PoolGrid disc = discretize(real);
    EXPECT_EQ(grid_from_json(json::parse(grid_to_json(disc).dump())), disc);
  }
}

TEST(GridJson, FileRoundTripIsByteStable) {
  const fs::path dir = fs::temp_directory_path() / "adaptive_pool_serialization";
  fs::create_directories(dir);
  const PoolGrid g = discretize(uniform_grid(112, 112, 30, 30));
  save_grid(g, dir / "a.json");
  const PoolGrid back = load_grid(dir / "a.json");
  EXPECT_EQ(back, g);
  save_grid(back, dir / "b.json");
  EXPECT_EQ(slurp(dir / "a.json"), slurp(dir / "b.json"));
  fs::remove_all(dir);
}

TEST(GridJson, MalformedDocumentsAreRejected) {
  EXPECT_THROW(grid_from_json(json::array()), ArgumentError);
  EXPECT_THROW(grid_from_json(json{{"w", 4}, {"h", 4}, {"cols", {0, 4}}}), ArgumentError);
  EXPECT_THROW(grid_from_json(json{{"w", 4}, {"h", 4}, {"cols", {0, 3, 2, 4}}, {"rows", {0, 4}}}), ArgumentError);
  EXPECT_THROW(grid_from_json(json{{"w", 4}, {"h", 4}, {"cols", {0, "x", 4}}, {"rows", {0, 4}}}), ArgumentError);
  EXPECT_THROW(load_grid("/nonexistent/grid.json"), IoError);
}

TEST(RoiJson, RoundTrip) {
  RoiSpec spec;
  spec.rois = {Roi{1, 2, 3, 4}, Roi{10, 20, 5, 6}};
  spec.ring_px = 3;
  spec.ring_value = 0.25;
  const RoiSpec back = roi_spec_from_json(roi_spec_to_json(spec));
  ASSERT_EQ(back.rois.size(), 2u);
  EXPECT_EQ(back.rois[1].x, 10);
  EXPECT_EQ(back.rois[1].h, 6);
  EXPECT_EQ(back.ring_px, 3);
  EXPECT_EQ(back.ring_value, 0.25);

  const RoiSpec defaults = roi_spec_from_json(json::parse(R"({"rois":[{"x":0,"y":0,"w":2,"h":2}]})"));
  EXPECT_FALSE(defaults.ring_px.has_value());
  EXPECT_EQ(defaults.ring_value, RoiSpec::kDefaultRingValue);
  EXPECT_THROW(roi_spec_from_json(json::parse(R"({"regions":[]})")), ArgumentError);
}

TEST(ReportJson, CarriesTracesAndFinalGrid) {
  TrainingReport r;
  r.grid_mode = GridMode::Importance;
  r.dynamic_lr = false;
  r.loss = {0.5, 0.25};
  r.lr = {0.01, 0.01};
  r.overpass = {0.0, 0.1};
  r.final_loss = 0.2;
  r.final_grid = discretize(uniform_grid(8, 8, 2, 2));
  const json j = report_to_json(r);
  EXPECT_EQ(j.at("grid_mode"), "importance");
  EXPECT_EQ(j.at("dynamic_lr"), false);
  EXPECT_EQ(j.at("iterations"), 2);
  EXPECT_EQ(j.at("loss").get<std::vector<double>>(), r.loss);
  EXPECT_EQ(j.at("overpass").get<std::vector<double>>(), r.overpass);
  EXPECT_EQ(grid_from_json(j.at("final_grid")), *r.final_grid);
}
