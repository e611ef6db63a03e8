#include "adaptive_pool/serialization.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>

#include "adaptive_pool/errors.hpp"

namespace adaptive_pool {

using nlohmann::json;

namespace {

json borders_to_json(const std::vector<double>& borders) {
  json arr = json::array();
  for (double b : borders) {
    if (b == std::floor(b) && std::abs(b) < 9.0e15) {
      arr.push_back(static_cast<std::int64_t>(b));
    } else {
      arr.push_back(b);
    }
  }
  return arr;
}

std::vector<double> borders_from_json(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw ArgumentError(std::string("grid JSON: missing array '") + key + "'");
  }
  std::vector<double> out;
  for (const json& v : j.at(key)) {
    if (!v.is_number()) throw ArgumentError(std::string("grid JSON: non-numeric entry in '") + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

int int_field(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw ArgumentError(std::string(what) + ": missing integer '" + key + "'");
  }
  return j.at(key).get<int>();
}

}  // namespace

json grid_to_json(const PoolGrid& grid) {
  return json{{"w", grid.width()},
              {"h", grid.height()},
              {"cols", borders_to_json(grid.cols())},
              {"rows", borders_to_json(grid.rows())}};
}

PoolGrid grid_from_json(const json& j) {
  if (!j.is_object()) throw ArgumentError("grid JSON must be an object");
  return PoolGrid(int_field(j, "w", "grid JSON"), int_field(j, "h", "grid JSON"),
                  borders_from_json(j, "cols"), borders_from_json(j, "rows"));
}

json roi_spec_to_json(const RoiSpec& spec) {
  json rois = json::array();
  for (const Roi& r : spec.rois) rois.push_back(json{{"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}});
  json out{{"rois", rois}, {"ring_value", spec.ring_value}};
  if (spec.ring_px) out["ring_px"] = *spec.ring_px;
  return out;
}

RoiSpec roi_spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rois") || !j.at("rois").is_array()) {
    throw ArgumentError("ROI JSON: expected an object with a 'rois' array");
  }
  RoiSpec spec;
  for (const json& r : j.at("rois")) {
    spec.rois.push_back(Roi{int_field(r, "x", "ROI JSON"), int_field(r, "y", "ROI JSON"),
                            int_field(r, "w", "ROI JSON"), int_field(r, "h", "ROI JSON")});
  }
  if (j.contains("ring_px")) spec.ring_px = int_field(j, "ring_px", "ROI JSON");
  if (j.contains("ring_value")) {
    if (!j.at("ring_value").is_number()) throw ArgumentError("ROI JSON: 'ring_value' must be a number");
    spec.ring_value = j.at("ring_value").get<double>();
  }
  return spec;
}

json report_to_json(const TrainingReport& report) {
  json out{{"grid_mode", std::string(grid_mode_name(report.grid_mode))},
           {"dynamic_lr", report.dynamic_lr},
           {"iterations", report.loss.size()},
           {"loss", report.loss},
           {"lr", report.lr},
           {"overpass", report.overpass},
           {"final_loss", report.final_loss},
           {"final_lr", report.final_lr},
           {"roi_cell_area", report.roi_cell_area},
           {"background_cell_area", report.background_cell_area}};
  if (report.final_grid) out["final_grid"] = grid_to_json(*report.final_grid);
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string() + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_json_file(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError(path.string() + ": write failed");
}

PoolGrid load_grid(const std::filesystem::path& path) { return grid_from_json(read_json_file(path)); }

void save_grid(const PoolGrid& grid, const std::filesystem::path& path) {
  write_json_file(grid_to_json(grid), path);
}

RoiSpec load_roi_spec(const std::filesystem::path& path) {
  return roi_spec_from_json(read_json_file(path));
}

}  // namespace adaptive_pool
