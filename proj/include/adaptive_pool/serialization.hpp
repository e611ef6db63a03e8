#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "adaptive_pool/grid.hpp"
#include "adaptive_pool/importance.hpp"
#include "adaptive_pool/training.hpp"

namespace adaptive_pool {

// Grid: {"w": int, "h": int, "cols": [...], "rows": [...]}. Integral
// borders are written as JSON integers so discretized grids round-trip
// byte for byte.
nlohmann::json grid_to_json(const PoolGrid& grid);
PoolGrid grid_from_json(const nlohmann::json& j);

// RoiSpec: {"rois": [{"x","y","w","h"}], "ring_px": int?, "ring_value": real?}
nlohmann::json roi_spec_to_json(const RoiSpec& spec);
RoiSpec roi_spec_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const TrainingReport& report);

/// Parses a JSON file; IoError on unreadable or malformed input.
nlohmann::json read_json_file(const std::filesystem::path& path);
/// Writes `j` with two-space indentation and a trailing newline.
void write_json_file(const nlohmann::json& j, const std::filesystem::path& path);

PoolGrid load_grid(const std::filesystem::path& path);
void save_grid(const PoolGrid& grid, const std::filesystem::path& path);
RoiSpec load_roi_spec(const std::filesystem::path& path);

}  // namespace adaptive_pool
