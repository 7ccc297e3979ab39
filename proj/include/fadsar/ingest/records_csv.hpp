#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "fadsar/core/types.hpp"

namespace fadsar::ingest {

// Column conventions. Labels:
//   detect_id,scene_id,detect_scene_row,detect_scene_column,is_vessel,
//   is_fishing,vessel_length_m,confidence,distance_from_shore_km,source
// Predictions:
//   scene_id,detect_scene_row,detect_scene_column,is_vessel,is_fishing,score
// Blank optional fields mean absent; booleans accept true/false/True/False/1/0
// and are written lowercase; unknown extra columns are ignored.

std::vector<core::LabelRecord> parse_labels(std::istream& in);
std::vector<core::DetectionRecord> parse_predictions(std::istream& in);

void write_labels(std::span<const core::LabelRecord> records, std::ostream& out);
void write_predictions(std::span<const core::DetectionRecord> records, std::ostream& out);

std::vector<core::LabelRecord> load_labels(const std::filesystem::path& path);
std::vector<core::DetectionRecord> load_predictions(const std::filesystem::path& path);
void save_labels(std::span<const core::LabelRecord> records, const std::filesystem::path& path);
void save_predictions(std::span<const core::DetectionRecord> records,
                      const std::filesystem::path& path);

}  // namespace fadsar::ingest
