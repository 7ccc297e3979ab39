#pragma once

#include <span>
#include <vector>

#include "fadsar/core/types.hpp"
#include "fadsar/preprocess/pipeline.hpp"

namespace fadsar::refdetect {

struct RefDetectConfig {
    double k_sigma = 4.0;       // threshold = mean + k_sigma * std over channel 1
    int min_area_px = 3;
    double merge_radius_m = 100.0;
    // Class given to every record; the reference detector does not classify.
    core::ClassLabel default_class = core::ClassLabel::Fishing;

    void validate() const;  // throws ConfigError
};

// One blob found in a patch, in patch-local float coordinates.
struct PatchDetection {
    double row = 0.0;
    double col = 0.0;
    int area = 0;
    double mean_intensity = 0.0;  // mean normalized channel-1 value, in [0, 1]
};

// Thresholds channel 1 over valid cells, labels 8-connected components, and
// drops blobs smaller than min_area_px.
std::vector<PatchDetection> detect_patch(const core::Patch& patch, const RefDetectConfig& config);

struct PatchDetections {
    int row_offset = 0;
    int col_offset = 0;
    std::vector<PatchDetection> detections;
};

// Translates patch detections to the scene frame, clamps into bounds, merges
// records within merge_radius_m keeping the higher-intensity one, and emits
// DetectionRecords sorted by (row, col). score = mean normalized intensity.
std::vector<core::DetectionRecord> aggregate_detections(
    const std::string& scene_id, std::span<const PatchDetections> per_patch, int scene_width,
    int scene_height, double pixel_spacing_m, const RefDetectConfig& config);

// preprocess -> detect per patch -> aggregate, the whole detector in one call.
std::vector<core::DetectionRecord> run_reference_detector(const core::Scene& scene,
                                                          const preprocess::TilingPolicy& policy,
                                                          const preprocess::FusionMethod& fusion,
                                                          const RefDetectConfig& config,
                                                          int workers = 1);

}  // namespace fadsar::refdetect
