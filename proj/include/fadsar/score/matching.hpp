#pragma once

#include <span>
#include <vector>

#include "fadsar/core/types.hpp"

namespace fadsar::score {

struct ScoreConfig {
    double match_radius_m = 200.0;
    double shore_threshold_km = 2.0;
    double beta = 1.0;
    core::Confidence min_confidence_gt = core::Confidence::High;

    void validate() const;  // throws ConfigError
};

struct MatchedPair {
    int prediction = -1;
    int label = -1;
    double distance_m = 0.0;
};

struct MatchResult {
    std::vector<MatchedPair> pairs;  // sorted by (label, prediction)
    std::vector<int> unmatched_predictions;
    std::vector<int> unmatched_labels;
};

// One-to-one assignment between predictions and labels of a single scene that
// maximizes the number of pairs within match_radius_m and, among those,
// minimizes the total pixel distance * pixel_spacing_m.
MatchResult match_detections(std::span<const core::DetectionRecord> predictions,
                             std::span<const core::LabelRecord> labels, double pixel_spacing_m,
                             const ScoreConfig& config);

}  // namespace fadsar::score
