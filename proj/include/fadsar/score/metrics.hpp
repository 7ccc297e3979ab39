#pragma once

#include <span>
#include <utility>

#include "fadsar/core/types.hpp"
#include "fadsar/score/matching.hpp"

namespace fadsar::score {

// F-beta in count form: (1+b^2)*tp / ((1+b^2)*tp + b^2*fn + fp), which at
// beta=1 is exactly 2*tp/(2*tp+fp+fn). Returns 0.0 when tp == 0.
double fbeta(long long tp, long long fp, long long fn, double beta = 1.0);

// ((f1_d + f1_s)/2) * ((f1_v + f1_f)/2)
double avg_f1(double f1_d, double f1_s, double f1_v, double f1_f);

// Everything the per-scene metric components need, tied to one MatchResult.
struct SceneMatch {
    const MatchResult* result = nullptr;
    std::span<const core::DetectionRecord> predictions;
    std::span<const core::LabelRecord> labels;  // confidence-filtered ground truth
    const core::Raster* shore = nullptr;        // nullptr = no shore raster
    int scene_width = 0;
    int scene_height = 0;
};

// TP = matched pairs, FP = unmatched predictions, FN = unmatched labels.
std::pair<double, core::MetricCounts> f1_detection(std::span<const SceneMatch> scenes,
                                                   double beta = 1.0);

struct ShoreOutcome {
    double f1_s = 0.0;
    core::MetricCounts counts;
    long long unknown_fp = 0;  // unmatched predictions with no sampleable distance
    bool computable = true;
};

// Close-to-shore subset: TP = matched pairs whose label distance_from_shore_km
// <= threshold, FN = unmatched close labels, FP = unmatched predictions whose
// raster-sampled distance <= threshold. Predictions that cannot be sampled
// (no raster, nodata, outside grid) make the result not computable and are
// tallied in unknown_fp instead of counts.fp.
ShoreOutcome f1_shore(std::span<const SceneMatch> scenes, const ScoreConfig& config);

// Over matched pairs whose label has is_vessel present; positive class vessel.
std::pair<double, core::MetricCounts> f1_vessel(std::span<const SceneMatch> scenes,
                                                double beta = 1.0);

// Over matched pairs whose label is a vessel with is_fishing present; positive
// class fishing.
std::pair<double, core::MetricCounts> f1_fishing(std::span<const SceneMatch> scenes,
                                                 double beta = 1.0);

// Shore distance in km at a scene pixel, by nearest-neighbor lookup into the
// (possibly lower-resolution) shore raster. nullopt when the cell is missing.
std::optional<double> sample_shore_km(const core::Raster& shore, int row, int col,
                                      int scene_height, int scene_width);

}  // namespace fadsar::score
