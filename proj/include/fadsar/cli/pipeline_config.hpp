#pragma once

#include <filesystem>

#include "fadsar/annotate/filter.hpp"
#include "fadsar/preprocess/fusion.hpp"
#include "fadsar/preprocess/tiling.hpp"
#include "fadsar/refdetect/detector.hpp"
#include "fadsar/score/matching.hpp"

namespace fadsar::cli {

// Keys of the JSON config file (all optional, flat object):
//   patch_size, stride, edge_policy, fusion, bbox_size, min_confidence,
//   drop_ambiguous, k_sigma, min_area_px, merge_radius_m, detector_class,
//   match_radius_m, shore_km, beta, min_confidence_gt, workers, out
// Unknown keys are a ConfigError. CLI flags override file values which
// override the defaults.
struct PipelineConfig {
    preprocess::TilingPolicy tiling;
    preprocess::FusionMethod fusion;
    annotate::AnnotateConfig annotate;
    refdetect::RefDetectConfig refdetect;
    score::ScoreConfig score;
    int workers = 1;
    std::filesystem::path out_dir = "out";

    void validate() const;  // throws ConfigError
};

// Defaults overlaid with the file's values.
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

}  // namespace fadsar::cli
