#pragma once

#include <filesystem>
#include <span>

#include "fadsar/ingest/manifest.hpp"
#include "fadsar/score/metrics.hpp"

namespace fadsar::score {

// Groups records by scene, matches per scene (in parallel), and micro-averages
// counts across scenes into one report with per-scene breakdowns. Labels below
// config.min_confidence_gt are not scoreable ground truth. Records naming a
// scene_id absent from the manifest are a SchemaError.
core::MetricsReport score_run(std::span<const core::DetectionRecord> predictions,
                              std::span<const core::LabelRecord> labels,
                              const ingest::DatasetManifest& manifest, const ScoreConfig& config,
                              int workers = 1);

core::MetricsReport score_files(const std::filesystem::path& predictions_path,
                                const std::filesystem::path& labels_path,
                                const std::filesystem::path& manifest_path,
                                const ScoreConfig& config, int workers = 1);

}  // namespace fadsar::score
