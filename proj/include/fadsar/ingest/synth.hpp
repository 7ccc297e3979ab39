#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "fadsar/core/types.hpp"

namespace fadsar::ingest {

// Synthetic scene recipe. Everything is deterministic for a fixed seed:
// uniform background speckle, bright multi-pixel targets at known centroids,
// and a shore-distance raster increasing linearly with the column index
// (distance_km = col * pixel_spacing_m / 1000).
struct SynthSpec {
    std::string scene_id = "synth-0";
    int width = 1600;
    int height = 1600;
    double pixel_spacing_m = core::kDefaultPixelSpacingM;

    int n_targets = 12;
    double target_intensity = 60.0;
    double noise_level = 4.0;
    double min_separation_m = 400.0;

    // Class mix, applied by index: the first n_fishing targets are fishing
    // vessels, the next n_non_fishing are non-fishing vessels, the rest are
    // non-vessel fixed structures. Counts derive from the fractions below.
    double vessel_fraction = 1.0;
    double fishing_fraction = 1.0;
    // The first round(n_targets * low_confidence_fraction) labels are LOW
    // confidence, the rest HIGH.
    double low_confidence_fraction = 0.0;

    // When > 0, the first n_shore_targets are constrained to columns whose
    // shore distance is at most shore_band_km.
    int n_shore_targets = 0;
    double shore_band_km = 2.0;

    bool with_shore_raster = true;
    bool with_auxiliaries = false;

    std::uint64_t rng_seed = 1;
};

// Builds the scene and its ground-truth labels. Throws SpecError when the
// requested placement cannot be satisfied (scene too small, separation or
// shore-band constraints impossible).
std::pair<core::Scene, std::vector<core::LabelRecord>> synth_scene(const SynthSpec& spec);

struct SynthDatasetResult {
    std::filesystem::path manifest_path;
    std::filesystem::path labels_path;
};

// Generates every scene, writes rasters + labels.csv + manifest.json under
// `out_dir`, and returns the file locations.
SynthDatasetResult write_synth_dataset(const std::vector<SynthSpec>& specs,
                                       const std::filesystem::path& out_dir);

}  // namespace fadsar::ingest
