#include "fadsar/ingest/synth.hpp"

#include <algorithm>
#include <cmath>

#include "fadsar/errors.hpp"
#include "fadsar/ingest/manifest.hpp"
#include "fadsar/ingest/records_csv.hpp"
#include "fadsar/util/rng.hpp"

namespace fadsar::ingest {

namespace {

constexpr int kTargetHalfExtent = 2;
constexpr int kPlacementMargin = kTargetHalfExtent + 2;
constexpr int kMaxPlacementAttempts = 2000;

core::Raster make_raster(int width, int height, double spacing) {
    core::Raster r;
    r.width = width;
    r.height = height;
    r.pixel_spacing_m = spacing;
    r.values.assign(static_cast<std::size_t>(width) * height, 0.0f);
    return r;
}

// Radially tapered stamp so each target spans several pixels with a clear peak.
void stamp_target(core::Raster& raster, int row, int col, double intensity) {
    for (int dr = -kTargetHalfExtent; dr <= kTargetHalfExtent; ++dr) {
        for (int dc = -kTargetHalfExtent; dc <= kTargetHalfExtent; ++dc) {
            const int r = row + dr;
            const int c = col + dc;
            if (r < 0 || r >= raster.height || c < 0 || c >= raster.width) continue;
            const double d2 = dr * dr + dc * dc;
            const double gain = d2 == 0 ? 1.0 : d2 <= 2 ? 0.7 : d2 <= 4 ? 0.4 : 0.2;
            raster.at(r, c) += static_cast<float>(intensity * gain);
        }
    }
}

int count_from_fraction(int total, double fraction) {
    const int n = static_cast<int>(std::lround(total * fraction));
    return std::clamp(n, 0, total);
}

}  // namespace

std::pair<core::Scene, std::vector<core::LabelRecord>> synth_scene(const SynthSpec& spec) {
    if (spec.width <= 0 || spec.height <= 0) throw SpecError("scene dimensions must be positive");
    if (spec.n_targets < 0) throw SpecError("n_targets must be >= 0");
    if (spec.pixel_spacing_m <= 0) throw SpecError("pixel_spacing_m must be positive");
    if (spec.n_shore_targets < 0 || spec.n_shore_targets > spec.n_targets)
        throw SpecError("n_shore_targets must lie in [0, n_targets]");
    if (spec.n_shore_targets > 0 && !spec.with_shore_raster)
        throw SpecError("n_shore_targets requires with_shore_raster");

    util::Rng rng(spec.rng_seed);

    core::Scene scene;
    scene.scene_id = spec.scene_id;
    scene.vv = make_raster(spec.width, spec.height, spec.pixel_spacing_m);
    scene.vh = make_raster(spec.width, spec.height, spec.pixel_spacing_m);
    for (std::size_t i = 0; i < scene.vv.values.size(); ++i) {
        scene.vv.values[i] = static_cast<float>(rng.uniform(0.0, spec.noise_level));
        scene.vh.values[i] = static_cast<float>(rng.uniform(0.0, spec.noise_level));
    }

    const int row_lo = kPlacementMargin;
    const int row_hi = spec.height - 1 - kPlacementMargin;
    const int col_lo = kPlacementMargin;
    const int col_hi = spec.width - 1 - kPlacementMargin;
    if (spec.n_targets > 0 && (row_hi < row_lo || col_hi < col_lo))
        throw SpecError("scene too small for target footprints");

    const int shore_col_hi =
        std::min(col_hi, static_cast<int>(std::floor(spec.shore_band_km * 1000.0 /
                                                     spec.pixel_spacing_m)));
    if (spec.n_shore_targets > 0 && shore_col_hi < col_lo)
        throw SpecError("shore band narrower than the placement margin");

    const double min_sep_px = spec.min_separation_m / spec.pixel_spacing_m;
    std::vector<std::pair<int, int>> centers;
    centers.reserve(spec.n_targets);
    for (int i = 0; i < spec.n_targets; ++i) {
        const int c_hi = i < spec.n_shore_targets ? shore_col_hi : col_hi;
        bool placed = false;
        for (int attempt = 0; attempt < kMaxPlacementAttempts && !placed; ++attempt) {
            const int row = rng.uniform_int(row_lo, row_hi);
            const int col = rng.uniform_int(col_lo, c_hi);
            const bool clear = std::all_of(centers.begin(), centers.end(), [&](const auto& p) {
                const double dr = p.first - row;
                const double dc = p.second - col;
                return std::hypot(dr, dc) >= min_sep_px;
            });
            if (clear) {
                centers.emplace_back(row, col);
                placed = true;
            }
        }
        if (!placed)
            throw SpecError("could not place target " + std::to_string(i) + " after " +
                            std::to_string(kMaxPlacementAttempts) + " attempts");
    }

    const int n_vessels = count_from_fraction(spec.n_targets, spec.vessel_fraction);
    const int n_fishing = count_from_fraction(n_vessels, spec.fishing_fraction);
    const int n_low = count_from_fraction(spec.n_targets, spec.low_confidence_fraction);

    std::vector<core::LabelRecord> labels;
    labels.reserve(spec.n_targets);
    for (int i = 0; i < spec.n_targets; ++i) {
        const auto [row, col] = centers[i];
        stamp_target(scene.vv, row, col, spec.target_intensity);
        stamp_target(scene.vh, row, col, spec.target_intensity * 0.8);

        core::LabelRecord rec;
        rec.detect_id = spec.scene_id + "-" + std::to_string(i);
        rec.scene_id = spec.scene_id;
        rec.row = row;
        rec.col = col;
        rec.is_vessel = i < n_vessels;
        if (*rec.is_vessel) {
            rec.is_fishing = i < n_fishing;
            rec.vessel_length_m = 20.0 + 2.0 * i;
        }
        rec.confidence = i < n_low ? core::Confidence::Low : core::Confidence::High;
        if (spec.with_shore_raster)
            rec.distance_from_shore_km = col * spec.pixel_spacing_m / 1000.0;
        rec.source = "synthetic";
        labels.push_back(std::move(rec));
    }

    if (spec.with_shore_raster) {
        core::Raster shore = make_raster(spec.width, spec.height, spec.pixel_spacing_m);
        for (int r = 0; r < spec.height; ++r)
            for (int c = 0; c < spec.width; ++c)
                shore.at(r, c) = static_cast<float>(c * spec.pixel_spacing_m / 1000.0);
        scene.shore_distance = std::move(shore);
    }

    if (spec.with_auxiliaries) {
        const int aw = std::max(1, spec.width / 4);
        const int ah = std::max(1, spec.height / 4);
        for (const char* name : kAuxiliaryNames) {
            core::Raster aux = make_raster(aw, ah, spec.pixel_spacing_m * 4);
            for (auto& v : aux.values) v = static_cast<float>(rng.uniform(0.0, 1.0) * 100.0);
            scene.auxiliaries[name] = std::move(aux);
        }
    }

    return {std::move(scene), std::move(labels)};
}

SynthDatasetResult write_synth_dataset(const std::vector<SynthSpec>& specs,
                                       const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);

    DatasetManifest manifest;
    std::vector<core::LabelRecord> all_labels;
    for (const auto& spec : specs) {
        auto [scene, labels] = synth_scene(spec);
        manifest.scenes.push_back(write_scene(scene, out_dir));
        all_labels.insert(all_labels.end(), labels.begin(), labels.end());
    }

    SynthDatasetResult result;
    result.labels_path = out_dir / "labels.csv";
    save_labels(all_labels, result.labels_path);
    manifest.labels = "labels.csv";

    result.manifest_path = out_dir / "manifest.json";
    save_manifest(manifest, result.manifest_path);
    return result;
}

}  // namespace fadsar::ingest
