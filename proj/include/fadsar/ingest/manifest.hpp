#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fadsar/core/types.hpp"

namespace fadsar::ingest {

inline constexpr std::array<const char*, 5> kAuxiliaryNames = {
    "bathymetry", "wind_speed", "wind_direction", "wind_quality", "land_ice_mask"};

// Maps accepted auxiliary names to the canonical set ("wind_mass" is an alias
// for "wind_quality"). Throws SchemaError for unknown names.
std::string canonical_auxiliary_name(const std::string& name);

struct SceneEntry {
    std::string scene_id;
    std::filesystem::path vv;
    std::filesystem::path vh;
    std::map<std::string, std::filesystem::path> auxiliaries;
    std::optional<std::filesystem::path> shore_distance;
};

// Manifest JSON layout:
//   {
//     "split": "train",
//     "labels": "labels.csv",
//     "scenes": [
//       {"scene_id": "...", "vv": "...", "vh": "...",
//        "auxiliaries": {"bathymetry": "...", ...},
//        "shore_distance": "..."}
//     ]
//   }
// Relative paths are resolved against the manifest's directory on load.
struct DatasetManifest {
    std::string split = "train";
    std::filesystem::path labels;
    std::vector<SceneEntry> scenes;

    const SceneEntry* find(const std::string& scene_id) const;
};

DatasetManifest load_manifest(const std::filesystem::path& path);
void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

// Loads every channel named by the entry. Missing auxiliary keys are simply
// absent from the scene; a VV/VH dimension mismatch is fatal.
core::Scene load_scene(const SceneEntry& entry);

// Writes every channel of the scene under `dir` (raw+JSON format) and returns
// the manifest entry describing the files, with paths relative to `dir`.
SceneEntry write_scene(const core::Scene& scene, const std::filesystem::path& dir);

// Scene shape and shore raster only; enough for scoring without touching the
// (much larger) VV/VH grids.
struct SceneGeometry {
    std::string scene_id;
    int width = 0;
    int height = 0;
    double pixel_spacing_m = core::kDefaultPixelSpacingM;
    std::optional<core::Raster> shore_distance;
};

SceneGeometry load_scene_geometry(const SceneEntry& entry);

}  // namespace fadsar::ingest
