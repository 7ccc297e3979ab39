#include "fadsar/ingest/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

#include "fadsar/errors.hpp"
#include "fadsar/ingest/raster_io.hpp"

namespace fadsar::ingest {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string require_string(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_string())
        throw SchemaError(where + ": missing string field '" + key + "'");
    return j[key].get<std::string>();
}

fs::path resolve(const fs::path& base, const std::string& p) {
    fs::path path(p);
    return path.is_absolute() ? path : base / path;
}

void require_readable(const fs::path& path, const std::string& what) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw IoError(what + " not readable: " + path.string());
}

}  // namespace

std::string canonical_auxiliary_name(const std::string& name) {
    if (name == "wind_mass") return "wind_quality";
    if (std::find(kAuxiliaryNames.begin(), kAuxiliaryNames.end(), name) != kAuxiliaryNames.end())
        return name;
    throw SchemaError("unknown auxiliary channel '" + name + "'");
}

const SceneEntry* DatasetManifest::find(const std::string& scene_id) const {
    for (const auto& entry : scenes)
        if (entry.scene_id == scene_id) return &entry;
    return nullptr;
}

DatasetManifest load_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest " + path.string());

    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError("manifest " + path.string() + ": " + e.what());
    }
    if (!doc.is_object()) throw SchemaError("manifest " + path.string() + ": not a JSON object");

    const fs::path base = path.parent_path();
    DatasetManifest manifest;
    if (doc.contains("split")) manifest.split = require_string(doc, "split", "manifest");
    if (manifest.split != "train" && manifest.split != "valid")
        throw SchemaError("manifest: split must be 'train' or 'valid', got '" + manifest.split +
                          "'");
    if (doc.contains("labels") && !doc["labels"].is_null())
        manifest.labels = resolve(base, require_string(doc, "labels", "manifest"));

    if (!doc.contains("scenes") || !doc["scenes"].is_array())
        throw SchemaError("manifest: missing 'scenes' array");

    std::set<std::string> seen_ids;
    for (const auto& s : doc["scenes"]) {
        if (!s.is_object()) throw SchemaError("manifest: scene entry is not an object");
        SceneEntry entry;
        entry.scene_id = require_string(s, "scene_id", "manifest scene");
        if (!seen_ids.insert(entry.scene_id).second)
            throw SchemaError("manifest: duplicate scene_id '" + entry.scene_id + "'");
        entry.vv = resolve(base, require_string(s, "vv", entry.scene_id));
        entry.vh = resolve(base, require_string(s, "vh", entry.scene_id));
        if (s.contains("auxiliaries")) {
            if (!s["auxiliaries"].is_object())
                throw SchemaError(entry.scene_id + ": 'auxiliaries' is not an object");
            for (const auto& [name, value] : s["auxiliaries"].items()) {
                if (!value.is_string())
                    throw SchemaError(entry.scene_id + ": auxiliary '" + name +
                                      "' path is not a string");
                entry.auxiliaries[canonical_auxiliary_name(name)] =
                    resolve(base, value.get<std::string>());
            }
        }
        if (s.contains("shore_distance") && !s["shore_distance"].is_null())
            entry.shore_distance = resolve(base, require_string(s, "shore_distance", entry.scene_id));
        manifest.scenes.push_back(std::move(entry));
    }

    if (!manifest.labels.empty()) require_readable(manifest.labels, "labels file");
    for (const auto& entry : manifest.scenes) {
        require_readable(entry.vv, entry.scene_id + " vv");
        require_readable(entry.vh, entry.scene_id + " vh");
        for (const auto& [name, p] : entry.auxiliaries)
            require_readable(p, entry.scene_id + " " + name);
        if (entry.shore_distance)
            require_readable(*entry.shore_distance, entry.scene_id + " shore_distance");
    }
    return manifest;
}

void save_manifest(const DatasetManifest& manifest, const fs::path& path) {
    json doc;
    doc["split"] = manifest.split;
    if (!manifest.labels.empty()) doc["labels"] = manifest.labels.generic_string();
    doc["scenes"] = json::array();
    for (const auto& entry : manifest.scenes) {
        json s;
        s["scene_id"] = entry.scene_id;
        s["vv"] = entry.vv.generic_string();
        s["vh"] = entry.vh.generic_string();
        if (!entry.auxiliaries.empty()) {
            json aux = json::object();
            for (const auto& [name, p] : entry.auxiliaries) aux[name] = p.generic_string();
            s["auxiliaries"] = std::move(aux);
        }
        if (entry.shore_distance) s["shore_distance"] = entry.shore_distance->generic_string();
        doc["scenes"].push_back(std::move(s));
    }

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write manifest " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("cannot write manifest " + path.string());
}

core::Scene load_scene(const SceneEntry& entry) {
    core::Scene scene;
    scene.scene_id = entry.scene_id;
    scene.vv = read_raster(entry.vv);
    scene.vh = read_raster(entry.vh);
    if (scene.vv.width != scene.vh.width || scene.vv.height != scene.vh.height)
        throw ChannelDimensionMismatchError(
            entry.scene_id + ": vv is " + std::to_string(scene.vv.width) + "x" +
            std::to_string(scene.vv.height) + " but vh is " + std::to_string(scene.vh.width) +
            "x" + std::to_string(scene.vh.height));
    for (const auto& [name, path] : entry.auxiliaries)
        scene.auxiliaries[name] = read_raster(path);
    if (entry.shore_distance) scene.shore_distance = read_raster(*entry.shore_distance);
    return scene;
}

SceneEntry write_scene(const core::Scene& scene, const fs::path& dir) {
    fs::create_directories(dir);
    SceneEntry entry;
    entry.scene_id = scene.scene_id;

    const auto emit = [&](const core::Raster& raster, const std::string& stem) {
        const fs::path rel = scene.scene_id + "_" + stem + ".bin";
        write_raster(raster, dir / rel);
        return rel;
    };
    entry.vv = emit(scene.vv, "vv");
    entry.vh = emit(scene.vh, "vh");
    for (const auto& [name, raster] : scene.auxiliaries) entry.auxiliaries[name] = emit(raster, name);
    if (scene.shore_distance) entry.shore_distance = emit(*scene.shore_distance, "shore_distance");
    return entry;
}

SceneGeometry load_scene_geometry(const SceneEntry& entry) {
    SceneGeometry geo;
    geo.scene_id = entry.scene_id;
    const RasterHeader header = read_raster_header(entry.vv);
    geo.width = header.width;
    geo.height = header.height;
    geo.pixel_spacing_m = header.pixel_spacing_m;
    if (entry.shore_distance) geo.shore_distance = read_raster(*entry.shore_distance);
    return geo;
}

}  // namespace fadsar::ingest
