#include "fadsar/cli/pipeline_config.hpp"

#include <fstream>

#include <json.hpp>

#include "fadsar/errors.hpp"

namespace fadsar::cli {

namespace {

using nlohmann::json;

template <typename T>
T typed(const json& value, const char* key) {
    try {
        return value.get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config key '") + key + "' has the wrong type");
    }
}

core::Confidence confidence_value(const json& value, const char* key) {
    const auto parsed = core::confidence_from_string(typed<std::string>(value, key));
    if (!parsed) throw ConfigError(std::string("config key '") + key + "' is not a confidence tier");
    return *parsed;
}

}  // namespace

void PipelineConfig::validate() const {
    tiling.validate();
    annotate.validate();
    refdetect.validate();
    score.validate();
    if (workers < 1) throw ConfigError("workers must be >= 1");
    if (out_dir.empty()) throw ConfigError("out directory must not be empty");
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError("config " + path.string() + ": " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config " + path.string() + ": not a JSON object");

    PipelineConfig config;
    for (const auto& [key, value] : doc.items()) {
        if (key == "patch_size") {
            config.tiling.patch_size = typed<int>(value, "patch_size");
        } else if (key == "stride") {
            config.tiling.stride = typed<int>(value, "stride");
        } else if (key == "edge_policy") {
            const auto parsed = preprocess::edge_policy_from_string(
                typed<std::string>(value, "edge_policy"));
            if (!parsed) throw ConfigError("config key 'edge_policy' is not an edge policy");
            config.tiling.edge = *parsed;
        } else if (key == "fusion") {
            config.fusion = preprocess::FusionMethod::parse(typed<std::string>(value, "fusion"));
        } else if (key == "bbox_size") {
            config.annotate.bbox_size = typed<int>(value, "bbox_size");
        } else if (key == "min_confidence") {
            config.annotate.min_confidence = confidence_value(value, "min_confidence");
        } else if (key == "drop_ambiguous") {
            config.annotate.drop_ambiguous = typed<bool>(value, "drop_ambiguous");
        } else if (key == "k_sigma") {
            config.refdetect.k_sigma = typed<double>(value, "k_sigma");
        } else if (key == "min_area_px") {
            config.refdetect.min_area_px = typed<int>(value, "min_area_px");
        } else if (key == "merge_radius_m") {
            config.refdetect.merge_radius_m = typed<double>(value, "merge_radius_m");
        } else if (key == "detector_class") {
            const auto parsed =
                core::class_label_from_string(typed<std::string>(value, "detector_class"));
            if (!parsed) throw ConfigError("config key 'detector_class' is not a class label");
            config.refdetect.default_class = *parsed;
        } else if (key == "match_radius_m") {
            config.score.match_radius_m = typed<double>(value, "match_radius_m");
        } else if (key == "shore_km") {
            config.score.shore_threshold_km = typed<double>(value, "shore_km");
        } else if (key == "beta") {
            config.score.beta = typed<double>(value, "beta");
        } else if (key == "min_confidence_gt") {
            config.score.min_confidence_gt = confidence_value(value, "min_confidence_gt");
        } else if (key == "workers") {
            config.workers = typed<int>(value, "workers");
        } else if (key == "out") {
            config.out_dir = typed<std::string>(value, "out");
        } else {
            throw ConfigError("config " + path.string() + ": unknown key '" + key + "'");
        }
    }
    config.validate();
    return config;
}

}  // namespace fadsar::cli
