#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fadsar/annotate/coco.hpp"
#include "fadsar/cli/pipeline_config.hpp"
#include "fadsar/errors.hpp"
#include "fadsar/ingest/manifest.hpp"
#include "fadsar/ingest/records_csv.hpp"
#include "fadsar/ingest/report_io.hpp"
#include "fadsar/ingest/synth.hpp"
#include "fadsar/preprocess/patch_io.hpp"
#include "fadsar/preprocess/pipeline.hpp"
#include "fadsar/refdetect/detector.hpp"
#include "fadsar/score/runner.hpp"
#include "fadsar/util/log.hpp"

namespace {

using fadsar::cli::PipelineConfig;

// Shared flags live on the parent app; subcommands fall through to it, so
// `fadsar tile m.json --workers 8` works. Option pointers tell us which flags
// the user actually passed (CLI > config file > defaults).
struct SharedFlags {
    std::string config_path;
    int patch_size = 0;
    int stride = 0;
    std::string edge_policy;
    std::string fusion;
    int bbox_size = 0;
    std::string min_confidence;
    double k_sigma = 0.0;
    int min_area_px = 0;
    double merge_radius_m = 0.0;
    double match_radius_m = 0.0;
    double shore_km = 0.0;
    int workers = 0;
    std::string out;

    CLI::Option* o_config = nullptr;
    CLI::Option* o_patch_size = nullptr;
    CLI::Option* o_stride = nullptr;
    CLI::Option* o_edge_policy = nullptr;
    CLI::Option* o_fusion = nullptr;
    CLI::Option* o_bbox_size = nullptr;
    CLI::Option* o_min_confidence = nullptr;
    CLI::Option* o_k_sigma = nullptr;
    CLI::Option* o_min_area_px = nullptr;
    CLI::Option* o_merge_radius_m = nullptr;
    CLI::Option* o_match_radius_m = nullptr;
    CLI::Option* o_shore_km = nullptr;
    CLI::Option* o_workers = nullptr;
    CLI::Option* o_out = nullptr;

    void add_to(CLI::App& app) {
        o_config = app.add_option("--config", config_path, "JSON config file");
        o_patch_size = app.add_option("--patch-size", patch_size, "patch size in pixels");
        o_stride = app.add_option("--stride", stride, "tiling stride in pixels");
        o_edge_policy = app.add_option("--edge-policy", edge_policy,
                                       "pad_reflect | pad_zero | drop_partial");
        o_fusion = app.add_option(
            "--fusion", fusion,
            "mean_vv_vh | diff_vv_vh | mean_auxiliaries | mean_all | aux:<name>");
        o_bbox_size = app.add_option("--bbox-size", bbox_size, "synthesized box size in pixels");
        o_min_confidence =
            app.add_option("--min-confidence", min_confidence, "low | medium | high");
        o_k_sigma = app.add_option("--k-sigma", k_sigma, "detector threshold sigmas");
        o_min_area_px = app.add_option("--min-area-px", min_area_px, "minimum blob area");
        o_merge_radius_m =
            app.add_option("--merge-radius-m", merge_radius_m, "detection merge radius");
        o_match_radius_m =
            app.add_option("--match-radius-m", match_radius_m, "scoring match radius");
        o_shore_km = app.add_option("--shore-km", shore_km, "close-to-shore threshold in km");
        o_workers = app.add_option("--workers", workers, "worker thread count");
        o_out = app.add_option("--out", out, "output directory");
    }

    PipelineConfig resolve() const {
        PipelineConfig config;
        if (o_config->count() > 0)
            config = fadsar::cli::load_pipeline_config(config_path);
        if (o_patch_size->count() > 0) config.tiling.patch_size = patch_size;
        if (o_stride->count() > 0) config.tiling.stride = stride;
        if (o_edge_policy->count() > 0) {
            const auto parsed = fadsar::preprocess::edge_policy_from_string(edge_policy);
            if (!parsed) throw fadsar::ConfigError("unknown edge policy '" + edge_policy + "'");
            config.tiling.edge = *parsed;
        }
        if (o_fusion->count() > 0)
            config.fusion = fadsar::preprocess::FusionMethod::parse(fusion);
        if (o_bbox_size->count() > 0) config.annotate.bbox_size = bbox_size;
        if (o_min_confidence->count() > 0) {
            const auto parsed = fadsar::core::confidence_from_string(min_confidence);
            if (!parsed)
                throw fadsar::ConfigError("unknown confidence tier '" + min_confidence + "'");
            config.annotate.min_confidence = *parsed;
            config.score.min_confidence_gt = *parsed;
        }
        if (o_k_sigma->count() > 0) config.refdetect.k_sigma = k_sigma;
        if (o_min_area_px->count() > 0) config.refdetect.min_area_px = min_area_px;
        if (o_merge_radius_m->count() > 0) config.refdetect.merge_radius_m = merge_radius_m;
        if (o_match_radius_m->count() > 0) config.score.match_radius_m = match_radius_m;
        if (o_shore_km->count() > 0) config.score.shore_threshold_km = shore_km;
        if (o_workers->count() > 0) config.workers = workers;
        if (o_out->count() > 0) config.out_dir = out;
        config.validate();
        return config;
    }
};

struct SynthFlags {
    int scenes = 1;
    int width = 1600;
    int height = 1600;
    int targets = 12;
    std::uint64_t seed = 1;
    double noise = 4.0;
    double intensity = 60.0;
    double min_separation_m = 400.0;
    double vessel_fraction = 1.0;
    double fishing_fraction = 1.0;
    double low_confidence_fraction = 0.0;
    int shore_targets = 0;
    double shore_band_km = 2.0;
    bool with_auxiliaries = false;
    std::string scene_prefix = "synth";

    void add_to(CLI::App& app) {
        app.add_option("--scenes", scenes, "number of scenes");
        app.add_option("--width", width, "scene width in pixels");
        app.add_option("--height", height, "scene height in pixels");
        app.add_option("--targets", targets, "targets per scene");
        app.add_option("--seed", seed, "RNG seed of the first scene");
        app.add_option("--noise", noise, "background noise ceiling");
        app.add_option("--intensity", intensity, "target peak intensity");
        app.add_option("--min-separation-m", min_separation_m, "pairwise target separation");
        app.add_option("--vessel-fraction", vessel_fraction, "fraction labeled vessel");
        app.add_option("--fishing-fraction", fishing_fraction,
                       "fraction of vessels labeled fishing");
        app.add_option("--low-confidence-fraction", low_confidence_fraction,
                       "fraction labeled LOW confidence");
        app.add_option("--shore-targets", shore_targets,
                       "targets constrained into the shore band");
        app.add_option("--shore-band-km", shore_band_km, "shore band width in km");
        app.add_flag("--with-auxiliaries", with_auxiliaries, "emit the five auxiliary rasters");
        app.add_option("--scene-prefix", scene_prefix, "scene_id prefix");
    }
};

int run_synth(const SynthFlags& flags, const PipelineConfig& config) {
    std::vector<fadsar::ingest::SynthSpec> specs;
    for (int i = 0; i < flags.scenes; ++i) {
        fadsar::ingest::SynthSpec spec;
        spec.scene_id = flags.scene_prefix + "-" + std::to_string(i);
        spec.width = flags.width;
        spec.height = flags.height;
        spec.n_targets = flags.targets;
        spec.target_intensity = flags.intensity;
        spec.noise_level = flags.noise;
        spec.min_separation_m = flags.min_separation_m;
        spec.vessel_fraction = flags.vessel_fraction;
        spec.fishing_fraction = flags.fishing_fraction;
        spec.low_confidence_fraction = flags.low_confidence_fraction;
        spec.n_shore_targets = flags.shore_targets;
        spec.shore_band_km = flags.shore_band_km;
        spec.with_auxiliaries = flags.with_auxiliaries;
        spec.rng_seed = flags.seed + static_cast<std::uint64_t>(i);
        specs.push_back(std::move(spec));
    }
    const auto result = fadsar::ingest::write_synth_dataset(specs, config.out_dir);
    std::printf("wrote %d scene(s), %s, %s\n", flags.scenes,
                result.manifest_path.string().c_str(), result.labels_path.string().c_str());
    return 0;
}

struct PreprocessedRun {
    std::vector<fadsar::core::Patch> patches;
    std::vector<fadsar::preprocess::DiscardEntry> discards;
};

PreprocessedRun preprocess_all(const fadsar::ingest::DatasetManifest& manifest,
                               const PipelineConfig& config) {
    PreprocessedRun run;
    for (const auto& entry : manifest.scenes) {
        fadsar::util::log_info("preprocessing scene ", entry.scene_id);
        const auto scene = fadsar::ingest::load_scene(entry);
        auto result = fadsar::preprocess::preprocess_scene(scene, config.tiling, config.fusion,
                                                           config.workers);
        std::move(result.patches.begin(), result.patches.end(),
                  std::back_inserter(run.patches));
        std::move(result.discards.begin(), result.discards.end(),
                  std::back_inserter(run.discards));
    }
    return run;
}

int run_tile(const std::string& manifest_path, const PipelineConfig& config) {
    const auto manifest = fadsar::ingest::load_manifest(manifest_path);
    const PreprocessedRun run = preprocess_all(manifest, config);
    const auto dir = config.out_dir / "patches";
    fadsar::preprocess::export_patches(run.patches, run.discards, dir);
    std::printf("wrote %zu patch(es), discarded %zu, index %s\n", run.patches.size(),
                run.discards.size(), (dir / "patches.jsonl").string().c_str());
    return 0;
}

int run_dataset(const std::string& manifest_path, const std::string& labels_override,
                const PipelineConfig& config) {
    const auto manifest = fadsar::ingest::load_manifest(manifest_path);
    std::filesystem::path labels_path =
        labels_override.empty() ? manifest.labels : std::filesystem::path(labels_override);
    if (labels_path.empty())
        throw fadsar::ConfigError("manifest names no labels file; pass --labels");
    const auto labels = fadsar::ingest::load_labels(labels_path);

    const PreprocessedRun run = preprocess_all(manifest, config);
    const auto filtered = fadsar::annotate::filter_labels(labels, config.annotate);
    const auto annotated = fadsar::annotate::labels_to_annotations(
        filtered.kept, run.patches, run.discards, config.annotate);

    std::filesystem::create_directories(config.out_dir);
    const auto annotations_path = config.out_dir / "annotations.json";
    fadsar::annotate::export_annotations(annotated.annotations, run.patches, annotations_path);
    fadsar::annotate::write_drop_log(filtered.dropped, annotated.skipped,
                                     config.out_dir / "drops.jsonl");
    std::printf("wrote %zu annotation(s) to %s (dropped %zu, skipped %zu)\n",
                annotated.annotations.size(), annotations_path.string().c_str(),
                filtered.dropped.size(), annotated.skipped.size());
    return 0;
}

int run_detect(const std::string& manifest_path, const PipelineConfig& config) {
    const auto manifest = fadsar::ingest::load_manifest(manifest_path);
    std::vector<fadsar::core::DetectionRecord> records;
    for (const auto& entry : manifest.scenes) {
        fadsar::util::log_info("detecting in scene ", entry.scene_id);
        const auto scene = fadsar::ingest::load_scene(entry);
        auto scene_records = fadsar::refdetect::run_reference_detector(
            scene, config.tiling, config.fusion, config.refdetect, config.workers);
        std::move(scene_records.begin(), scene_records.end(), std::back_inserter(records));
    }
    std::filesystem::create_directories(config.out_dir);
    const auto path = config.out_dir / "predictions.csv";
    fadsar::ingest::save_predictions(records, path);
    std::printf("wrote %zu prediction(s) to %s\n", records.size(), path.string().c_str());
    return 0;
}

void print_metric_table(const fadsar::core::MetricsReport& report) {
    std::printf("%-24s%10s%10s%10s%10s%10s\n", "", "F1_D", "F1_S", "F1_V", "F1_F", "Avg-F1");
    const auto row = [](const std::string& name, const fadsar::core::ScoreSummary& s) {
        std::printf("%-24s%10.5f%10.5f%10.5f%10.5f%10.5f\n", name.c_str(), s.f1_d, s.f1_s,
                    s.f1_v, s.f1_f, s.avg_f1);
    };
    row("overall", report);
    for (const auto& [scene_id, summary] : report.per_scene) row(scene_id, summary);
    if (!report.f1_s_computable)
        std::printf("note: F1_S incomplete, %lld unmatched prediction(s) lack a shore distance\n",
                    report.shore_unknown_fp);
}

int run_score(const std::string& predictions_path, const std::string& labels_path,
              const std::string& manifest_path, const PipelineConfig& config) {
    const auto report = fadsar::score::score_files(predictions_path, labels_path, manifest_path,
                                                   config.score, config.workers);
    std::filesystem::create_directories(config.out_dir);
    const auto path = config.out_dir / "report.json";
    fadsar::ingest::save_report(report, path);
    print_metric_table(report);
    std::printf("wrote %s\n", path.string().c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SAR fishing-activity dataset and evaluation toolkit"};
    app.require_subcommand(1);

    SharedFlags shared;
    shared.add_to(app);

    auto* synth = app.add_subcommand("synth", "generate synthetic scenes, labels, manifest");
    synth->fallthrough();
    SynthFlags synth_flags;
    synth_flags.add_to(*synth);

    auto* tile = app.add_subcommand("tile", "cut scenes into normalized fused patches");
    tile->fallthrough();
    std::string tile_manifest;
    tile->add_option("manifest", tile_manifest, "dataset manifest JSON")->required();

    auto* dataset = app.add_subcommand("dataset", "build COCO annotations from labels");
    dataset->fallthrough();
    std::string dataset_manifest;
    std::string dataset_labels;
    dataset->add_option("manifest", dataset_manifest, "dataset manifest JSON")->required();
    dataset->add_option("--labels", dataset_labels, "labels CSV (defaults to the manifest's)");

    auto* detect = app.add_subcommand("detect", "run the reference detector");
    detect->fallthrough();
    std::string detect_manifest;
    detect->add_option("manifest", detect_manifest, "dataset manifest JSON")->required();

    auto* score = app.add_subcommand("score", "score predictions against labels");
    score->fallthrough();
    std::string score_predictions;
    std::string score_labels;
    std::string score_manifest;
    score->add_option("predictions", score_predictions, "predictions CSV")->required();
    score->add_option("labels", score_labels, "labels CSV")->required();
    score->add_option("manifest", score_manifest, "dataset manifest JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(fadsar::ErrorKind::Config);
    }

    try {
        const PipelineConfig config = shared.resolve();
        if (synth->parsed()) return run_synth(synth_flags, config);
        if (tile->parsed()) return run_tile(tile_manifest, config);
        if (dataset->parsed()) return run_dataset(dataset_manifest, dataset_labels, config);
        if (detect->parsed()) return run_detect(detect_manifest, config);
        if (score->parsed()) return run_score(score_predictions, score_labels, score_manifest,
                                              config);
        return static_cast<int>(fadsar::ErrorKind::Config);
    } catch (const fadsar::Error& e) {
        fadsar::util::log_error(e.what());
        return e.exit_code();
    } catch (const std::exception& e) {
        fadsar::util::log_error("unexpected error: ", e.what());
        return 1;
    }
}
