#include "fadsar/score/runner.hpp"

#include <map>

#include "fadsar/errors.hpp"
#include "fadsar/ingest/records_csv.hpp"
#include "fadsar/util/parallel.hpp"

namespace fadsar::score {

namespace {

core::ScoreSummary summarize(std::span<const SceneMatch> scenes, const ScoreConfig& config) {
    core::ScoreSummary s;
    const auto [d, d_counts] = f1_detection(scenes, config.beta);
    s.f1_d = d;
    s.detection = d_counts;

    const ShoreOutcome shore = f1_shore(scenes, config);
    s.f1_s = shore.f1_s;
    s.shore = shore.counts;
    s.shore_unknown_fp = shore.unknown_fp;
    s.f1_s_computable = shore.computable;

    const auto [v, v_counts] = f1_vessel(scenes, config.beta);
    s.f1_v = v;
    s.vessel = v_counts;

    const auto [f, f_counts] = f1_fishing(scenes, config.beta);
    s.f1_f = f;
    s.fishing = f_counts;

    s.avg_f1 = avg_f1(s.f1_d, s.f1_s, s.f1_v, s.f1_f);
    return s;
}

}  // namespace

core::MetricsReport score_run(std::span<const core::DetectionRecord> predictions,
                              std::span<const core::LabelRecord> labels,
                              const ingest::DatasetManifest& manifest, const ScoreConfig& config,
                              int workers) {
    config.validate();

    struct SceneWork {
        std::string scene_id;
        std::vector<core::DetectionRecord> predictions;
        std::vector<core::LabelRecord> labels;
        ingest::SceneGeometry geometry;
        MatchResult result;
    };

    std::vector<SceneWork> work(manifest.scenes.size());
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < manifest.scenes.size(); ++i) {
        work[i].scene_id = manifest.scenes[i].scene_id;
        index[work[i].scene_id] = i;
    }

    for (const auto& pred : predictions) {
        const auto it = index.find(pred.scene_id);
        if (it == index.end())
            throw SchemaError("prediction references scene '" + pred.scene_id +
                              "' absent from the manifest");
        work[it->second].predictions.push_back(pred);
    }
    for (const auto& label : labels) {
        const auto it = index.find(label.scene_id);
        if (it == index.end())
            throw SchemaError("label references scene '" + label.scene_id +
                              "' absent from the manifest");
        if (static_cast<int>(label.confidence) < static_cast<int>(config.min_confidence_gt))
            continue;
        work[it->second].labels.push_back(label);
    }

    util::parallel_for(work.size(), workers, [&](std::size_t i) {
        work[i].geometry = ingest::load_scene_geometry(manifest.scenes[i]);
        work[i].result = match_detections(work[i].predictions, work[i].labels,
                                          work[i].geometry.pixel_spacing_m, config);
    });

    std::vector<SceneMatch> scenes(work.size());
    for (std::size_t i = 0; i < work.size(); ++i) {
        scenes[i].result = &work[i].result;
        scenes[i].predictions = work[i].predictions;
        scenes[i].labels = work[i].labels;
        scenes[i].shore =
            work[i].geometry.shore_distance ? &*work[i].geometry.shore_distance : nullptr;
        scenes[i].scene_width = work[i].geometry.width;
        scenes[i].scene_height = work[i].geometry.height;
    }

    core::MetricsReport report;
    static_cast<core::ScoreSummary&>(report) = summarize(scenes, config);
    for (std::size_t i = 0; i < work.size(); ++i)
        report.per_scene[work[i].scene_id] = summarize({&scenes[i], 1}, config);
    return report;
}

core::MetricsReport score_files(const std::filesystem::path& predictions_path,
                                const std::filesystem::path& labels_path,
                                const std::filesystem::path& manifest_path,
                                const ScoreConfig& config, int workers) {
    const auto predictions = ingest::load_predictions(predictions_path);
    const auto labels = ingest::load_labels(labels_path);
    const auto manifest = ingest::load_manifest(manifest_path);
    return score_run(predictions, labels, manifest, config, workers);
}

}  // namespace fadsar::score
