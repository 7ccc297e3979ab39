#include "fadsar/score/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace fadsar::score {

double fbeta(long long tp, long long fp, long long fn, double beta) {
    if (tp == 0) return 0.0;
    const double b2 = beta * beta;
    const double num = (1.0 + b2) * static_cast<double>(tp);
    return num / (num + b2 * static_cast<double>(fn) + static_cast<double>(fp));
}

double avg_f1(double f1_d, double f1_s, double f1_v, double f1_f) {
    return (f1_d + f1_s) / 2.0 * ((f1_v + f1_f) / 2.0);
}

std::pair<double, core::MetricCounts> f1_detection(std::span<const SceneMatch> scenes,
                                                   double beta) {
    core::MetricCounts counts;
    for (const auto& scene : scenes) {
        counts.tp += static_cast<long long>(scene.result->pairs.size());
        counts.fp += static_cast<long long>(scene.result->unmatched_predictions.size());
        counts.fn += static_cast<long long>(scene.result->unmatched_labels.size());
    }
    return {fbeta(counts.tp, counts.fp, counts.fn, beta), counts};
}

std::optional<double> sample_shore_km(const core::Raster& shore, int row, int col,
                                      int scene_height, int scene_width) {
    if (row < 0 || row >= scene_height || col < 0 || col >= scene_width) return std::nullopt;
    const int sr = static_cast<int>(
        std::clamp<long long>((2LL * row + 1) * shore.height / (2LL * scene_height), 0,
                              shore.height - 1));
    const int sc = static_cast<int>(
        std::clamp<long long>((2LL * col + 1) * shore.width / (2LL * scene_width), 0,
                              shore.width - 1));
    const float v = shore.at(sr, sc);
    if (!std::isfinite(v) || shore.is_missing(v)) return std::nullopt;
    return static_cast<double>(v);
}

ShoreOutcome f1_shore(std::span<const SceneMatch> scenes, const ScoreConfig& config) {
    ShoreOutcome out;
    const auto label_close = [&](const core::LabelRecord& label) {
        return label.distance_from_shore_km.has_value() &&
               *label.distance_from_shore_km <= config.shore_threshold_km;
    };
    for (const auto& scene : scenes) {
        for (const auto& pair : scene.result->pairs)
            if (label_close(scene.labels[pair.label])) ++out.counts.tp;
        for (const int j : scene.result->unmatched_labels)
            if (label_close(scene.labels[j])) ++out.counts.fn;
        for (const int i : scene.result->unmatched_predictions) {
            const auto& pred = scene.predictions[i];
            std::optional<double> d;
            if (scene.shore != nullptr)
                d = sample_shore_km(*scene.shore, pred.row, pred.col, scene.scene_height,
                                    scene.scene_width);
            if (!d) {
                ++out.unknown_fp;
                out.computable = false;
            } else if (*d <= config.shore_threshold_km) {
                ++out.counts.fp;
            }
        }
    }
    out.f1_s = fbeta(out.counts.tp, out.counts.fp, out.counts.fn, config.beta);
    return out;
}

namespace {

std::pair<double, core::MetricCounts> classification_f1(std::span<const SceneMatch> scenes,
                                                        double beta, bool fishing) {
    core::MetricCounts counts;
    for (const auto& scene : scenes) {
        for (const auto& pair : scene.result->pairs) {
            const auto& label = scene.labels[pair.label];
            const auto& pred = scene.predictions[pair.prediction];
            bool label_pos, pred_pos;
            if (fishing) {
                if (!label.is_vessel.has_value() || !*label.is_vessel ||
                    !label.is_fishing.has_value())
                    continue;
                label_pos = *label.is_fishing;
                pred_pos = pred.is_fishing;
            } else {
                if (!label.is_vessel.has_value()) continue;
                label_pos = *label.is_vessel;
                pred_pos = pred.is_vessel;
            }
            if (pred_pos && label_pos)
                ++counts.tp;
            else if (pred_pos && !label_pos)
                ++counts.fp;
            else if (!pred_pos && label_pos)
                ++counts.fn;
        }
    }
    return {fbeta(counts.tp, counts.fp, counts.fn, beta), counts};
}

}  // namespace

std::pair<double, core::MetricCounts> f1_vessel(std::span<const SceneMatch> scenes, double beta) {
    return classification_f1(scenes, beta, false);
}

std::pair<double, core::MetricCounts> f1_fishing(std::span<const SceneMatch> scenes,
                                                 double beta) {
    return classification_f1(scenes, beta, true);
}

}  // namespace fadsar::score
