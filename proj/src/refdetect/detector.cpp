#include "fadsar/refdetect/detector.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "fadsar/errors.hpp"
#include "fadsar/util/parallel.hpp"

namespace fadsar::refdetect {

void RefDetectConfig::validate() const {
    if (k_sigma <= 0) throw ConfigError("k_sigma must be positive");
    if (min_area_px < 1) throw ConfigError("min_area_px must be >= 1");
    if (merge_radius_m < 0) throw ConfigError("merge_radius_m must be >= 0");
}

std::vector<PatchDetection> detect_patch(const core::Patch& patch,
                                         const RefDetectConfig& config) {
    config.validate();
    const auto& values = patch.channels[0];
    const int p = patch.size;

    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!patch.valid[i]) continue;
        sum += values[i];
        ++n;
    }
    if (n == 0) return {};
    const double mean = sum / static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!patch.valid[i]) continue;
        const double d = values[i] - mean;
        var += d * d;
    }
    const double threshold = mean + config.k_sigma * std::sqrt(var / static_cast<double>(n));

    std::vector<std::uint8_t> candidate(values.size(), 0);
    for (std::size_t i = 0; i < values.size(); ++i)
        candidate[i] = patch.valid[i] && values[i] > threshold;

    std::vector<PatchDetection> detections;
    std::vector<std::uint8_t> visited(values.size(), 0);
    std::vector<std::size_t> stack;
    for (int r0 = 0; r0 < p; ++r0) {
        for (int c0 = 0; c0 < p; ++c0) {
            const std::size_t start = static_cast<std::size_t>(r0) * p + c0;
            if (!candidate[start] || visited[start]) continue;

            double sum_r = 0.0, sum_c = 0.0, sum_v = 0.0;
            int area = 0;
            stack.assign(1, start);
            visited[start] = 1;
            while (!stack.empty()) {
                const std::size_t i = stack.back();
                stack.pop_back();
                const int r = static_cast<int>(i) / p;
                const int c = static_cast<int>(i) % p;
                sum_r += r;
                sum_c += c;
                sum_v += values[i];
                ++area;
                for (int dr = -1; dr <= 1; ++dr) {
                    for (int dc = -1; dc <= 1; ++dc) {
                        if (dr == 0 && dc == 0) continue;
                        const int nr = r + dr;
                        const int nc = c + dc;
                        if (nr < 0 || nr >= p || nc < 0 || nc >= p) continue;
                        const std::size_t ni = static_cast<std::size_t>(nr) * p + nc;
                        if (!candidate[ni] || visited[ni]) continue;
                        visited[ni] = 1;
                        stack.push_back(ni);
                    }
                }
            }
            if (area < config.min_area_px) continue;
            detections.push_back({sum_r / area, sum_c / area, area, sum_v / area});
        }
    }
    return detections;
}

namespace {

struct Candidate {
    int row = 0;
    int col = 0;
    double intensity = 0.0;
};

void assign_class(core::DetectionRecord& rec, core::ClassLabel cls) {
    switch (cls) {
        case core::ClassLabel::Fishing:
            rec.is_vessel = true;
            rec.is_fishing = true;
            break;
        case core::ClassLabel::NonFishing:
            rec.is_vessel = true;
            rec.is_fishing = false;
            break;
        case core::ClassLabel::NonVessel:
            rec.is_vessel = false;
            rec.is_fishing = false;
            break;
    }
}

}  // namespace

std::vector<core::DetectionRecord> aggregate_detections(
    const std::string& scene_id, std::span<const PatchDetections> per_patch, int scene_width,
    int scene_height, double pixel_spacing_m, const RefDetectConfig& config) {
    config.validate();

    std::vector<Candidate> candidates;
    for (const auto& patch : per_patch) {
        for (const auto& d : patch.detections) {
            Candidate c;
            c.row = static_cast<int>(std::clamp<long>(
                std::lround(patch.row_offset + d.row), 0, scene_height - 1));
            c.col = static_cast<int>(std::clamp<long>(
                std::lround(patch.col_offset + d.col), 0, scene_width - 1));
            c.intensity = std::clamp(d.mean_intensity, 0.0, 1.0);
            candidates.push_back(c);
        }
    }

    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(b.intensity, a.row, a.col) < std::tie(a.intensity, b.row, b.col);
    });

    std::vector<Candidate> kept;
    for (const auto& c : candidates) {
        const bool clear = std::none_of(kept.begin(), kept.end(), [&](const Candidate& k) {
            const double dr = k.row - c.row;
            const double dc = k.col - c.col;
            return std::hypot(dr, dc) * pixel_spacing_m <= config.merge_radius_m;
        });
        if (clear) kept.push_back(c);
    }

    std::vector<core::DetectionRecord> records;
    records.reserve(kept.size());
    for (const auto& c : kept) {
        core::DetectionRecord rec;
        rec.scene_id = scene_id;
        rec.row = c.row;
        rec.col = c.col;
        assign_class(rec, config.default_class);
        rec.score = c.intensity;
        records.push_back(std::move(rec));
    }
    std::sort(records.begin(), records.end(),
              [](const core::DetectionRecord& a, const core::DetectionRecord& b) {
                  return std::tie(a.row, a.col, b.score) < std::tie(b.row, b.col, a.score);
              });
    return records;
}

std::vector<core::DetectionRecord> run_reference_detector(const core::Scene& scene,
                                                          const preprocess::TilingPolicy& policy,
                                                          const preprocess::FusionMethod& fusion,
                                                          const RefDetectConfig& config,
                                                          int workers) {
    config.validate();
    const preprocess::PreprocessResult pre = preprocess_scene(scene, policy, fusion, workers);

    std::vector<PatchDetections> per_patch(pre.patches.size());
    util::parallel_for(pre.patches.size(), workers, [&](std::size_t i) {
        per_patch[i].row_offset = pre.patches[i].row_offset;
        per_patch[i].col_offset = pre.patches[i].col_offset;
        per_patch[i].detections = detect_patch(pre.patches[i], config);
    });

    return aggregate_detections(scene.scene_id, per_patch, scene.width(), scene.height(),
                                scene.vv.pixel_spacing_m, config);
}

}  // namespace fadsar::refdetect
