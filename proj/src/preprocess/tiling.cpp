#include "fadsar/preprocess/tiling.hpp"

#include "fadsar/errors.hpp"

namespace fadsar::preprocess {

std::string to_string(EdgePolicy e) {
    switch (e) {
        case EdgePolicy::PadReflect: return "pad_reflect";
        case EdgePolicy::PadZero: return "pad_zero";
        case EdgePolicy::DropPartial: return "drop_partial";
    }
    return "pad_zero";
}

std::optional<EdgePolicy> edge_policy_from_string(std::string_view s) {
    if (s == "pad_reflect") return EdgePolicy::PadReflect;
    if (s == "pad_zero") return EdgePolicy::PadZero;
    if (s == "drop_partial") return EdgePolicy::DropPartial;
    return std::nullopt;
}

void TilingPolicy::validate() const {
    if (patch_size <= 0) throw ConfigError("patch_size must be positive");
    if (stride < 0) throw ConfigError("stride must be >= 0");
    if (effective_stride() > patch_size)
        throw ConfigError("stride must not exceed patch_size");
}

namespace {

// Folds an out-of-range index back into [0, n) by mirroring across the edges
// without repeating the edge sample (period 2n-2).
int reflect_index(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * n - 2;
    i %= period;
    if (i < 0) i += period;
    return i < n ? i : period - i;
}

}  // namespace

std::optional<int> source_index(int offset, int local, int extent, EdgePolicy edge) {
    const int i = offset + local;
    if (i >= 0 && i < extent) return i;
    switch (edge) {
        case EdgePolicy::PadReflect: return reflect_index(i, extent);
        case EdgePolicy::PadZero: return std::nullopt;
        case EdgePolicy::DropPartial: return std::nullopt;
    }
    return std::nullopt;
}

int window_count(int extent, const TilingPolicy& policy) {
    const int p = policy.patch_size;
    const int s = policy.effective_stride();
    if (policy.edge == EdgePolicy::DropPartial)
        return extent >= p ? (extent - p) / s + 1 : 0;
    return extent > p ? (extent - p + s - 1) / s + 1 : 1;
}

std::vector<RawWindow> tile_scene(const core::Scene& scene, const TilingPolicy& policy) {
    policy.validate();
    const int p = policy.patch_size;
    const int s = policy.effective_stride();
    const int rows = window_count(scene.height(), policy);
    const int cols = window_count(scene.width(), policy);

    std::vector<RawWindow> windows;
    windows.reserve(static_cast<std::size_t>(rows) * cols);
    for (int wr = 0; wr < rows; ++wr) {
        for (int wc = 0; wc < cols; ++wc) {
            RawWindow w;
            w.scene_id = scene.scene_id;
            w.row_offset = wr * s;
            w.col_offset = wc * s;
            w.size = p;
            w.vv.assign(w.cell_count(), 0.0f);
            w.vh.assign(w.cell_count(), 0.0f);
            w.in_scene.assign(w.cell_count(), 0);
            for (int r = 0; r < p; ++r) {
                const auto sr = source_index(w.row_offset, r, scene.height(), policy.edge);
                if (!sr) continue;
                for (int c = 0; c < p; ++c) {
                    const auto sc = source_index(w.col_offset, c, scene.width(), policy.edge);
                    if (!sc) continue;
                    const std::size_t i = static_cast<std::size_t>(r) * p + c;
                    w.vv[i] = scene.vv.at(*sr, *sc);
                    w.vh[i] = scene.vh.at(*sr, *sc);
                    w.in_scene[i] = 1;
                }
            }
            windows.push_back(std::move(w));
        }
    }
    return windows;
}

}  // namespace fadsar::preprocess
