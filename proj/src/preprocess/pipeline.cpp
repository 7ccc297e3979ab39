#include "fadsar/preprocess/pipeline.hpp"

#include <optional>
#include <utility>
#include <variant>

#include "fadsar/errors.hpp"
#include "fadsar/preprocess/normalize.hpp"
#include "fadsar/util/parallel.hpp"

namespace fadsar::preprocess {

namespace {

std::variant<core::Patch, DiscardEntry> process_window(const core::Scene& scene,
                                                       const RawWindow& window,
                                                       EdgePolicy edge,
                                                       const FusionMethod& method) {
    const auto discard = [&](const char* reason) {
        return DiscardEntry{window.scene_id, window.row_offset, window.col_offset, window.size,
                            reason};
    };

    const auto vv_norm =
        min_max_normalize(window.vv, channel_mask(window.vv, window.in_scene,
                                                  scene.vv.nodata_sentinel));
    if (!vv_norm) return discard("degenerate_vv");
    const auto vh_norm =
        min_max_normalize(window.vh, channel_mask(window.vh, window.in_scene,
                                                  scene.vh.nodata_sentinel));
    if (!vh_norm) return discard("degenerate_vh");

    try {
        auto patch = fuse_channels(*vv_norm, *vh_norm, scene, window, edge, method);
        if (!patch) return discard("degenerate_channel3");
        return std::move(*patch);
    } catch (const MissingAuxiliaryError&) {
        return discard("missing_auxiliary");
    }
}

}  // namespace

PreprocessResult preprocess_scene(const core::Scene& scene, const TilingPolicy& policy,
                                  const FusionMethod& method, int workers) {
    const std::vector<RawWindow> windows = tile_scene(scene, policy);

    std::vector<std::optional<std::variant<core::Patch, DiscardEntry>>> slots(windows.size());
    util::parallel_for(windows.size(), workers, [&](std::size_t i) {
        slots[i] = process_window(scene, windows[i], policy.edge, method);
    });

    PreprocessResult result;
    for (auto& slot : slots) {
        if (auto* patch = std::get_if<core::Patch>(&*slot))
            result.patches.push_back(std::move(*patch));
        else
            result.discards.push_back(std::move(std::get<DiscardEntry>(*slot)));
    }
    return result;
}

}  // namespace fadsar::preprocess
