#pragma once

#include <string>
#include <vector>

#include "fadsar/core/types.hpp"
#include "fadsar/preprocess/fusion.hpp"
#include "fadsar/preprocess/tiling.hpp"

namespace fadsar::preprocess {

// Reasons: degenerate_vv, degenerate_vh, degenerate_channel3, missing_auxiliary.
struct DiscardEntry {
    std::string scene_id;
    int row_offset = 0;
    int col_offset = 0;
    int size = 0;
    std::string reason;

    bool operator==(const DiscardEntry&) const = default;

    bool contains_scene_point(int row, int col) const {
        return row >= row_offset && row < row_offset + size && col >= col_offset &&
               col < col_offset + size;
    }
};

struct PreprocessResult {
    std::vector<core::Patch> patches;
    std::vector<DiscardEntry> discards;
};

// tile -> normalize -> fuse. Patches and discards are both ordered by
// (row_offset, col_offset); the result is identical for any worker count.
PreprocessResult preprocess_scene(const core::Scene& scene, const TilingPolicy& policy,
                                  const FusionMethod& method, int workers = 1);

}  // namespace fadsar::preprocess
