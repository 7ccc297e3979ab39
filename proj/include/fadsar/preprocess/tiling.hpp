#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fadsar/core/types.hpp"

namespace fadsar::preprocess {

enum class EdgePolicy { PadReflect, PadZero, DropPartial };

std::string to_string(EdgePolicy e);
std::optional<EdgePolicy> edge_policy_from_string(std::string_view s);

struct TilingPolicy {
    int patch_size = 800;
    int stride = 0;  // 0 means patch_size
    EdgePolicy edge = EdgePolicy::PadZero;

    int effective_stride() const { return stride > 0 ? stride : patch_size; }
    void validate() const;  // throws ConfigError
};

// Scene index feeding window cell `local` of a window at `offset`, for an axis
// of length `extent`. nullopt = outside the scene under PadZero (the cell reads
// as missing). PadReflect folds the index back into range; DropPartial windows
// never leave the scene.
std::optional<int> source_index(int offset, int local, int extent, EdgePolicy edge);

// Unnormalized window over VV/VH. in_scene marks cells with a source pixel;
// PadZero cells outside the scene have in_scene==0 and value 0.
struct RawWindow {
    std::string scene_id;
    int row_offset = 0;
    int col_offset = 0;
    int size = 0;
    std::vector<float> vv;
    std::vector<float> vh;
    std::vector<std::uint8_t> in_scene;

    std::size_t cell_count() const { return static_cast<std::size_t>(size) * size; }
};

// Windows per axis: ceil-style for pad policies, floor-style for DropPartial
// (0 when the scene is smaller than the patch).
int window_count(int extent, const TilingPolicy& policy);

// Cuts the scene into windows ordered by (row_offset, col_offset).
std::vector<RawWindow> tile_scene(const core::Scene& scene, const TilingPolicy& policy);

}  // namespace fadsar::preprocess
