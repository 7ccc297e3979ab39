#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace fadsar::preprocess {

// Channel after per-patch min-max normalization. Valid cells lie in [0, 1];
// invalid cells hold 0.
struct NormalizedChannel {
    std::vector<float> values;
    std::vector<std::uint8_t> valid;
};

// Normalizes over the cells with usable[i] != 0: out = (v - min)/(max - min).
// Returns nullopt (Degenerate) when no usable cell exists or max == min; the
// caller must discard the patch.
std::optional<NormalizedChannel> min_max_normalize(std::span<const float> values,
                                                   std::span<const std::uint8_t> usable);

// Usability mask for one channel of a window: in-scene, finite, not nodata.
std::vector<std::uint8_t> channel_mask(std::span<const float> values,
                                       std::span<const std::uint8_t> in_scene,
                                       float nodata_sentinel);

}  // namespace fadsar::preprocess
