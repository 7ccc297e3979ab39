#include "fadsar/preprocess/normalize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fadsar::preprocess {

std::optional<NormalizedChannel> min_max_normalize(std::span<const float> values,
                                                   std::span<const std::uint8_t> usable) {
    float lo = std::numeric_limits<float>::infinity();
    float hi = -std::numeric_limits<float>::infinity();
    bool any = false;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!usable[i]) continue;
        lo = std::min(lo, values[i]);
        hi = std::max(hi, values[i]);
        any = true;
    }
    if (!any || lo == hi) return std::nullopt;

    NormalizedChannel out;
    out.values.assign(values.size(), 0.0f);
    out.valid.assign(values.size(), 0);
    const float range = hi - lo;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!usable[i]) continue;
        out.values[i] = std::clamp((values[i] - lo) / range, 0.0f, 1.0f);
        out.valid[i] = 1;
    }
    return out;
}

std::vector<std::uint8_t> channel_mask(std::span<const float> values,
                                       std::span<const std::uint8_t> in_scene,
                                       float nodata_sentinel) {
    std::vector<std::uint8_t> mask(values.size(), 0);
    for (std::size_t i = 0; i < values.size(); ++i)
        mask[i] = in_scene[i] && std::isfinite(values[i]) && values[i] > nodata_sentinel;
    return mask;
}

}  // namespace fadsar::preprocess
