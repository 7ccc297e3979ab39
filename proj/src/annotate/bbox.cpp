#include "fadsar/annotate/bbox.hpp"

#include <algorithm>
#include <string>

#include "fadsar/errors.hpp"

namespace fadsar::annotate {

BBox synthesize_bbox(int center_row, int center_col, int bbox_size, int patch_size) {
    if (bbox_size < 2 || bbox_size % 2 != 0)
        throw ConfigError("bbox_size must be even and >= 2");
    if (center_row < 0 || center_row >= patch_size || center_col < 0 ||
        center_col >= patch_size)
        throw CenterOutsidePatchError("center (" + std::to_string(center_row) + ", " +
                                      std::to_string(center_col) + ") outside patch of size " +
                                      std::to_string(patch_size));

    const int half = bbox_size / 2;
    BBox box;
    box.row_min = std::max(0, center_row - half);
    box.row_max = std::min(patch_size, center_row + half);
    box.col_min = std::max(0, center_col - half);
    box.col_max = std::min(patch_size, center_col + half);
    return box;
}

}  // namespace fadsar::annotate
