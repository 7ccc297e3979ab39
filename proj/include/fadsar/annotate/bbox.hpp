#pragma once

namespace fadsar::annotate {

// Half-open pixel box [row_min, row_max) x [col_min, col_max) in patch frame.
struct BBox {
    int row_min = 0;
    int col_min = 0;
    int row_max = 0;
    int col_max = 0;

    int height() const { return row_max - row_min; }
    int width() const { return col_max - col_min; }
    int area() const { return height() * width(); }

    bool operator==(const BBox&) const = default;
};

// Box of extent [center - size/2, center + size/2) per axis, clipped to
// [0, patch_size). Throws CenterOutsidePatchError when the center is not
// inside the patch; the clipped area is always > 0.
BBox synthesize_bbox(int center_row, int center_col, int bbox_size, int patch_size);

}  // namespace fadsar::annotate
