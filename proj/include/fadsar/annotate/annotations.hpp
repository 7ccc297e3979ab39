#pragma once

#include <span>
#include <string>
#include <vector>

#include "fadsar/annotate/bbox.hpp"
#include "fadsar/annotate/filter.hpp"
#include "fadsar/core/types.hpp"
#include "fadsar/preprocess/pipeline.hpp"

namespace fadsar::annotate {

struct Annotation {
    std::string scene_id;
    int row_offset = 0;
    int col_offset = 0;
    BBox bbox;  // patch frame
    core::ClassLabel cls = core::ClassLabel::NonVessel;
    std::string detect_id;

    bool operator==(const Annotation&) const = default;
};

// Labels whose centroid landed in no emitted patch. Reasons: discarded_patch
// (the tile exists but was degenerate), no_patch (no window covers the point,
// e.g. under DropPartial).
struct SkippedLabel {
    core::LabelRecord record;
    std::string reason;
};

struct AnnotateResult {
    std::vector<Annotation> annotations;
    std::vector<SkippedLabel> skipped;
};

// Assigns each kept label to every patch whose half-open window contains its
// centroid (exactly one when stride == patch_size), translating coordinates to
// the patch frame and synthesizing a config.bbox_size box around them.
AnnotateResult labels_to_annotations(std::span<const ClassifiedLabel> kept,
                                     std::span<const core::Patch> patches,
                                     std::span<const preprocess::DiscardEntry> discards,
                                     const AnnotateConfig& config);

}  // namespace fadsar::annotate
