#include "fadsar/annotate/annotations.hpp"

namespace fadsar::annotate {

AnnotateResult labels_to_annotations(std::span<const ClassifiedLabel> kept,
                                     std::span<const core::Patch> patches,
                                     std::span<const preprocess::DiscardEntry> discards,
                                     const AnnotateConfig& config) {
    config.validate();
    AnnotateResult result;
    for (const auto& label : kept) {
        const auto& rec = label.record;
        bool assigned = false;
        for (const auto& patch : patches) {
            if (patch.scene_id != rec.scene_id ||
                !patch.contains_scene_point(rec.row, rec.col))
                continue;
            Annotation ann;
            ann.scene_id = patch.scene_id;
            ann.row_offset = patch.row_offset;
            ann.col_offset = patch.col_offset;
            ann.bbox = synthesize_bbox(rec.row - patch.row_offset, rec.col - patch.col_offset,
                                       config.bbox_size, patch.size);
            ann.cls = label.cls;
            ann.detect_id = rec.detect_id;
            result.annotations.push_back(std::move(ann));
            assigned = true;
        }
        if (assigned) continue;

        bool in_discard = false;
        for (const auto& d : discards) {
            if (d.scene_id == rec.scene_id && d.contains_scene_point(rec.row, rec.col)) {
                in_discard = true;
                break;
            }
        }
        result.skipped.push_back({rec, in_discard ? "discarded_patch" : "no_patch"});
    }
    return result;
}

}  // namespace fadsar::annotate
