#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "fadsar/annotate/annotations.hpp"

namespace fadsar::annotate {

// COCO-style annotations.json: images = the patch index (ids assigned in
// (scene_id, row_offset, col_offset) order), annotations with [x, y, w, h]
// boxes and category ids fishing=1, non_fishing=2, non_vessel=3. Image and
// annotation entries carry the patch provenance and detect_id so the export
// re-imports losslessly.
void export_annotations(std::span<const Annotation> annotations,
                        std::span<const core::Patch> patches,
                        const std::filesystem::path& path);

std::vector<Annotation> import_annotations(const std::filesystem::path& path);

// JSONL audit log: one line per dropped label (low_confidence/ambiguous_label)
// and one per skipped label (discarded_patch/no_patch).
void write_drop_log(std::span<const DroppedLabel> dropped,
                    std::span<const SkippedLabel> skipped, const std::filesystem::path& path);

}  // namespace fadsar::annotate
