#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "fadsar/preprocess/pipeline.hpp"

namespace fadsar::preprocess {

// Binary file name for one patch: <scene_id>_r<row>_c<col>.bin.
std::string patch_file_name(const core::Patch& patch);

// Writes each patch as 3 float32-LE channel planes followed by the validity
// mask, plus a patches.jsonl index holding one {"type":"patch",...} line per
// patch and one {"type":"discard",...} line per discard entry.
void export_patches(std::span<const core::Patch> patches,
                    std::span<const DiscardEntry> discards, const std::filesystem::path& dir);

// Reads back what export_patches wrote; the round trip is exact.
PreprocessResult import_patches(const std::filesystem::path& dir);

}  // namespace fadsar::preprocess
