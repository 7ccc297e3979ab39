#pragma once

#include <span>
#include <string>
#include <vector>

#include "fadsar/core/types.hpp"

namespace fadsar::annotate {

struct AnnotateConfig {
    core::Confidence min_confidence = core::Confidence::High;
    int bbox_size = 20;
    bool drop_ambiguous = true;

    void validate() const;  // throws ConfigError; bbox_size must be even and >= 2
};

enum class DropReason { LowConfidence, AmbiguousLabel };

std::string to_string(DropReason r);

struct ClassifiedLabel {
    core::LabelRecord record;
    core::ClassLabel cls = core::ClassLabel::NonVessel;
};

struct DroppedLabel {
    core::LabelRecord record;
    DropReason reason = DropReason::LowConfidence;
};

struct FilterResult {
    std::vector<ClassifiedLabel> kept;
    std::vector<DroppedLabel> dropped;
};

// Partitions labels: kept = confidence >= min_confidence with a resolvable
// class. With drop_ambiguous=false a vessel of unknown fishing status resolves
// to NonFishing; a label with is_vessel absent is ambiguous either way.
FilterResult filter_labels(std::span<const core::LabelRecord> labels,
                           const AnnotateConfig& config);

}  // namespace fadsar::annotate
