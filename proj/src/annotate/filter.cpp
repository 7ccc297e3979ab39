#include "fadsar/annotate/filter.hpp"

#include "fadsar/errors.hpp"

namespace fadsar::annotate {

void AnnotateConfig::validate() const {
    if (bbox_size < 2) throw ConfigError("bbox_size must be >= 2");
    if (bbox_size % 2 != 0) throw ConfigError("bbox_size must be even");
}

std::string to_string(DropReason r) {
    switch (r) {
        case DropReason::LowConfidence: return "low_confidence";
        case DropReason::AmbiguousLabel: return "ambiguous_label";
    }
    return "low_confidence";
}

FilterResult filter_labels(std::span<const core::LabelRecord> labels,
                           const AnnotateConfig& config) {
    config.validate();
    FilterResult result;
    for (const auto& label : labels) {
        if (static_cast<int>(label.confidence) < static_cast<int>(config.min_confidence)) {
            result.dropped.push_back({label, DropReason::LowConfidence});
            continue;
        }
        auto cls = core::class_label_from_flags(label.is_vessel, label.is_fishing);
        if (!cls && !config.drop_ambiguous && label.is_vessel.has_value() && *label.is_vessel)
            cls = core::ClassLabel::NonFishing;
        if (!cls) {
            result.dropped.push_back({label, DropReason::AmbiguousLabel});
            continue;
        }
        result.kept.push_back({label, *cls});
    }
    return result;
}

}  // namespace fadsar::annotate
