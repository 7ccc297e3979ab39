#include "fadsar/core/types.hpp"

#include <algorithm>
#include <cctype>

namespace fadsar::core {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::string to_string(Confidence c) {
    switch (c) {
        case Confidence::Low: return "LOW";
        case Confidence::Medium: return "MEDIUM";
        case Confidence::High: return "HIGH";
    }
    return "HIGH";
}

std::optional<Confidence> confidence_from_string(std::string_view s) {
    const std::string l = lower(s);
    if (l == "low") return Confidence::Low;
    if (l == "medium") return Confidence::Medium;
    if (l == "high") return Confidence::High;
    return std::nullopt;
}

std::string to_string(ClassLabel c) {
    switch (c) {
        case ClassLabel::Fishing: return "fishing";
        case ClassLabel::NonFishing: return "non_fishing";
        case ClassLabel::NonVessel: return "non_vessel";
    }
    return "non_vessel";
}

std::optional<ClassLabel> class_label_from_string(std::string_view s) {
    if (s == "fishing") return ClassLabel::Fishing;
    if (s == "non_fishing") return ClassLabel::NonFishing;
    if (s == "non_vessel") return ClassLabel::NonVessel;
    return std::nullopt;
}

std::optional<ClassLabel> class_label_from_flags(std::optional<bool> is_vessel,
                                                 std::optional<bool> is_fishing) {
    if (!is_vessel.has_value()) return std::nullopt;
    if (!*is_vessel) return ClassLabel::NonVessel;
    if (!is_fishing.has_value()) return std::nullopt;
    return *is_fishing ? ClassLabel::Fishing : ClassLabel::NonFishing;
}

}  // namespace fadsar::core
