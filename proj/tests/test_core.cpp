#include <doctest.h>

#include <cmath>

#include "fadsar/core/types.hpp"

using namespace fadsar;

TEST_CASE("confidence strings parse case-insensitively") {
    CHECK(core::confidence_from_string("HIGH") == core::Confidence::High);
    CHECK(core::confidence_from_string("high") == core::Confidence::High);
    CHECK(core::confidence_from_string("Medium") == core::Confidence::Medium);
    CHECK(core::confidence_from_string("LOW") == core::Confidence::Low);
    CHECK_FALSE(core::confidence_from_string("sure").has_value());
    CHECK_FALSE(core::confidence_from_string("").has_value());
    CHECK(core::to_string(core::Confidence::High) == "HIGH");
    CHECK(core::to_string(core::Confidence::Medium) == "MEDIUM");
    CHECK(core::to_string(core::Confidence::Low) == "LOW");
}

TEST_CASE("class labels carry stable codes and names") {
    CHECK(static_cast<int>(core::ClassLabel::Fishing) == 0);
    CHECK(static_cast<int>(core::ClassLabel::NonFishing) == 1);
    CHECK(static_cast<int>(core::ClassLabel::NonVessel) == 2);
    CHECK(core::to_string(core::ClassLabel::Fishing) == "fishing");
    CHECK(core::to_string(core::ClassLabel::NonFishing) == "non_fishing");
    CHECK(core::to_string(core::ClassLabel::NonVessel) == "non_vessel");
    CHECK(core::class_label_from_string("fishing") == core::ClassLabel::Fishing);
    CHECK(core::class_label_from_string("non_fishing") == core::ClassLabel::NonFishing);
    CHECK(core::class_label_from_string("non_vessel") == core::ClassLabel::NonVessel);
    CHECK_FALSE(core::class_label_from_string("Fishing").has_value());
}

TEST_CASE("class_label_from_flags covers the full truth table") {
    using core::class_label_from_flags;
    CHECK(class_label_from_flags(true, true) == core::ClassLabel::Fishing);
    CHECK(class_label_from_flags(true, false) == core::ClassLabel::NonFishing);
    CHECK(class_label_from_flags(false, std::nullopt) == core::ClassLabel::NonVessel);
    CHECK(class_label_from_flags(false, false) == core::ClassLabel::NonVessel);
    CHECK_FALSE(class_label_from_flags(true, std::nullopt).has_value());
    CHECK_FALSE(class_label_from_flags(std::nullopt, std::nullopt).has_value());
    CHECK_FALSE(class_label_from_flags(std::nullopt, true).has_value());
}

TEST_CASE("raster missing test catches sentinel and NaN") {
    core::Raster r;
    r.width = 2;
    r.height = 1;
    r.nodata_sentinel = -30000.0f;
    r.values = {1.5f, -30000.0f};
    CHECK_FALSE(r.is_missing(1.5f));
    CHECK(r.is_missing(-30000.0f));
    CHECK(r.is_missing(-40000.0f));
    CHECK(r.is_missing(std::nanf("")));
    CHECK(r.at(0, 1) == -30000.0f);
    CHECK(r.cell_count() == 2);
}

TEST_CASE("patch window containment is half-open") {
    core::Patch p;
    p.row_offset = 800;
    p.col_offset = 0;
    p.size = 800;
    CHECK(p.contains_scene_point(800, 0));
    CHECK(p.contains_scene_point(1599, 799));
    CHECK_FALSE(p.contains_scene_point(799, 0));
    CHECK_FALSE(p.contains_scene_point(1600, 0));
    CHECK_FALSE(p.contains_scene_point(800, 800));
}
