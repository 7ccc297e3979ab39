#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fadsar::core {

inline constexpr double kDefaultPixelSpacingM = 10.0;
inline constexpr float kDefaultNodataSentinel = -30000.0f;

/// Single-band row-major float grid. Values <= nodata_sentinel are missing.
struct Raster {
    int width = 0;
    int height = 0;
    double pixel_spacing_m = kDefaultPixelSpacingM;
    float nodata_sentinel = kDefaultNodataSentinel;
    std::vector<float> values;

    float at(int row, int col) const { return values[static_cast<std::size_t>(row) * width + col]; }
    float& at(int row, int col) { return values[static_cast<std::size_t>(row) * width + col]; }
    std::size_t cell_count() const { return static_cast<std::size_t>(width) * height; }
    bool is_missing(float v) const { return !(v > nodata_sentinel); }  // catches NaN too
};

/// Co-registered rasters for one acquisition. VV/VH share dimensions; auxiliaries
/// may be lower resolution and carry their own spacing.
struct Scene {
    std::string scene_id;
    Raster vv;
    Raster vh;
    std::map<std::string, Raster> auxiliaries;
    std::optional<Raster> shore_distance;  // km

    int width() const { return vv.width; }
    int height() const { return vv.height; }
};

enum class Confidence : int { Low = 0, Medium = 1, High = 2 };

std::string to_string(Confidence c);
std::optional<Confidence> confidence_from_string(std::string_view s);  // case-insensitive

/// Ground-truth point object in scene pixel coordinates, origin top-left,
/// row grows downward.
struct LabelRecord {
    std::string detect_id;
    std::string scene_id;
    int row = 0;
    int col = 0;
    std::optional<bool> is_vessel;
    std::optional<bool> is_fishing;
    std::optional<double> vessel_length_m;
    Confidence confidence = Confidence::High;
    std::optional<double> distance_from_shore_km;
    std::string source;

    bool operator==(const LabelRecord&) const = default;
};

/// Codes are stable for serialization: fishing=0, non_fishing=1, non_vessel=2.
enum class ClassLabel : int { Fishing = 0, NonFishing = 1, NonVessel = 2 };

std::string to_string(ClassLabel c);
std::optional<ClassLabel> class_label_from_string(std::string_view s);

/// Merges the two boolean flags into the three-way class. Returns nullopt when
/// the class is ambiguous: is_vessel absent, or vessel with unknown fishing
/// status. Callers decide whether to drop or keep such records.
std::optional<ClassLabel> class_label_from_flags(std::optional<bool> is_vessel,
                                                 std::optional<bool> is_fishing);

/// One predicted point object. is_fishing implies is_vessel.
struct DetectionRecord {
    std::string scene_id;
    int row = 0;
    int col = 0;
    bool is_vessel = false;
    bool is_fishing = false;
    double score = 1.0;

    bool operator==(const DetectionRecord&) const = default;
};

/// Normalized 3-channel window cut from a scene. Channels 1/2 are VV/VH;
/// channel 3 is produced by the fusion named in channel_spec. All finite values
/// lie in [0, 1]; cells with valid==0 were missing and hold 0.
struct Patch {
    std::string scene_id;
    int row_offset = 0;
    int col_offset = 0;
    int size = 0;
    std::array<std::vector<float>, 3> channels;
    std::vector<std::uint8_t> valid;
    std::string channel_spec;

    std::size_t cell_count() const { return static_cast<std::size_t>(size) * size; }
    bool contains_scene_point(int row, int col) const {
        return row >= row_offset && row < row_offset + size && col >= col_offset &&
               col < col_offset + size;
    }
};

struct MetricCounts {
    long long tp = 0;
    long long fp = 0;
    long long fn = 0;

    bool operator==(const MetricCounts&) const = default;
};

/// One scored bundle: the four F1 components, their count breakdowns, and the
/// aggregate avg_f1 == ((f1_d+f1_s)/2)*((f1_v+f1_f)/2).
struct ScoreSummary {
    double f1_d = 0.0;
    double f1_s = 0.0;
    double f1_v = 0.0;
    double f1_f = 0.0;
    double avg_f1 = 0.0;
    MetricCounts detection;
    MetricCounts shore;
    MetricCounts vessel;
    MetricCounts fishing;
    // Unmatched predictions whose shore distance could not be sampled; excluded
    // from shore.fp and reported separately.
    long long shore_unknown_fp = 0;
    bool f1_s_computable = true;
};

struct MetricsReport : ScoreSummary {
    std::map<std::string, ScoreSummary> per_scene;
};

}  // namespace fadsar::core
