#include "fadsar/ingest/records_csv.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fadsar/errors.hpp"
#include "fadsar/util/csv.hpp"
#include "fadsar/util/numeric.hpp"

namespace fadsar::ingest {

namespace {

using util::CsvTable;

void require_columns(const CsvTable& table, std::initializer_list<const char*> names) {
    for (const char* name : names) {
        if (table.column(name) < 0)
            throw CsvSchemaError(std::string("missing required column '") + name + "'");
    }
}

std::string field(const std::vector<std::string>& row, int col) {
    return col >= 0 && col < static_cast<int>(row.size()) ? row[col] : std::string();
}

int parse_pixel_index(const std::string& s, long long row_no, const char* what) {
    const auto v = util::parse_int(s);
    if (!v || *v < 0 || *v > std::numeric_limits<int>::max())
        throw RowParseError(row_no, std::string("bad ") + what + " '" + s + "'");
    return static_cast<int>(*v);
}

std::optional<bool> parse_optional_bool(const std::string& s, long long row_no, const char* what) {
    if (s.empty()) return std::nullopt;
    const auto v = util::parse_bool(s);
    if (!v) throw RowParseError(row_no, std::string("bad boolean ") + what + " '" + s + "'");
    return v;
}

std::optional<double> parse_optional_double(const std::string& s, long long row_no,
                                            const char* what) {
    if (s.empty()) return std::nullopt;
    const auto v = util::parse_double(s);
    if (!v || !std::isfinite(*v))
        throw RowParseError(row_no, std::string("bad number ") + what + " '" + s + "'");
    return v;
}

std::string bool_str(bool v) { return v ? "true" : "false"; }

std::string opt_bool_str(const std::optional<bool>& v) {
    return v.has_value() ? bool_str(*v) : std::string();
}

std::string opt_double_str(const std::optional<double>& v) {
    return v.has_value() ? util::format_double(*v) : std::string();
}

}  // namespace

std::vector<core::LabelRecord> parse_labels(std::istream& in) {
    const CsvTable table = util::read_csv(in);
    require_columns(table, {"detect_id", "scene_id", "detect_scene_row", "detect_scene_column",
                            "confidence"});

    const int c_id = table.column("detect_id");
    const int c_scene = table.column("scene_id");
    const int c_row = table.column("detect_scene_row");
    const int c_col = table.column("detect_scene_column");
    const int c_vessel = table.column("is_vessel");
    const int c_fishing = table.column("is_fishing");
    const int c_length = table.column("vessel_length_m");
    const int c_conf = table.column("confidence");
    const int c_shore = table.column("distance_from_shore_km");
    const int c_source = table.column("source");

    std::vector<core::LabelRecord> records;
    records.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const long long row_no = static_cast<long long>(i) + 1;
        const auto& row = table.rows[i];
        if (row.size() != table.header.size())
            throw RowParseError(row_no, "expected " + std::to_string(table.header.size()) +
                                            " fields, found " + std::to_string(row.size()));

        core::LabelRecord rec;
        rec.detect_id = field(row, c_id);
        rec.scene_id = field(row, c_scene);
        if (rec.detect_id.empty()) throw RowParseError(row_no, "empty detect_id");
        if (rec.scene_id.empty()) throw RowParseError(row_no, "empty scene_id");
        rec.row = parse_pixel_index(field(row, c_row), row_no, "detect_scene_row");
        rec.col = parse_pixel_index(field(row, c_col), row_no, "detect_scene_column");
        rec.is_vessel = parse_optional_bool(field(row, c_vessel), row_no, "is_vessel");
        rec.is_fishing = parse_optional_bool(field(row, c_fishing), row_no, "is_fishing");
        if (rec.is_fishing.has_value() && !(rec.is_vessel.has_value() && *rec.is_vessel))
            throw RowParseError(row_no, "is_fishing present but is_vessel is not true");
        rec.vessel_length_m = parse_optional_double(field(row, c_length), row_no, "vessel_length_m");

        const std::string conf = field(row, c_conf);
        const auto parsed_conf = core::confidence_from_string(conf);
        if (!parsed_conf) throw RowParseError(row_no, "bad confidence '" + conf + "'");
        rec.confidence = *parsed_conf;

        rec.distance_from_shore_km =
            parse_optional_double(field(row, c_shore), row_no, "distance_from_shore_km");
        rec.source = field(row, c_source);
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<core::DetectionRecord> parse_predictions(std::istream& in) {
    const CsvTable table = util::read_csv(in);
    require_columns(table,
                    {"scene_id", "detect_scene_row", "detect_scene_column", "is_vessel",
                     "is_fishing"});

    const int c_scene = table.column("scene_id");
    const int c_row = table.column("detect_scene_row");
    const int c_col = table.column("detect_scene_column");
    const int c_vessel = table.column("is_vessel");
    const int c_fishing = table.column("is_fishing");
    const int c_score = table.column("score");

    std::vector<core::DetectionRecord> records;
    records.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const long long row_no = static_cast<long long>(i) + 1;
        const auto& row = table.rows[i];
        if (row.size() != table.header.size())
            throw RowParseError(row_no, "expected " + std::to_string(table.header.size()) +
                                            " fields, found " + std::to_string(row.size()));

        core::DetectionRecord rec;
        rec.scene_id = field(row, c_scene);
        if (rec.scene_id.empty()) throw RowParseError(row_no, "empty scene_id");
        rec.row = parse_pixel_index(field(row, c_row), row_no, "detect_scene_row");
        rec.col = parse_pixel_index(field(row, c_col), row_no, "detect_scene_column");

        const auto vessel = parse_optional_bool(field(row, c_vessel), row_no, "is_vessel");
        const auto fishing = parse_optional_bool(field(row, c_fishing), row_no, "is_fishing");
        if (!vessel) throw RowParseError(row_no, "empty is_vessel");
        if (!fishing) throw RowParseError(row_no, "empty is_fishing");
        rec.is_vessel = *vessel;
        rec.is_fishing = *fishing;
        if (rec.is_fishing && !rec.is_vessel)
            throw RowParseError(row_no, "is_fishing is true but is_vessel is false");

        const auto score = parse_optional_double(field(row, c_score), row_no, "score");
        rec.score = score.value_or(1.0);
        if (rec.score < 0.0 || rec.score > 1.0)
            throw RowParseError(row_no, "score " + util::format_double(rec.score) +
                                            " outside [0, 1]");
        records.push_back(std::move(rec));
    }
    return records;
}

void write_labels(std::span<const core::LabelRecord> records, std::ostream& out) {
    out << "detect_id,scene_id,detect_scene_row,detect_scene_column,is_vessel,is_fishing,"
           "vessel_length_m,confidence,distance_from_shore_km,source\n";
    for (const auto& r : records) {
        out << util::csv_escape(r.detect_id) << ',' << util::csv_escape(r.scene_id) << ','
            << r.row << ',' << r.col << ',' << opt_bool_str(r.is_vessel) << ','
            << opt_bool_str(r.is_fishing) << ',' << opt_double_str(r.vessel_length_m) << ','
            << core::to_string(r.confidence) << ',' << opt_double_str(r.distance_from_shore_km)
            << ',' << util::csv_escape(r.source) << '\n';
    }
}

void write_predictions(std::span<const core::DetectionRecord> records, std::ostream& out) {
    out << "scene_id,detect_scene_row,detect_scene_column,is_vessel,is_fishing,score\n";
    for (const auto& r : records) {
        out << util::csv_escape(r.scene_id) << ',' << r.row << ',' << r.col << ','
            << bool_str(r.is_vessel) << ',' << bool_str(r.is_fishing) << ','
            << util::format_double(r.score) << '\n';
    }
}

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

}  // namespace

std::vector<core::LabelRecord> load_labels(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_labels(in);
}

std::vector<core::DetectionRecord> load_predictions(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_predictions(in);
}

void save_labels(std::span<const core::LabelRecord> records, const std::filesystem::path& path) {
    auto out = open_output(path);
    write_labels(records, out);
    if (!out) throw IoError("cannot write " + path.string());
}

void save_predictions(std::span<const core::DetectionRecord> records,
                      const std::filesystem::path& path) {
    auto out = open_output(path);
    write_predictions(records, out);
    if (!out) throw IoError("cannot write " + path.string());
}

}  // namespace fadsar::ingest
