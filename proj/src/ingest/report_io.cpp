#include "fadsar/ingest/report_io.hpp"

#include <fstream>
#include <ostream>

#include <json.hpp>

#include "fadsar/errors.hpp"

namespace fadsar::ingest {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json counts_to_json(const core::MetricCounts& c) {
    return ordered_json{{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}};
}

core::MetricCounts counts_from_json(const ordered_json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("tp") || !j.contains("fp") || !j.contains("fn"))
        throw SchemaError("report: malformed counts under " + where);
    core::MetricCounts c;
    c.tp = j["tp"].get<long long>();
    c.fp = j["fp"].get<long long>();
    c.fn = j["fn"].get<long long>();
    return c;
}

ordered_json summary_to_json(const core::ScoreSummary& s) {
    ordered_json j;
    j["f1_d"] = s.f1_d;
    j["f1_s"] = s.f1_s;
    j["f1_v"] = s.f1_v;
    j["f1_f"] = s.f1_f;
    j["avg_f1"] = s.avg_f1;
    j["f1_s_computable"] = s.f1_s_computable;
    j["counts"] = ordered_json{{"detection", counts_to_json(s.detection)},
                               {"shore", counts_to_json(s.shore)},
                               {"vessel", counts_to_json(s.vessel)},
                               {"fishing", counts_to_json(s.fishing)},
                               {"shore_unknown_fp", s.shore_unknown_fp}};
    return j;
}

void summary_from_json(const ordered_json& j, const std::string& where, core::ScoreSummary& s) {
    for (const char* key : {"f1_d", "f1_s", "f1_v", "f1_f", "avg_f1", "counts"})
        if (!j.contains(key)) throw SchemaError("report: missing '" + std::string(key) + "' under " + where);
    s.f1_d = j["f1_d"].get<double>();
    s.f1_s = j["f1_s"].get<double>();
    s.f1_v = j["f1_v"].get<double>();
    s.f1_f = j["f1_f"].get<double>();
    s.avg_f1 = j["avg_f1"].get<double>();
    s.f1_s_computable = j.value("f1_s_computable", true);
    const auto& counts = j["counts"];
    s.detection = counts_from_json(counts["detection"], where);
    s.shore = counts_from_json(counts["shore"], where);
    s.vessel = counts_from_json(counts["vessel"], where);
    s.fishing = counts_from_json(counts["fishing"], where);
    s.shore_unknown_fp = counts.value("shore_unknown_fp", 0LL);
}

}  // namespace

void write_report(const core::MetricsReport& report, std::ostream& out) {
    ordered_json doc = summary_to_json(report);
    ordered_json per_scene = ordered_json::object();
    for (const auto& [scene_id, summary] : report.per_scene)
        per_scene[scene_id] = summary_to_json(summary);
    doc["per_scene"] = std::move(per_scene);
    out << doc.dump(2) << '\n';
}

void save_report(const core::MetricsReport& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write report " + path.string());
    write_report(report, out);
    if (!out) throw IoError("cannot write report " + path.string());
}

core::MetricsReport load_report(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open report " + path.string());
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const ordered_json::parse_error& e) {
        throw SchemaError("report " + path.string() + ": " + e.what());
    }

    core::MetricsReport report;
    summary_from_json(doc, "root", report);
    if (doc.contains("per_scene")) {
        for (const auto& [scene_id, j] : doc["per_scene"].items()) {
            core::ScoreSummary s;
            summary_from_json(j, scene_id, s);
            report.per_scene[scene_id] = s;
        }
    }
    return report;
}

}  // namespace fadsar::ingest
