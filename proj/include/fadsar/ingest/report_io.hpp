#pragma once

#include <filesystem>
#include <iosfwd>

#include "fadsar/core/types.hpp"

namespace fadsar::ingest {

// report.json: the five F1 fields at full precision, count breakdowns per
// metric, and a per-scene section, all with a stable key order.
void write_report(const core::MetricsReport& report, std::ostream& out);
void save_report(const core::MetricsReport& report, const std::filesystem::path& path);

core::MetricsReport load_report(const std::filesystem::path& path);

}  // namespace fadsar::ingest
