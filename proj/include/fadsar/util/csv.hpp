#pragma once

#include <istream>
#include <map>
#include <string>
#include <vector>

namespace fadsar::util {

/// Splits one CSV line. Handles double-quoted fields with embedded commas and
/// doubled quotes; trailing CR is stripped.
std::vector<std::string> split_csv_line(const std::string& line);

/// Quotes a field only when it needs it.
std::string csv_escape(const std::string& field);

/// A parsed CSV file: header names (first row) plus data rows.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index by name, -1 when absent.
    int column(const std::string& name) const;
};

/// Reads the whole stream. A UTF-8 BOM before the header is skipped; fully
/// empty input yields an empty header.
CsvTable read_csv(std::istream& in);

}  // namespace fadsar::util
