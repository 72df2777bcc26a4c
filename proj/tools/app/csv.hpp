#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fracbvp::cli {

/// Shortest decimal string that parses back to exactly `x`.
std::string format_number(double x);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

struct CsvTable {
  std::vector<std::string> comments;  // '#' lines without the marker
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Column by header name; throws ConfigError when missing.
  std::vector<double> column(std::string_view name) const;
};

/// Numeric CSV with optional leading '#' lines and a header row. Throws ConfigError.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace fracbvp::cli
