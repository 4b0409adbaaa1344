#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace evstat {

enum class ReportFormat { csv, json };

ReportFormat report_format_from_name(std::string_view name);
std::string_view report_format_name(ReportFormat f);

using Cell = std::variant<double, std::int64_t, std::uint64_t, std::string>;

/// Tabular experiment result: ordered config echo, a fixed column schema,
/// data rows, and scalar summary entries.
///
/// CSV layout: '#'-prefixed comment lines echoing the config, a header
/// row, data rows, then '#'-prefixed summary lines. LF endings. Column
/// names holding LogDim values carry a "log2:" prefix. Wall-clock time is
/// runtime metadata and is never serialized, so equal configurations
/// produce byte-identical files.
struct ExperimentReport {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> summary;
  double wall_seconds = 0.0;

  void add_config(std::string key, std::string value);
  void add_config(std::string key, double value);
  void add_config(std::string key, std::uint64_t value);
  void add_summary(std::string key, std::string value);
  void add_summary(std::string key, double value);

  void write_csv(std::ostream& out) const;
  void write_json(std::ostream& out) const;
  std::string to_string(ReportFormat format) const;

  /// Writes to `path` atomically (temp file in the same directory, then
  /// rename).
  void save(const std::filesystem::path& path, ReportFormat format) const;
};

/// Exact round-trip decimal form of a double ("%.17g", with inf/nan
/// spelled out).
std::string format_double(double v);

}  // namespace evstat
