#include "evstat/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "evstat/errors.hpp"
#include "evstat/version.hpp"

namespace evstat {

ReportFormat report_format_from_name(std::string_view name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  throw config_error("unknown format '" + std::string(name) + "' (expected csv or json)");
}

std::string_view report_format_name(ReportFormat f) {
  return f == ReportFormat::csv ? "csv" : "json";
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ExperimentReport::add_config(std::string key, std::string value) {
  config.emplace_back(std::move(key), std::move(value));
}
void ExperimentReport::add_config(std::string key, double value) {
  config.emplace_back(std::move(key), format_double(value));
}
void ExperimentReport::add_config(std::string key, std::uint64_t value) {
  config.emplace_back(std::move(key), std::to_string(value));
}
void ExperimentReport::add_summary(std::string key, std::string value) {
  summary.emplace_back(std::move(key), std::move(value));
}
void ExperimentReport::add_summary(std::string key, double value) {
  summary.emplace_back(std::move(key), format_double(value));
}

namespace {

std::string cell_to_string(const Cell& c) {
  if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
  if (std::holds_alternative<std::int64_t>(c)) return std::to_string(std::get<std::int64_t>(c));
  if (std::holds_alternative<std::uint64_t>(c)) return std::to_string(std::get<std::uint64_t>(c));
  return std::get<std::string>(c);
}

// RFC 4180 field quoting; applied when the content needs it.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  quoted += '"';
  return quoted;
}

nlohmann::ordered_json cell_to_json(const Cell& c) {
  if (std::holds_alternative<double>(c)) {
    double v = std::get<double>(c);
    if (std::isnan(v) || std::isinf(v)) return format_double(v);  // JSON has no inf/nan
    return v;
  }
  if (std::holds_alternative<std::int64_t>(c)) return std::get<std::int64_t>(c);
  if (std::holds_alternative<std::uint64_t>(c)) return std::get<std::uint64_t>(c);
  return std::get<std::string>(c);
}

}  // namespace

void ExperimentReport::write_csv(std::ostream& out) const {
  out << "# evstat=" << library_version << "\n";
  out << "# experiment=" << experiment << "\n";
  for (const auto& [k, v] : config) out << "# " << k << "=" << v << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out << ',';
    out << csv_field(columns[i]);
  }
  out << "\n";
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      throw std::logic_error("ExperimentReport: row width differs from column schema");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_field(cell_to_string(row[i]));
    }
    out << "\n";
  }
  for (const auto& [k, v] : summary) out << "# " << k << "=" << v << "\n";
}

void ExperimentReport::write_json(std::ostream& out) const {
  nlohmann::ordered_json j;
  j["experiment"] = experiment;
  j["version"] = std::string(library_version);
  nlohmann::ordered_json cfg;
  for (const auto& [k, v] : config) cfg[k] = v;
  j["config"] = std::move(cfg);
  j["columns"] = columns;
  nlohmann::ordered_json data = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      throw std::logic_error("ExperimentReport: row width differs from column schema");
    nlohmann::ordered_json jrow = nlohmann::ordered_json::array();
    for (const Cell& c : row) jrow.push_back(cell_to_json(c));
    data.push_back(std::move(jrow));
  }
  j["rows"] = std::move(data);
  nlohmann::ordered_json sum;
  for (const auto& [k, v] : summary) sum[k] = v;
  j["summary"] = std::move(sum);
  out << j.dump(2) << "\n";
}

std::string ExperimentReport::to_string(ReportFormat format) const {
  std::ostringstream os;
  format == ReportFormat::csv ? write_csv(os) : write_json(os);
  return os.str();
}

void ExperimentReport::save(const std::filesystem::path& path, ReportFormat format) const {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << to_string(format);
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace evstat
