#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace phaselab::cli {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Series {
  std::string label;
  std::vector<double> values;  ///< y at x = 0, 1, 2, ...
};

/// Everything a command produces, independent of output format.
struct Report {
  std::string command;
  nlohmann::json summary = nlohmann::json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<Series> series;  ///< chart data; empty when SVG is unsupported
  std::string chart_title;
};

struct FormatOptions {
  /// 0 = 17 significant digits (round-trip), otherwise rounds to this many.
  int significant_digits = 0;
};

std::string format_number(double value, const FormatOptions& options);

void write_table(const Report& report, std::ostream& out, const FormatOptions& options);
void write_csv(const Report& report, std::ostream& out, const FormatOptions& options);
void write_json(const Report& report, std::ostream& out, const FormatOptions& options);
/// Self-contained SVG 1.1 line chart of report.series.
void write_svg(const Report& report, std::ostream& out);

/// RFC 4180 quoting of one field.
std::string csv_field(const std::string& text);

}  // namespace phaselab::cli
