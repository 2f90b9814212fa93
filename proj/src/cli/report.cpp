#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "phaselab/phase_dynamics.hpp"

namespace phaselab::cli {
namespace {

double rounded(double value, const FormatOptions& options) {
  if (options.significant_digits == 0) return value;
  return dynamics::round_significant(value, options.significant_digits);
}

std::string cell_text(const Cell& cell, const FormatOptions& options) {
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d, options);
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  return std::get<std::string>(cell);
}

nlohmann::json cell_json(const Cell& cell, const FormatOptions& options) {
  if (const auto* d = std::get_if<double>(&cell)) return rounded(*d, options);
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
  return std::get<std::string>(cell);
}

void round_floats(nlohmann::json& node, const FormatOptions& options) {
  if (node.is_number_float()) {
    node = rounded(node.get<double>(), options);
  } else if (node.is_structured()) {
    for (auto& child : node) round_floats(child, options);
  }
}

std::string summary_text(const nlohmann::json& value, const FormatOptions& options) {
  if (value.is_number_float()) return format_number(value.get<double>(), options);
  if (value.is_string()) return value.get<std::string>();
  return value.dump();
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_number(double value, const FormatOptions& options) {
  char buf[40];
  const int digits = options.significant_digits == 0 ? 17 : options.significant_digits;
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_table(const Report& report, std::ostream& out, const FormatOptions& options) {
  out << "# " << report.command << '\n';
  for (const auto& [key, value] : report.summary.items()) {
    out << "# " << key << ": " << summary_text(value, options) << '\n';
  }
  if (report.columns.empty()) return;

  std::vector<std::vector<std::string>> text;
  std::vector<std::size_t> width(report.columns.size());
  for (std::size_t c = 0; c < report.columns.size(); ++c) width[c] = report.columns[c].size();
  for (const auto& row : report.rows) {
    auto& line = text.emplace_back();
    for (std::size_t c = 0; c < row.size(); ++c) {
      line.push_back(cell_text(row[c], options));
      width[c] = std::max(width[c], line.back().size());
    }
  }
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c) out << "  ";
      out << std::string(width[c] - line[c].size(), ' ') << line[c];
    }
    out << '\n';
  };
  emit(report.columns);
  for (const auto& line : text) emit(line);
}

void write_csv(const Report& report, std::ostream& out, const FormatOptions& options) {
  for (std::size_t c = 0; c < report.columns.size(); ++c) {
    out << (c ? "," : "") << csv_field(report.columns[c]);
  }
  out << "\r\n";
  for (const auto& row : report.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "," : "") << csv_field(cell_text(row[c], options));
    }
    out << "\r\n";
  }
}

void write_json(const Report& report, std::ostream& out, const FormatOptions& options) {
  nlohmann::json doc;
  doc["command"] = report.command;
  doc["summary"] = report.summary;
  round_floats(doc["summary"], options);
  doc["columns"] = report.columns;
  auto& rows = doc["rows"] = nlohmann::json::array();
  for (const auto& row : report.rows) {
    auto& line = rows.emplace_back(nlohmann::json::array());
    for (const auto& cell : row) line.push_back(cell_json(cell, options));
  }
  out << doc.dump(2) << '\n';
}

void write_svg(const Report& report, std::ostream& out) {
  constexpr double kWidth = 720, kHeight = 440;
  constexpr double kLeft = 64, kRight = 170, kTop = 40, kBottom = 50;
  constexpr double kPlotW = kWidth - kLeft - kRight, kPlotH = kHeight - kTop - kBottom;
  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

  std::size_t longest = 1;
  for (const auto& s : report.series) longest = std::max(longest, s.values.size());
  const double x_max = static_cast<double>(std::max<std::size_t>(longest - 1, 1));
  auto px = [&](double x) { return kLeft + kPlotW * x / x_max; };
  auto py = [&](double y) { return kTop + kPlotH * (1.0 - std::clamp(y, 0.0, 1.0)); };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kLeft << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">"
      << xml_escape(report.chart_title) << "</text>\n";

  // axes and ticks
  out << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + kPlotH << "\" x2=\"" << kLeft + kPlotW
      << "\" y2=\"" << kTop + kPlotH << "\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + kPlotH << "\"/>\n</g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double y = i / 4.0;
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\">" << y
        << "</text>\n";
  }
  const std::size_t x_step = std::max<std::size_t>(1, (longest - 1 + 9) / 10);
  for (std::size_t m = 0; m < longest; m += x_step) {
    out << "<text x=\"" << px(static_cast<double>(m)) << "\" y=\"" << kTop + kPlotH + 16
        << "\" text-anchor=\"middle\">" << m << "</text>\n";
  }
  out << "<text x=\"" << kLeft + kPlotW / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\">iteration m</text>\n"
      << "<text x=\"16\" y=\"" << kTop + kPlotH / 2 << "\" transform=\"rotate(-90 16 "
      << kTop + kPlotH / 2 << ")\" text-anchor=\"middle\">failure probability</text>\n</g>\n";

  for (std::size_t i = 0; i < report.series.size(); ++i) {
    const auto& s = report.series[i];
    const char* colour = kPalette[i % std::size(kPalette)];
    std::ostringstream points;
    for (std::size_t m = 0; m < s.values.size(); ++m) {
      points << (m ? " " : "") << px(static_cast<double>(m)) << ',' << py(s.values[m]);
    }
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\""
        << points.str() << "\"/>\n";
    const double ly = kTop + 16.0 * static_cast<double>(i) + 8;
    out << "<line x1=\"" << kLeft + kPlotW + 12 << "\" y1=\"" << ly << "\" x2=\""
        << kLeft + kPlotW + 32 << "\" y2=\"" << ly << "\" stroke=\"" << colour
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << kLeft + kPlotW + 38 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(s.label)
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace phaselab::cli
