#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ancillary/harness.hpp"

namespace ancillary {

enum class ReportFormat { csv, markdown };

inline ReportFormat parse_report_format(std::string_view s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "markdown") return ReportFormat::markdown;
  throw std::invalid_argument("format must be 'csv' or 'markdown'");
}

inline std::string format_rate(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

/// Design label without the table prefix, e.g. "D13".
inline std::string short_design_label(const DesignId& d) {
  const auto full = d.label();
  return full.substr(full.find(':') + 1);
}

/// Columns: Design, Test, then PowA_n<k>, Pow_n<k> per sample size.
inline std::string render_table(const TableReport& report, ReportFormat format) {
  std::vector<std::string> header{"Design", "Test"};
  for (std::size_t n : report.sample_sizes) {
    header.push_back("PowA_n" + std::to_string(n));
    header.push_back("Pow_n" + std::to_string(n));
  }
  std::vector<std::vector<std::string>> body;
  for (const auto& row : report.rows) {
    std::vector<std::string> line{short_design_label(row.design), std::string(test_label(row.test))};
    for (const auto& c : row.cells) {
      line.push_back(format_rate(c.powa));
      line.push_back(format_rate(c.pow));
    }
    body.push_back(std::move(line));
  }

  std::string out;
  auto emit = [&](const std::vector<std::string>& cells) {
    if (format == ReportFormat::csv) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
      }
    } else {
      out += '|';
      for (const auto& c : cells) out += ' ' + c + " |";
    }
    out += '\n';
  };
  emit(header);
  if (format == ReportFormat::markdown) {
    std::vector<std::string> rule(header.size(), "---");
    emit(rule);
  }
  for (const auto& line : body) emit(line);
  return out;
}

}  // namespace ancillary
