// Copyright 2026 The fbandit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <stdexcept>

namespace fbandit::cli {

std::string FormatCell(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double v) const {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      return buf;
    }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

void WriteCsv(const Report& report, std::ostream& out) {
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    out << (i ? "," : "") << report.columns[i];
  }
  out << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.values.size(); ++i) {
      out << (i ? "," : "") << FormatCell(row.values[i]);
    }
    out << '\n';
  }
}

void WriteJson(const Report& report, std::ostream& out) {
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.values.size(); ++i) {
      const Cell& cell = row.values[i];
      Json& slot = obj[report.columns[i]];
      if (const auto* d = std::get_if<double>(&cell)) {
        slot = *d;
      } else if (const auto* s = std::get_if<std::int64_t>(&cell)) {
        slot = *s;
      } else if (const auto* u = std::get_if<std::uint64_t>(&cell)) {
        slot = *u;
      } else if (const auto* b = std::get_if<bool>(&cell)) {
        slot = *b;
      } else if (const auto* str = std::get_if<std::string>(&cell)) {
        slot = *str;
      } else {
        slot = nullptr;
      }
    }
    rows.push_back(std::move(obj));
  }
  out << rows.dump(2) << '\n';
}

namespace {

void WriteFile(const std::string& path, const Report& report, bool json) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  if (json) {
    WriteJson(report, out);
  } else {
    WriteCsv(report, out);
  }
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path);
}

std::string JsonSibling(const std::string& path) {
  const std::string suffix = ".csv";
  if (path.size() > suffix.size() &&
      path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return path.substr(0, path.size() - suffix.size()) + ".json";
  }
  return path + ".json";
}

}  // namespace

std::vector<std::string> EmitReport(const Report& report, ReportFormat format,
                                    const std::string& path, bool allow_empty) {
  if (report.rows.empty() && !allow_empty) {
    throw InvalidParameters("refusing to write an empty report");
  }
  std::vector<std::string> written;
  switch (format) {
    case ReportFormat::kCsv:
      WriteFile(path, report, false);
      written.push_back(path);
      break;
    case ReportFormat::kJson:
      WriteFile(path, report, true);
      written.push_back(path);
      break;
    case ReportFormat::kBoth:
      WriteFile(path, report, false);
      WriteFile(JsonSibling(path), report, true);
      written.push_back(path);
      written.push_back(JsonSibling(path));
      break;
  }
  return written;
}

void PrintTable(const Report& report, std::ostream& out, std::size_t max_rows) {
  const std::size_t shown = std::min(max_rows, report.rows.size());
  std::vector<std::size_t> width(report.columns.size());
  std::vector<std::vector<std::string>> text(shown);
  for (std::size_t c = 0; c < report.columns.size(); ++c) {
    width[c] = report.columns[c].size();
  }
  for (std::size_t r = 0; r < shown; ++r) {
    for (std::size_t c = 0; c < report.rows[r].values.size(); ++c) {
      const Cell& cell = report.rows[r].values[c];
      std::string s;
      if (const auto* d = std::get_if<double>(&cell)) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.10g", *d);
        s = buf;
      } else {
        s = FormatCell(cell);
      }
      width[c] = std::max(width[c], s.size());
      text[r].push_back(std::move(s));
    }
  }
  for (std::size_t c = 0; c < report.columns.size(); ++c) {
    out << (c ? "  " : "") << std::setw(static_cast<int>(width[c]))
        << report.columns[c];
  }
  out << '\n';
  for (const auto& row : text) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << row[c];
    }
    out << '\n';
  }
  if (report.rows.size() > shown) {
    out << "... (" << report.rows.size() - shown << " more rows)\n";
  }
}

}  // namespace fbandit::cli
