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

#ifndef FBANDIT_CLI_REPORT_HPP_
#define FBANDIT_CLI_REPORT_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "cli/config.hpp"

namespace fbandit::cli {

// Cell of a report: empty cells are written as "" in CSV and null in JSON.
using Cell = std::variant<std::monostate, double, std::int64_t, std::uint64_t,
                          bool, std::string>;

// One grid cell of a report; values line up with the report's columns.
struct ReportRow {
  std::vector<Cell> values;
};

struct Report {
  std::vector<std::string> columns;
  std::vector<ReportRow> rows;
};

// Doubles use 17 significant digits (%.17g).
std::string FormatCell(const Cell& cell);

void WriteCsv(const Report& report, std::ostream& out);
void WriteJson(const Report& report, std::ostream& out);

// Writes the report to `path` in `format`. For kBoth the CSV goes to `path`
// and the JSON to `path` with its ".csv" suffix replaced by ".json" (or
// ".json" appended). Throws std::runtime_error on I/O failure and
// InvalidParameters for an empty report unless `allow_empty`.
std::vector<std::string> EmitReport(const Report& report, ReportFormat format,
                                    const std::string& path,
                                    bool allow_empty = false);

// Human-readable aligned table with at most `max_rows` rows.
void PrintTable(const Report& report, std::ostream& out,
                std::size_t max_rows = 40);

}  // namespace fbandit::cli

#endif  // FBANDIT_CLI_REPORT_HPP_
