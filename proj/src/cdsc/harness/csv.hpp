// Copyright 2026 The cdsc Authors
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

#pragma once

#include <string>
#include <vector>

namespace cdsc {

inline constexpr int kCsvSchemaVersion = 1;

/// Header plus rows. The writer prepends a schema_version column; fields
/// containing commas or quotes are quoted.
class CsvTable {
   public:
    CsvTable() = default;
    explicit CsvTable(std::vector<std::string> columns);

    void add_row(std::vector<std::string> cells);
    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }
    /// Column index, or throws std::out_of_range.
    size_t column(const std::string& name) const;
    bool has_column(const std::string& name) const;

    std::string str() const;
    /// "-" writes to stdout.
    void write(const std::string& path) const;

    /// Reads a table written by str(). An empty text gives an empty table.
    static CsvTable parse(const std::string& text);
    static CsvTable read(const std::string& path);

   private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

/// %.12g, with inf / -inf / nan spelled out.
std::string csv_double(double v);
double csv_to_double(const std::string& cell);

}  // namespace cdsc
