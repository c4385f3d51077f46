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

#include "cdsc/harness/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cdsc/error.hpp"

namespace cdsc {

namespace {

std::string quote(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(std::move(cur));
    return cells;
}

}  // namespace

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns_.size()) {
        throw std::invalid_argument("CsvTable::add_row: " + std::to_string(cells.size()) + " cells for " +
                                    std::to_string(columns_.size()) + " columns");
    }
    rows_.push_back(std::move(cells));
}

size_t CsvTable::column(const std::string& name) const {
    for (size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i] == name) return i;
    }
    throw std::out_of_range("CSV has no column '" + name + "'");
}

bool CsvTable::has_column(const std::string& name) const {
    for (const auto& c : columns_) {
        if (c == name) return true;
    }
    return false;
}

std::string CsvTable::str() const {
    std::string out = "schema_version";
    for (const auto& c : columns_) out += "," + quote(c);
    out += '\n';
    const std::string version = std::to_string(kCsvSchemaVersion);
    for (const auto& row : rows_) {
        out += version;
        for (const auto& c : row) out += "," + quote(c);
        out += '\n';
    }
    return out;
}

void CsvTable::write(const std::string& path) const {
    if (path == "-") {
        std::cout << str() << std::flush;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open '" + path + "' for writing");
    f << str();
    if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

CsvTable CsvTable::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    CsvTable t;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_line(line);
        if (cells.empty() || (header && cells[0] != "schema_version")) {
            throw ConfigError("CSV does not start with a schema_version column");
        }
        if (!header && cells[0] != std::to_string(kCsvSchemaVersion)) {
            throw ConfigError("unsupported CSV schema version " + cells[0]);
        }
        cells.erase(cells.begin());
        if (header) {
            t.columns_ = std::move(cells);
            header = false;
        } else {
            if (cells.size() != t.columns_.size()) throw ConfigError("CSV row has the wrong number of fields");
            t.rows_.push_back(std::move(cells));
        }
    }
    return t;
}

CsvTable CsvTable::read(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open CSV '" + path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    return parse(buf.str());
}

std::string csv_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

double csv_to_double(const std::string& cell) {
    if (cell == "inf") return std::numeric_limits<double>::infinity();
    if (cell == "-inf") return -std::numeric_limits<double>::infinity();
    if (cell == "nan" || cell.empty()) return std::numeric_limits<double>::quiet_NaN();
    try {
        size_t used = 0;
        double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("not a number in CSV: '" + cell + "'");
    }
}

}  // namespace cdsc
