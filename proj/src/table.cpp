/**
 * Copyright 2026 The wstar authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "wstar/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "wstar/errors.hpp"

namespace wstar {

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::domain_error("row width does not match column count");
    }
    rows.push_back(std::move(row));
}

std::string format_number(double v) {
    if (v == 0.0) return "0";
    if (!std::isfinite(v)) {
        throw std::domain_error("refusing to emit a non-finite value");
    }
    char buf[48];
    if (std::abs(v) < 1e-4) {
        std::snprintf(buf, sizeof buf, "%.16e", v);
    } else {
        std::snprintf(buf, sizeof buf, "%.17g", v);
    }
    return buf;
}

namespace {

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string json_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += "\"";
    return out;
}

std::string cell_csv(const Table::Cell& c) {
    if (std::holds_alternative<double>(c)) return format_number(std::get<double>(c));
    return csv_quote(std::get<std::string>(c));
}

std::string cell_json(const Table::Cell& c) {
    if (std::holds_alternative<double>(c)) return format_number(std::get<double>(c));
    return json_quote(std::get<std::string>(c));
}

} // namespace

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ",";
        out += csv_quote(table.columns[i]);
    }
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += cell_csv(row[i]);
        }
        out += "\n";
    }
    return out;
}

std::string to_json(const Table& table) {
    std::string out = "[";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out += r ? ",\n " : "\n ";
        out += "{";
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            if (i) out += ", ";
            out += json_quote(table.columns[i]);
            out += ": ";
            out += cell_json(table.rows[r][i]);
        }
        out += "}";
    }
    out += "\n]\n";
    return out;
}

void write_table(const Table& table, const std::string& format, const std::string& path) {
    std::string payload;
    if (format == "csv") {
        payload = to_csv(table);
    } else if (format == "json") {
        payload = to_json(table);
    } else {
        throw usage_error("unknown output format '" + format + "' (expected csv or json)");
    }
    if (path == "-") {
        std::cout << payload;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw io_error("cannot open '" + path + "' for writing");
    }
    f << payload;
    f.flush();
    if (!f) {
        throw io_error("write failed for '" + path + "'");
    }
}

} // namespace wstar
