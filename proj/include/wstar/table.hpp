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

#pragma once

#include <string>
#include <variant>
#include <vector>

namespace wstar {

/// Rectangular sweep output: named columns, rows of numbers or labels.
struct Table {
    using Cell = std::variant<double, std::string>;

    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

/**
 * Deterministic number formatting shared by every emitter: plain '%.17g'
 * except scientific notation for 0 < |x| < 1e-4.  Printed values re-read to
 * the exact double.
 */
std::string format_number(double v);

/// CSV with a header row and RFC 4180 quoting.
std::string to_csv(const Table& table);
/// JSON array of row objects; every row carries the same keys.
std::string to_json(const Table& table);

/// format is "csv" or "json"; path "-" writes to stdout.
void write_table(const Table& table, const std::string& format, const std::string& path);

} // namespace wstar
