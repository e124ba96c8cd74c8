// Copyright 2026 The qvlbi Authors
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

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace qvlbi::cli {

using Json = nlohmann::ordered_json;

/// Significant digits used for every serialized floating-point number.
inline constexpr int kSignificantDigits = 12;

/// Decimal text of `v` with kSignificantDigits significant digits; "inf",
/// "-inf" and "nan" for non-finite values.
std::string format_number(double v);

/// `v` rounded to kSignificantDigits significant digits as a JSON number, or
/// null when not finite.
Json json_number(double v);

using Cell = std::variant<double, std::int64_t, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
    std::string to_csv() const;
    /// Array of objects keyed by column name.
    Json to_json() const;
};

/// Pretty-printed JSON document with a trailing newline.
std::string dump(const Json& doc);

}  // namespace qvlbi::cli
