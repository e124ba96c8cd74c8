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

#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qvlbi::cli {

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, v);
    return buf;
}

Json json_number(double v) {
    if (!std::isfinite(v)) {
        return nullptr;
    }
    return std::stod(format_number(v));
}

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("row width does not match the table header");
    }
    rows.push_back(std::move(row));
}

namespace {

std::string csv_field(const Cell& c) {
    struct Visitor {
        std::string operator()(double v) const { return format_number(v); }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const std::string& s) const {
            if (s.find_first_of(",\"\n") == std::string::npos) {
                return s;
            }
            std::string quoted = "\"";
            for (const char ch : s) {
                if (ch == '"') {
                    quoted += '"';
                }
                quoted += ch;
            }
            return quoted + "\"";
        }
    };
    return std::visit(Visitor{}, c);
}

Json json_field(const Cell& c) {
    struct Visitor {
        Json operator()(double v) const { return json_number(v); }
        Json operator()(std::int64_t v) const { return v; }
        Json operator()(bool v) const { return v; }
        Json operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, c);
}

}  // namespace

std::string Table::to_csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        os << (i ? "," : "") << columns[i];
    }
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << csv_field(row[i]);
        }
        os << '\n';
    }
    return os.str();
}

Json Table::to_json() const {
    auto arr = Json::array();
    for (const auto& row : rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            obj[columns[i]] = json_field(row[i]);
        }
        arr.push_back(std::move(obj));
    }
    return arr;
}

std::string dump(const Json& doc) {
    return doc.dump(2) + "\n";
}

}  // namespace qvlbi::cli
