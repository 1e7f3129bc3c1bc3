// SPDX-License-Identifier: Apache-2.0
//
// eadf: conventional and enhanced effective aperture distribution function
// characterization of antenna arrays
// Copyright (C) 2026 the eadf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef EADF_TOML_LITE_HPP
#define EADF_TOML_LITE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "eadf/errors.hpp"

// Minimal TOML reader covering the subset used by chamber configuration
// files: bare keys, strings, integers, floats, booleans, homogeneous arrays,
// [table] headers, [[array-of-tables]] headers and # comments. Unsupported
// constructs raise Error with the offending line number.
namespace eadf::toml
{
    struct Value;

    using Array = std::vector<Value>;
    using Table = std::map<std::string, Value>;
    using TableArray = std::vector<Table>;

    struct Value
    {
        std::variant<std::string, std::int64_t, double, bool, Array, Table, TableArray> data;

        bool is_string() const;
        bool is_integer() const;
        bool is_float() const;
        bool is_bool() const;
        bool is_array() const;
        bool is_table() const;
        bool is_table_array() const;

        const std::string &as_string() const;
        std::int64_t as_integer() const;
        double as_float() const; // integers convert implicitly
        bool as_bool() const;
        const Array &as_array() const;
        const Table &as_table() const;
        const TableArray &as_table_array() const;
    };

    Table parse(const std::string &text);
    Table parse_file(const std::string &path);

} // namespace eadf::toml

#endif
