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

#include "eadf/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace eadf::toml
{

    bool Value::is_string() const
    {
        return std::holds_alternative<std::string>(data);
    }
    bool Value::is_integer() const
    {
        return std::holds_alternative<std::int64_t>(data);
    }
    bool Value::is_float() const
    {
        return std::holds_alternative<double>(data);
    }
    bool Value::is_bool() const
    {
        return std::holds_alternative<bool>(data);
    }
    bool Value::is_array() const
    {
        return std::holds_alternative<Array>(data);
    }
    bool Value::is_table() const
    {
        return std::holds_alternative<Table>(data);
    }
    bool Value::is_table_array() const
    {
        return std::holds_alternative<TableArray>(data);
    }

    const std::string &Value::as_string() const
    {
        if (!is_string())
            throw Error("Config value is not a string");
        return std::get<std::string>(data);
    }

    std::int64_t Value::as_integer() const
    {
        if (!is_integer())
            throw Error("Config value is not an integer");
        return std::get<std::int64_t>(data);
    }

    double Value::as_float() const
    {
        if (is_integer())
            return static_cast<double>(std::get<std::int64_t>(data));
        if (!is_float())
            throw Error("Config value is not a number");
        return std::get<double>(data);
    }

    bool Value::as_bool() const
    {
        if (!is_bool())
            throw Error("Config value is not a boolean");
        return std::get<bool>(data);
    }

    const Array &Value::as_array() const
    {
        if (!is_array())
            throw Error("Config value is not an array");
        return std::get<Array>(data);
    }

    const Table &Value::as_table() const
    {
        if (!is_table())
            throw Error("Config value is not a table");
        return std::get<Table>(data);
    }

    const TableArray &Value::as_table_array() const
    {
        if (!is_table_array())
            throw Error("Config value is not an array of tables");
        return std::get<TableArray>(data);
    }

    namespace
    {
        [[noreturn]] void fail(int line, const std::string &msg)
        {
            throw Error("Config line " + std::to_string(line) + ": " + msg);
        }

        std::string trim(const std::string &s)
        {
            std::size_t a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos)
                return "";
            std::size_t b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        }

        // Strip a trailing comment, honoring quoted strings
        std::string strip_comment(const std::string &s)
        {
            bool in_string = false;
            for (std::size_t i = 0; i < s.size(); i++)
            {
                char ch = s[i];
                if (in_string)
                {
                    if (ch == '\\')
                        i++;
                    else if (ch == '"')
                        in_string = false;
                }
                else if (ch == '"')
                    in_string = true;
                else if (ch == '#')
                    return s.substr(0, i);
            }
            return s;
        }

        bool valid_key(const std::string &k)
        {
            if (k.empty())
                return false;
            for (char ch : k)
                if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '-')
                    return false;
            return true;
        }

        std::string parse_quoted(const std::string &tok, int line)
        {
            if (tok.size() < 2 || tok.back() != '"')
                fail(line, "unterminated string");
            std::string out;
            for (std::size_t i = 1; i + 1 < tok.size(); i++)
            {
                char ch = tok[i];
                if (ch == '\\')
                {
                    if (i + 3 > tok.size())
                        fail(line, "dangling escape in string");
                    char esc = tok[++i];
                    switch (esc)
                    {
                    case '"':
                        out += '"';
                        break;
                    case '\\':
                        out += '\\';
                        break;
                    case 'n':
                        out += '\n';
                        break;
                    case 't':
                        out += '\t';
                        break;
                    default:
                        fail(line, std::string("unsupported escape '\\") + esc + "'");
                    }
                }
                else if (ch == '"')
                    fail(line, "unexpected quote inside string");
                else
                    out += ch;
            }
            return out;
        }

        Value parse_scalar_or_array(const std::string &tok, int line);

        Value parse_array(const std::string &tok, int line)
        {
            if (tok.back() != ']')
                fail(line, "unterminated array");

            Array arr;
            std::string inner = tok.substr(1, tok.size() - 2);

            // Split on top-level commas
            std::vector<std::string> parts;
            int depth = 0;
            bool in_string = false;
            std::string cur;
            for (std::size_t i = 0; i < inner.size(); i++)
            {
                char ch = inner[i];
                if (in_string)
                {
                    cur += ch;
                    if (ch == '\\' && i + 1 < inner.size())
                        cur += inner[++i];
                    else if (ch == '"')
                        in_string = false;
                }
                else if (ch == '"')
                {
                    cur += ch;
                    in_string = true;
                }
                else if (ch == '[')
                {
                    depth++;
                    cur += ch;
                }
                else if (ch == ']')
                {
                    depth--;
                    cur += ch;
                }
                else if (ch == ',' && depth == 0)
                {
                    parts.push_back(cur);
                    cur.clear();
                }
                else
                    cur += ch;
            }
            if (!trim(cur).empty())
                parts.push_back(cur);

            for (const std::string &p : parts)
            {
                std::string t = trim(p);
                if (t.empty())
                    fail(line, "empty array entry");
                arr.push_back(parse_scalar_or_array(t, line));
            }

            // Entries must share one type, with integers promoting to floats
            for (std::size_t i = 1; i < arr.size(); i++)
            {
                bool num0 = arr[0].is_float() || arr[0].is_integer();
                bool numi = arr[i].is_float() || arr[i].is_integer();
                if (num0 != numi || (!num0 && arr[i].data.index() != arr[0].data.index()))
                    fail(line, "arrays must be homogeneous");
            }

            return Value{arr};
        }

        Value parse_scalar_or_array(const std::string &tok, int line)
        {
            if (tok.front() == '"')
                return Value{parse_quoted(tok, line)};
            if (tok.front() == '[')
                return parse_array(tok, line);
            if (tok == "true")
                return Value{true};
            if (tok == "false")
                return Value{false};

            bool looks_float = tok.find_first_of(".eE") != std::string::npos &&
                               tok.find_first_not_of("+-0123456789.eE") == std::string::npos;
            if (!looks_float)
            {
                std::int64_t iv = 0;
                auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), iv);
                if (ec == std::errc() && p == tok.data() + tok.size())
                    return Value{iv};
            }

            try
            {
                std::size_t used = 0;
                double dv = std::stod(tok, &used);
                if (used == tok.size())
                    return Value{dv};
            }
            catch (const std::exception &)
            {
            }

            fail(line, "cannot parse value '" + tok + "'");
        }
    } // namespace

    Table parse(const std::string &text)
    {
        Table root;
        Table *current = &root;

        std::istringstream stream(text);
        std::string raw;
        int line_no = 0;

        while (std::getline(stream, raw))
        {
            line_no++;
            std::string line = trim(strip_comment(raw));
            if (line.empty())
                continue;

            if (line.size() >= 4 && line.substr(0, 2) == "[[")
            {
                if (line.substr(line.size() - 2) != "]]")
                    fail(line_no, "malformed table-array header");
                std::string name = trim(line.substr(2, line.size() - 4));
                if (!valid_key(name))
                    fail(line_no, "invalid table name '" + name + "'");

                auto it = root.find(name);
                if (it == root.end())
                    it = root.emplace(name, Value{TableArray{}}).first;
                else if (!it->second.is_table_array())
                    fail(line_no, "'" + name + "' is already defined with another type");

                TableArray &arr = std::get<TableArray>(it->second.data);
                arr.emplace_back();
                current = &arr.back();
                continue;
            }

            if (line.front() == '[')
            {
                if (line.back() != ']')
                    fail(line_no, "malformed table header");
                std::string name = trim(line.substr(1, line.size() - 2));
                if (!valid_key(name))
                    fail(line_no, "invalid table name '" + name + "' (nested tables are not supported)");
                if (root.count(name))
                    fail(line_no, "table '" + name + "' is defined twice");

                auto it = root.emplace(name, Value{Table{}}).first;
                current = &std::get<Table>(it->second.data);
                continue;
            }

            std::size_t eq = std::string::npos;
            {
                bool in_string = false;
                for (std::size_t i = 0; i < line.size(); i++)
                {
                    char ch = line[i];
                    if (in_string)
                    {
                        if (ch == '\\')
                            i++;
                        else if (ch == '"')
                            in_string = false;
                    }
                    else if (ch == '"')
                        in_string = true;
                    else if (ch == '=')
                    {
                        eq = i;
                        break;
                    }
                }
            }
            if (eq == std::string::npos)
                fail(line_no, "expected 'key = value'");

            std::string key = trim(line.substr(0, eq));
            std::string val = trim(line.substr(eq + 1));
            if (!valid_key(key))
                fail(line_no, "invalid key '" + key + "'");
            if (val.empty())
                fail(line_no, "missing value for key '" + key + "'");
            if (current->count(key))
                fail(line_no, "key '" + key + "' is defined twice");

            current->emplace(key, parse_scalar_or_array(val, line_no));
        }

        return root;
    }

    Table parse_file(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw Error("Cannot open config file '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse(buf.str());
    }

} // namespace eadf::toml
