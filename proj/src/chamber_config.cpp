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

#include "eadf/chamber_config.hpp"

#include "eadf/toml_lite.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace eadf
{

    using nlohmann::json;

    static json toml_to_json(const toml::Value &value)
    {
        if (value.is_string())
            return value.as_string();
        if (value.is_integer())
            return value.as_integer();
        if (value.is_float())
            return std::get<double>(value.data);
        if (value.is_bool())
            return value.as_bool();
        if (value.is_array())
        {
            json arr = json::array();
            for (const toml::Value &v : value.as_array())
                arr.push_back(toml_to_json(v));
            return arr;
        }
        if (value.is_table_array())
        {
            json arr = json::array();
            for (const toml::Table &t : value.as_table_array())
                arr.push_back(toml_to_json(toml::Value{t}));
            return arr;
        }

        json obj = json::object();
        for (const auto &[key, v] : value.as_table())
            obj[key] = toml_to_json(v);
        return obj;
    }

    static void expect_keys(const json &obj, const std::set<std::string> &allowed, const std::string &context)
    {
        for (const auto &[key, value] : obj.items())
            if (!allowed.count(key))
                throw Error("Unknown key '" + key + "' in " + context);
    }

    static const json &require(const json &obj, const std::string &key, const std::string &context)
    {
        if (!obj.contains(key))
            throw Error("Missing key '" + key + "' in " + context);
        return obj.at(key);
    }

    static double as_number(const json &v, const std::string &what)
    {
        if (!v.is_number())
            throw Error(what + " must be a number");
        return v.get<double>();
    }

    static std::int64_t as_int(const json &v, const std::string &what)
    {
        if (!v.is_number_integer())
            throw Error(what + " must be an integer");
        return v.get<std::int64_t>();
    }

    static Vec3 as_vec3(const json &v, const std::string &what)
    {
        if (!v.is_array() || v.size() != 3)
            throw Error(what + " must be an array of three numbers");
        return {as_number(v.at(0), what), as_number(v.at(1), what), as_number(v.at(2), what)};
    }

    static ChamberSpec spec_from_json_tree(const json &root)
    {
        expect_keys(root, {"seed", "snr_db", "polarizations", "grid", "sweep", "elements"}, "chamber config");

        ChamberSpec spec;

        if (root.contains("seed"))
            spec.rng_seed = static_cast<std::uint64_t>(as_int(root.at("seed"), "'seed'"));
        if (root.contains("snr_db"))
            spec.snr_db = as_number(root.at("snr_db"), "'snr_db'");

        if (root.contains("polarizations"))
        {
            const json &pols = root.at("polarizations");
            if (!pols.is_array() || pols.empty())
                throw Error("'polarizations' must be a non-empty array of \"H\" / \"V\"");
            spec.polarizations.clear();
            for (const json &p : pols)
            {
                if (!p.is_string())
                    throw Error("'polarizations' entries must be strings");
                spec.polarizations.push_back(polarization_from_string(p.get<std::string>()));
            }
        }

        const json &grid = require(root, "grid", "chamber config");
        expect_keys(grid, {"zenith_half_order", "azimuth_half_order"}, "[grid]");
        std::int64_t m = as_int(require(grid, "zenith_half_order", "[grid]"), "'zenith_half_order'");
        std::int64_t n = as_int(require(grid, "azimuth_half_order", "[grid]"), "'azimuth_half_order'");
        if (m < 2 || n < 2)
            throw Error("Grid half-orders must be at least 2");
        spec.grid = AngularGrid(static_cast<unsigned>(m), static_cast<unsigned>(n));

        const json &sweep = require(root, "sweep", "chamber config");
        if (sweep.contains("frequencies_hz"))
        {
            expect_keys(sweep, {"frequencies_hz"}, "[sweep]");
            const json &freqs = sweep.at("frequencies_hz");
            if (!freqs.is_array() || freqs.empty())
                throw Error("'frequencies_hz' must be a non-empty array");
            for (const json &f : freqs)
                spec.frequencies_hz.push_back(as_number(f, "'frequencies_hz' entry"));
        }
        else
        {
            expect_keys(sweep, {"start_hz", "stop_hz", "points"}, "[sweep]");
            double start = as_number(require(sweep, "start_hz", "[sweep]"), "'start_hz'");
            double stop = as_number(require(sweep, "stop_hz", "[sweep]"), "'stop_hz'");
            std::int64_t points = as_int(require(sweep, "points", "[sweep]"), "'points'");
            if (points < 1)
                throw Error("'points' must be at least 1");
            if (points == 1)
            {
                if (start != stop)
                    throw Error("A single-point sweep requires start_hz == stop_hz");
                spec.frequencies_hz.push_back(start);
            }
            else
            {
                double step = (stop - start) / static_cast<double>(points - 1);
                if (!(step > 0.0))
                    throw Error("'stop_hz' must exceed 'start_hz'");
                for (std::int64_t s = 0; s < points; s++)
                    spec.frequencies_hz.push_back(start + step * static_cast<double>(s));
            }
        }

        const json &elements = require(root, "elements", "chamber config");
        if (!elements.is_array() || elements.empty())
            throw Error("'elements' must be a non-empty array of tables");

        for (std::size_t i = 0; i < elements.size(); i++)
        {
            const json &e = elements.at(i);
            const std::string ctx = "[[elements]] entry " + std::to_string(i);
            if (!e.is_object())
                throw Error(ctx + " must be a table");

            ElementSpec elem;
            std::string kind = require(e, "pattern", ctx).is_string()
                                   ? e.at("pattern").get<std::string>()
                                   : throw Error("'pattern' in " + ctx + " must be a string");

            if (kind == "omni")
            {
                expect_keys(e, {"pattern", "position_m", "delta_tau_ns"}, ctx);
                elem.model = OmniModel{};
            }
            else if (kind == "patch")
            {
                expect_keys(e, {"pattern", "position_m", "delta_tau_ns", "patch_order", "boresight_deg"}, ctx);
                PatchModel patch;
                if (e.contains("patch_order"))
                {
                    std::int64_t q = as_int(e.at("patch_order"), "'patch_order'");
                    if (q < 1)
                        throw Error("'patch_order' must be at least 1");
                    patch.order = static_cast<unsigned>(q);
                }
                if (e.contains("boresight_deg"))
                {
                    const json &b = e.at("boresight_deg");
                    if (!b.is_array() || b.size() != 2)
                        throw Error("'boresight_deg' must be [zenith, azimuth] in degrees");
                    patch.boresight_theta_rad = deg2rad(as_number(b.at(0), "'boresight_deg'"));
                    patch.boresight_phi_rad = deg2rad(as_number(b.at(1), "'boresight_deg'"));
                }
                elem.model = patch;
            }
            else if (kind == "bandlimited")
            {
                expect_keys(e, {"pattern", "position_m", "delta_tau_ns", "max_zenith_order", "max_azimuth_order",
                                "pattern_seed"},
                            ctx);
                BandlimitedModel bl;
                bl.max_zenith_order =
                    static_cast<unsigned>(as_int(require(e, "max_zenith_order", ctx), "'max_zenith_order'"));
                bl.max_azimuth_order =
                    static_cast<unsigned>(as_int(require(e, "max_azimuth_order", ctx), "'max_azimuth_order'"));
                if (e.contains("pattern_seed"))
                    bl.seed = static_cast<std::uint64_t>(as_int(e.at("pattern_seed"), "'pattern_seed'"));
                elem.model = bl;
            }
            else
                throw Error("Unknown pattern kind '" + kind + "' in " + ctx +
                            " (expected 'omni', 'patch' or 'bandlimited')");

            elem.position_m = as_vec3(require(e, "position_m", ctx), "'position_m'");
            if (e.contains("delta_tau_ns"))
                elem.delta_tau_s = as_number(e.at("delta_tau_ns"), "'delta_tau_ns'") * 1e-9;

            spec.elements.push_back(elem);
        }

        spec.check();
        return spec;
    }

    ChamberSpec chamber_spec_from_toml(const std::string &text)
    {
        return spec_from_json_tree(toml_to_json(toml::Value{toml::parse(text)}));
    }

    ChamberSpec chamber_spec_from_json(const std::string &text)
    {
        json root;
        try
        {
            root = json::parse(text);
        }
        catch (const json::exception &e)
        {
            throw Error(std::string("Cannot parse JSON config: ") + e.what());
        }
        return spec_from_json_tree(root);
    }

    ChamberSpec read_chamber_spec(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw Error("Cannot open config file '" + path.string() + "'");
        std::ostringstream buf;
        buf << in.rdbuf();

        std::string ext = path.extension().string();
        if (ext == ".toml")
            return chamber_spec_from_toml(buf.str());
        if (ext == ".json")
            return chamber_spec_from_json(buf.str());
        throw Error("Unsupported config extension '" + ext + "', expected .toml or .json");
    }

} // namespace eadf
