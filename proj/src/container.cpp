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

#include "eadf/container.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace eadf
{

    using nlohmann::json;

    static void require_little_endian()
    {
        static_assert(sizeof(double) == 8, "containers assume 8-byte doubles");
        if constexpr (std::endian::native != std::endian::little)
            throw Error("Pattern containers require a little-endian host");
    }

    static std::filesystem::path temp_name(const std::filesystem::path &final_path)
    {
        return final_path.string() + ".tmp";
    }

    // Serialize a JSON document to its final location via a temporary file
    static void write_json_atomic(const json &doc, const std::filesystem::path &path)
    {
        std::filesystem::path tmp = temp_name(path);
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw Error("Cannot open '" + tmp.string() + "' for writing");
            out << doc.dump(2) << "\n";
            if (!out)
                throw Error("Write to '" + tmp.string() + "' failed");
        }
        std::filesystem::rename(tmp, path);
    }

    static void write_text_atomic(const std::string &text, const std::filesystem::path &path)
    {
        std::filesystem::path tmp = temp_name(path);
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw Error("Cannot open '" + tmp.string() + "' for writing");
            out << text;
            if (!out)
                throw Error("Write to '" + tmp.string() + "' failed");
        }
        std::filesystem::rename(tmp, path);
    }

    static json load_json(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw Error("Cannot open '" + path.string() + "'");
        json doc;
        try
        {
            in >> doc;
        }
        catch (const json::exception &e)
        {
            throw Error("Cannot parse '" + path.string() + "': " + e.what());
        }
        return doc;
    }

    static json grid_to_json(const AngularGrid &grid)
    {
        return json{{"zenith_half_order", grid.m()}, {"azimuth_half_order", grid.n()}};
    }

    static AngularGrid grid_from_json(const json &j)
    {
        if (!j.is_object() || !j.contains("zenith_half_order") || !j.contains("azimuth_half_order"))
            throw Error("Malformed grid description in manifest");
        return AngularGrid(j.at("zenith_half_order").get<unsigned>(), j.at("azimuth_half_order").get<unsigned>());
    }

    static const char *pattern_layout_string =
        "element-major, then frequency, then polarization; each pattern zenith row-major over azimuth; "
        "float64 little-endian interleaved re/im";

    // ------------------------- pattern set writer -------------------------

    struct PatternSetWriter::Impl
    {
        std::filesystem::path manifest_path;
        std::filesystem::path data_path;
        std::filesystem::path tmp_data_path;
        AngularGrid grid{2, 2};
        std::vector<double> frequencies;
        std::vector<int> elements;
        std::vector<Polarization> polarizations;
        std::fstream file;
        std::vector<char> written;
        bool finalized = false;

        std::size_t block_doubles() const
        {
            return static_cast<std::size_t>(grid.n_zenith()) * grid.n_azimuth() * 2;
        }

        std::size_t slot(std::size_t e_idx, std::size_t s, std::size_t p) const
        {
            return (e_idx * frequencies.size() + s) * polarizations.size() + p;
        }
    };

    PatternSetWriter::PatternSetWriter(const std::filesystem::path &manifest_path, const AngularGrid &grid,
                                       std::vector<double> frequencies_hz, std::vector<int> element_ids,
                                       std::vector<Polarization> polarizations)
        : m_impl(std::make_unique<Impl>())
    {
        require_little_endian();

        // Reuse the set constructor's argument validation
        PatternSet probe(grid, frequencies_hz, element_ids, polarizations);
        (void)probe;

        m_impl->manifest_path = manifest_path;
        m_impl->data_path = manifest_path;
        m_impl->data_path.replace_extension(".bin");
        if (m_impl->data_path == manifest_path)
            throw Error("Manifest path must not carry a .bin extension");
        m_impl->tmp_data_path = temp_name(m_impl->data_path);

        m_impl->grid = grid;
        m_impl->frequencies = std::move(frequencies_hz);
        m_impl->elements = std::move(element_ids);
        m_impl->polarizations = std::move(polarizations);
        m_impl->written.assign(m_impl->elements.size() * m_impl->frequencies.size() * m_impl->polarizations.size(), 0);

        m_impl->file.open(m_impl->tmp_data_path, std::ios::binary | std::ios::out | std::ios::trunc);
        if (!m_impl->file)
            throw Error("Cannot open '" + m_impl->tmp_data_path.string() + "' for writing");
    }

    PatternSetWriter::~PatternSetWriter()
    {
        if (m_impl && !m_impl->finalized)
        {
            m_impl->file.close();
            std::error_code ec;
            std::filesystem::remove(m_impl->tmp_data_path, ec);
        }
    }

    void PatternSetWriter::append(const RadiationPattern &pattern, std::size_t freq_index)
    {
        Impl &impl = *m_impl;
        if (impl.finalized)
            throw Error("Writer is already finalized");

        pattern.check();
        if (!(pattern.grid == impl.grid))
            throw Error("Pattern grid does not match the container grid");
        if (freq_index >= impl.frequencies.size())
            throw Error("Frequency index out of range");

        auto e_it = std::find(impl.elements.begin(), impl.elements.end(), pattern.element_id);
        if (e_it == impl.elements.end())
            throw Error("Element id " + std::to_string(pattern.element_id) + " is not declared in the container");
        auto p_it = std::find(impl.polarizations.begin(), impl.polarizations.end(), pattern.polarization);
        if (p_it == impl.polarizations.end())
            throw Error("Polarization " + to_string(pattern.polarization) + " is not declared in the container");

        std::size_t slot = impl.slot(e_it - impl.elements.begin(), freq_index, p_it - impl.polarizations.begin());
        if (impl.written[slot])
            throw Error("Slot written twice (element " + std::to_string(pattern.element_id) + ", frequency index " +
                        std::to_string(freq_index) + ", polarization " + to_string(pattern.polarization) + ")");

        std::vector<double> buffer;
        buffer.reserve(impl.block_doubles());
        for (unsigned r = 0; r < pattern.data.n_rows; r++)
            for (unsigned c = 0; c < pattern.data.n_cols; c++)
            {
                buffer.push_back(pattern.data(r, c).real());
                buffer.push_back(pattern.data(r, c).imag());
            }

        impl.file.seekp(static_cast<std::streamoff>(slot * impl.block_doubles() * sizeof(double)));
        impl.file.write(reinterpret_cast<const char *>(buffer.data()),
                        static_cast<std::streamsize>(buffer.size() * sizeof(double)));
        if (!impl.file)
            throw Error("Write to '" + impl.tmp_data_path.string() + "' failed");

        impl.written[slot] = 1;
    }

    void PatternSetWriter::finalize()
    {
        Impl &impl = *m_impl;
        if (impl.finalized)
            throw Error("Writer is already finalized");

        for (std::size_t i = 0; i < impl.written.size(); i++)
            if (!impl.written[i])
                throw Error("Container is incomplete: " +
                            std::to_string(std::count(impl.written.begin(), impl.written.end(), 0)) +
                            " slot(s) were never appended");

        impl.file.flush();
        if (!impl.file)
            throw Error("Flush of '" + impl.tmp_data_path.string() + "' failed");
        impl.file.close();

        json pols = json::array();
        for (Polarization p : impl.polarizations)
            pols.push_back(to_string(p));

        json manifest{{"format", "eadf-pattern-set"},
                      {"version", 1},
                      {"data_file", impl.data_path.filename().string()},
                      {"grid", grid_to_json(impl.grid)},
                      {"frequencies_hz", impl.frequencies},
                      {"element_ids", impl.elements},
                      {"polarizations", pols},
                      {"layout", pattern_layout_string}};

        std::filesystem::rename(impl.tmp_data_path, impl.data_path);
        write_json_atomic(manifest, impl.manifest_path);
        impl.finalized = true;
    }

    // ------------------------- pattern set reader -------------------------

    struct PatternSetReader::Impl
    {
        std::filesystem::path data_path;
        AngularGrid grid{2, 2};
        std::vector<double> frequencies;
        std::vector<int> elements;
        std::vector<Polarization> polarizations;
        mutable std::ifstream file;

        std::size_t block_doubles() const
        {
            return static_cast<std::size_t>(grid.n_zenith()) * grid.n_azimuth() * 2;
        }
    };

    PatternSetReader::PatternSetReader(const std::filesystem::path &manifest_path) : m_impl(std::make_unique<Impl>())
    {
        require_little_endian();

        json manifest = load_json(manifest_path);
        if (manifest.value("format", "") != "eadf-pattern-set")
            throw Error("'" + manifest_path.string() + "' is not a pattern-set manifest");
        if (manifest.value("version", 0) != 1)
            throw Error("Unsupported pattern-set version");

        Impl &impl = *m_impl;
        impl.grid = grid_from_json(manifest.at("grid"));
        impl.frequencies = manifest.at("frequencies_hz").get<std::vector<double>>();
        impl.elements = manifest.at("element_ids").get<std::vector<int>>();
        for (const json &p : manifest.at("polarizations"))
            impl.polarizations.push_back(polarization_from_string(p.get<std::string>()));

        impl.data_path = manifest_path.parent_path() / manifest.at("data_file").get<std::string>();
        impl.file.open(impl.data_path, std::ios::binary);
        if (!impl.file)
            throw Error("Cannot open '" + impl.data_path.string() + "'");

        std::uintmax_t expected = static_cast<std::uintmax_t>(impl.block_doubles()) * sizeof(double) *
                                  impl.elements.size() * impl.frequencies.size() * impl.polarizations.size();
        if (std::filesystem::file_size(impl.data_path) != expected)
            throw Error("Data file '" + impl.data_path.string() + "' has unexpected size, expected " +
                        std::to_string(expected) + " bytes");
    }

    PatternSetReader::~PatternSetReader() = default;

    const AngularGrid &PatternSetReader::grid() const
    {
        return m_impl->grid;
    }
    const std::vector<double> &PatternSetReader::frequencies_hz() const
    {
        return m_impl->frequencies;
    }
    const std::vector<int> &PatternSetReader::element_ids() const
    {
        return m_impl->elements;
    }
    const std::vector<Polarization> &PatternSetReader::polarizations() const
    {
        return m_impl->polarizations;
    }

    RadiationPattern PatternSetReader::read(int element_id, std::size_t freq_index, Polarization pol) const
    {
        const Impl &impl = *m_impl;

        auto e_it = std::find(impl.elements.begin(), impl.elements.end(), element_id);
        if (e_it == impl.elements.end())
            throw Error("Element id " + std::to_string(element_id) + " is not part of the container");
        auto p_it = std::find(impl.polarizations.begin(), impl.polarizations.end(), pol);
        if (p_it == impl.polarizations.end())
            throw Error("Polarization " + to_string(pol) + " is not part of the container");
        if (freq_index >= impl.frequencies.size())
            throw Error("Frequency index out of range");

        std::size_t slot = (static_cast<std::size_t>(e_it - impl.elements.begin()) * impl.frequencies.size() +
                            freq_index) *
                               impl.polarizations.size() +
                           static_cast<std::size_t>(p_it - impl.polarizations.begin());

        std::vector<double> buffer(impl.block_doubles());
        impl.file.seekg(static_cast<std::streamoff>(slot * impl.block_doubles() * sizeof(double)));
        impl.file.read(reinterpret_cast<char *>(buffer.data()),
                       static_cast<std::streamsize>(buffer.size() * sizeof(double)));
        if (!impl.file)
            throw Error("Read from '" + impl.data_path.string() + "' failed");

        RadiationPattern out;
        out.grid = impl.grid;
        out.frequency_hz = impl.frequencies[freq_index];
        out.polarization = pol;
        out.element_id = element_id;
        out.data.set_size(impl.grid.n_zenith(), impl.grid.n_azimuth());
        std::size_t i = 0;
        for (unsigned r = 0; r < out.data.n_rows; r++)
            for (unsigned c = 0; c < out.data.n_cols; c++)
            {
                out.data(r, c) = {buffer[i], buffer[i + 1]};
                i += 2;
            }
        return out;
    }

    PatternSet PatternSetReader::read_element(int element_id, unsigned zenith_factor, unsigned azimuth_factor) const
    {
        const Impl &impl = *m_impl;
        if (zenith_factor == 0 || impl.grid.m() % zenith_factor != 0 || impl.grid.m() / zenith_factor < 2 ||
            azimuth_factor == 0 || impl.grid.n() % azimuth_factor != 0 || impl.grid.n() / azimuth_factor < 2)
            throw NonDivisibleFactor("Decimation factors must divide the container grid half-orders");
        AngularGrid coarse(impl.grid.m() / zenith_factor, impl.grid.n() / azimuth_factor);

        PatternSet out(coarse, impl.frequencies, {element_id}, impl.polarizations);
        for (std::size_t s = 0; s < impl.frequencies.size(); s++)
            for (Polarization pol : impl.polarizations)
            {
                RadiationPattern p = read(element_id, s, pol);
                if (zenith_factor != 1 || azimuth_factor != 1)
                    p = subsample(p, zenith_factor, azimuth_factor);
                out.insert(std::move(p), s);
            }
        return out;
    }

    PatternSet PatternSetReader::read_all() const
    {
        const Impl &impl = *m_impl;
        PatternSet out(impl.grid, impl.frequencies, impl.elements, impl.polarizations);
        for (int e : impl.elements)
            for (std::size_t s = 0; s < impl.frequencies.size(); s++)
                for (Polarization pol : impl.polarizations)
                    out.insert(read(e, s, pol), s);
        return out;
    }

    void write_pattern_set(const PatternSet &set, const std::filesystem::path &manifest_path)
    {
        PatternSetWriter writer(manifest_path, set.grid(), set.frequencies_hz(), set.element_ids(),
                                set.polarizations());
        for (int e : set.element_ids())
            for (std::size_t s = 0; s < set.n_frequencies(); s++)
                for (Polarization pol : set.polarizations())
                    writer.append(set.at(e, s, pol), s);
        writer.finalize();
    }

    PatternSet read_pattern_set(const std::filesystem::path &manifest_path)
    {
        return PatternSetReader(manifest_path).read_all();
    }

    // ------------------------- array model IO -------------------------

    void write_array_model(const ArrayModel &model, const std::filesystem::path &manifest_path)
    {
        require_little_endian();
        model.check();

        std::filesystem::path data_path = manifest_path;
        data_path.replace_extension(".bin");
        if (data_path == manifest_path)
            throw Error("Manifest path must not carry a .bin extension");

        std::vector<double> blob;
        json elements = json::array();

        for (const ElementModel &elem : model.elements)
        {
            json spectra = json::array();
            for (Polarization pol : {Polarization::H, Polarization::V})
            {
                const std::optional<Eadf> &q = (pol == Polarization::H) ? elem.q_h : elem.q_v;
                if (!q)
                    continue;

                json entry{{"polarization", to_string(pol)}, {"row_lo", q->row_lo()},   {"row_hi", q->row_hi()},
                           {"col_lo", q->col_lo()},          {"col_hi", q->col_hi()},   {"offset_doubles", blob.size()}};
                spectra.push_back(entry);

                const arma::cx_mat &Q = q->coefficients();
                for (unsigned r = 0; r < Q.n_rows; r++)
                    for (unsigned c = 0; c < Q.n_cols; c++)
                    {
                        blob.push_back(Q(r, c).real());
                        blob.push_back(Q(r, c).imag());
                    }
            }

            elements.push_back(json{{"element_id", elem.element_id},
                                    {"phase_center_m", {elem.phase_center.x, elem.phase_center.y, elem.phase_center.z}},
                                    {"delta_tau_s", elem.delta_tau_s},
                                    {"fit", json{{"rms_residual_s", elem.fit_rms_residual_s},
                                                 {"condition_number", elem.fit_condition},
                                                 {"n_directions", elem.fit_directions}}},
                                    {"spectra", spectra}});
        }

        json manifest{{"format", "eadf-array-model"},
                      {"version", 1},
                      {"data_file", data_path.filename().string()},
                      {"mode", to_string(model.mode)},
                      {"frequency_hz", model.frequency_hz},
                      {"build_grid", grid_to_json(model.build_grid)},
                      {"layout", "per spectrum entry: stored block row-major over columns, float64 little-endian "
                                 "interleaved re/im, starting at offset_doubles"},
                      {"elements", elements}};

        std::filesystem::path tmp = temp_name(data_path);
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw Error("Cannot open '" + tmp.string() + "' for writing");
            out.write(reinterpret_cast<const char *>(blob.data()),
                      static_cast<std::streamsize>(blob.size() * sizeof(double)));
            if (!out)
                throw Error("Write to '" + tmp.string() + "' failed");
        }
        std::filesystem::rename(tmp, data_path);
        write_json_atomic(manifest, manifest_path);
    }

    ArrayModel read_array_model(const std::filesystem::path &manifest_path)
    {
        require_little_endian();

        json manifest = load_json(manifest_path);
        if (manifest.value("format", "") != "eadf-array-model")
            throw Error("'" + manifest_path.string() + "' is not an array-model manifest");
        if (manifest.value("version", 0) != 1)
            throw Error("Unsupported array-model version");

        ArrayModel model;
        model.mode = model_mode_from_string(manifest.at("mode").get<std::string>());
        model.frequency_hz = manifest.at("frequency_hz").get<double>();
        model.build_grid = grid_from_json(manifest.at("build_grid"));

        std::filesystem::path data_path = manifest_path.parent_path() / manifest.at("data_file").get<std::string>();
        std::ifstream file(data_path, std::ios::binary);
        if (!file)
            throw Error("Cannot open '" + data_path.string() + "'");
        std::vector<double> blob(std::filesystem::file_size(data_path) / sizeof(double));
        file.read(reinterpret_cast<char *>(blob.data()), static_cast<std::streamsize>(blob.size() * sizeof(double)));
        if (!file)
            throw Error("Read from '" + data_path.string() + "' failed");

        for (const json &e : manifest.at("elements"))
        {
            ElementModel elem;
            elem.element_id = e.at("element_id").get<int>();
            const json &pc = e.at("phase_center_m");
            elem.phase_center = {pc.at(0).get<double>(), pc.at(1).get<double>(), pc.at(2).get<double>()};
            elem.delta_tau_s = e.at("delta_tau_s").get<double>();
            if (e.contains("fit"))
            {
                elem.fit_rms_residual_s = e.at("fit").value("rms_residual_s", 0.0);
                elem.fit_condition = e.at("fit").value("condition_number", 0.0);
                elem.fit_directions = e.at("fit").value("n_directions", std::size_t{0});
            }

            for (const json &sp : e.at("spectra"))
            {
                unsigned row_lo = sp.at("row_lo").get<unsigned>(), row_hi = sp.at("row_hi").get<unsigned>();
                unsigned col_lo = sp.at("col_lo").get<unsigned>(), col_hi = sp.at("col_hi").get<unsigned>();
                std::size_t offset = sp.at("offset_doubles").get<std::size_t>();

                std::size_t rows = row_hi - row_lo + 1, cols = col_hi - col_lo + 1;
                if (offset + rows * cols * 2 > blob.size())
                    throw Error("Spectrum data extends past the end of '" + data_path.string() + "'");

                arma::cx_mat Q(rows, cols);
                std::size_t i = offset;
                for (unsigned r = 0; r < rows; r++)
                    for (unsigned c = 0; c < cols; c++)
                    {
                        Q(r, c) = {blob[i], blob[i + 1]};
                        i += 2;
                    }

                Eadf q(model.build_grid, std::move(Q), row_lo, row_hi, col_lo, col_hi);
                Polarization pol = polarization_from_string(sp.at("polarization").get<std::string>());
                (pol == Polarization::H ? elem.q_h : elem.q_v) = std::move(q);
            }

            model.elements.push_back(std::move(elem));
        }

        model.check();
        return model;
    }

    // ------------------------- tabular exports -------------------------

    static std::string format_double(double v)
    {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        return buf;
    }

    void write_delay_map_csv(const DelayMap &map, const std::filesystem::path &path)
    {
        std::ostringstream out;
        out << "zenith_deg,azimuth_deg,delay_ns,masked\n";
        for (unsigned r = 0; r < map.delays_s.n_rows; r++)
            for (unsigned c = 0; c < map.delays_s.n_cols; c++)
            {
                out << format_double(rad2deg(map.grid.zenith(r))) << "," << format_double(rad2deg(map.grid.azimuth(c)))
                    << ",";
                if (map.mask(r, c))
                    out << format_double(map.delays_s(r, c) * 1e9) << ",1\n";
                else
                    out << "nan,0\n";
            }
        write_text_atomic(out.str(), path);
    }

    void write_phase_centers_json(const ArrayModel &model, const std::filesystem::path &path)
    {
        json elements = json::array();
        for (const ElementModel &e : model.elements)
            elements.push_back(json{{"element_id", e.element_id},
                                    {"offset_m", {e.phase_center.x, e.phase_center.y, e.phase_center.z}},
                                    {"delta_tau_ns", e.delta_tau_s * 1e9},
                                    {"rms_residual_ns", e.fit_rms_residual_s * 1e9},
                                    {"n_directions", e.fit_directions},
                                    {"condition_number", e.fit_condition}});

        json doc{{"format", "eadf-phase-centers"},
                 {"version", 1},
                 {"mode", to_string(model.mode)},
                 {"frequency_hz", model.frequency_hz},
                 {"elements", elements}};
        write_json_atomic(doc, path);
    }

    static json cdf_to_json(const std::vector<std::pair<double, double>> &cdf)
    {
        json arr = json::array();
        for (const auto &[level, prob] : cdf)
            arr.push_back(json::array({level, prob}));
        return arr;
    }

    void write_rem_report(const RemReport &report, const std::filesystem::path &csv_path,
                          const std::filesystem::path &json_path)
    {
        std::ostringstream out;
        out << "zenith_deg,azimuth_deg,rem,rem_db,in_stats\n";
        for (unsigned r = 0; r < report.rem_values.n_rows; r++)
            for (unsigned c = 0; c < report.rem_values.n_cols; c++)
            {
                double v = report.rem_values(r, c);
                out << format_double(rad2deg(report.grid.zenith(r))) << ","
                    << format_double(rad2deg(report.grid.azimuth(c))) << ",";
                if (std::isfinite(v))
                    out << format_double(v) << "," << format_double(to_db(v));
                else
                    out << "nan,nan";
                out << "," << (report.mask(r, c) ? 1 : 0) << "\n";
            }
        write_text_atomic(out.str(), csv_path);

        json diags = json::array();
        for (const Diagnostic &d : report.diagnostics)
            diags.push_back(json{{"severity", d.severity == Diagnostic::Severity::error ? "error" : "warning"},
                                 {"message", d.message}});

        json doc{{"format", "eadf-rem-report"},
                 {"version", 1},
                 {"median_db", report.median_db},
                 {"n_evaluated", report.n_evaluated},
                 {"cdf", cdf_to_json(report.cdf)},
                 {"diagnostics", diags}};
        write_json_atomic(doc, json_path);
    }

    void write_rem_summary_json(const std::map<std::string, RemAccumulator> &pooled,
                                const std::filesystem::path &path)
    {
        json reports = json::object();
        for (const auto &[key, acc] : pooled)
        {
            json entry{{"n_values", acc.n_values()}, {"cdf", cdf_to_json(acc.cdf())}};
            entry["median_db"] = acc.n_values() ? json(acc.median_db()) : json();
            reports[key] = entry;
        }

        json doc{{"format", "eadf-rem-summary"}, {"version", 1}, {"reports", reports}};
        write_json_atomic(doc, path);
    }

    void write_power_spectrum_csv(const Eadf &eadf, const std::filesystem::path &path)
    {
        arma::mat db = eadf_power_spectrum(eadf);

        std::ostringstream out;
        out << "zenith_order,azimuth_order,power_db\n";
        for (unsigned r = 0; r < db.n_rows; r++)
            for (unsigned c = 0; c < db.n_cols; c++)
                out << eadf.zenith_order(r) << "," << eadf.azimuth_order(c) << "," << format_double(db(r, c)) << "\n";
        write_text_atomic(out.str(), path);
    }

} // namespace eadf
