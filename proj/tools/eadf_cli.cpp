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

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "eadf/chamber_config.hpp"
#include "eadf/container.hpp"
#include "eadf/metrics.hpp"
#include "eadf/phase_center.hpp"
#include "eadf/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

    // Decimation factor corresponding to a step in degrees, or an error that
    // lists every admissible step of the axis
    unsigned step_factor(double step_deg, unsigned half_order, const char *axis)
    {
        double native = 180.0 / static_cast<double>(half_order);
        double ratio = step_deg / native;
        double rounded = std::round(ratio);

        bool ok = rounded >= 1.0 && std::abs(ratio - rounded) <= 1e-9 * ratio &&
                  half_order % static_cast<unsigned>(rounded) == 0 &&
                  half_order / static_cast<unsigned>(rounded) >= 2;
        if (!ok)
        {
            std::string admissible;
            for (unsigned f = 1; f <= half_order / 2; f++)
                if (half_order % f == 0)
                    admissible += (admissible.empty() ? "" : ", ") + std::to_string(native * f);
            throw eadf::Error("Step " + std::to_string(step_deg) + " deg is not admissible for the " + axis +
                              " axis (native step " + std::to_string(native) + " deg; admissible steps: " +
                              admissible + " deg)");
        }
        return static_cast<unsigned>(rounded);
    }

    int cmd_simulate(const std::string &config_path, const std::string &out_dir, std::optional<std::uint64_t> seed,
                     std::optional<double> snr_db, bool noiseless)
    {
        eadf::ChamberSpec spec = eadf::read_chamber_spec(config_path);
        if (seed)
            spec.rng_seed = *seed;
        if (snr_db)
            spec.snr_db = *snr_db;
        if (noiseless)
            spec.snr_db.reset();

        fs::create_directories(out_dir);
        fs::path manifest = fs::path(out_dir) / "patterns.json";

        std::vector<int> ids(spec.elements.size());
        for (std::size_t e = 0; e < ids.size(); e++)
            ids[e] = static_cast<int>(e);

        eadf::PatternSetWriter writer(manifest, spec.grid, spec.frequencies_hz, ids, spec.polarizations);
        for (std::size_t e = 0; e < spec.elements.size(); e++)
            for (std::size_t s = 0; s < spec.frequencies_hz.size(); s++)
                for (eadf::Polarization pol : spec.polarizations)
                    writer.append(eadf::simulate_pattern(spec, e, s, pol), s);
        writer.finalize();

        std::cout << "Simulated " << spec.elements.size() << " element(s), " << spec.frequencies_hz.size()
                  << " frequency point(s), " << spec.polarizations.size() << " polarization(s) on a "
                  << spec.grid.n_zenith() << " x " << spec.grid.n_azimuth() << " grid\n";
        std::cout << "Wrote " << manifest.string() << "\n";
        return 0;
    }

    int cmd_characterize(const std::string &input, const std::string &out_dir, const std::string &mode_str,
                         std::optional<double> step_deg, std::optional<double> frequency_hz, double threshold_db,
                         double power_fraction, bool spectra, bool delay_maps)
    {
        eadf::ModelMode mode = eadf::model_mode_from_string(mode_str);
        eadf::PatternSetReader reader(input);

        unsigned zf = 1, af = 1;
        if (step_deg)
        {
            zf = step_factor(*step_deg, reader.grid().m(), "zenith");
            af = step_factor(*step_deg, reader.grid().n(), "azimuth");
        }

        // Pick the model frequency on the container's sweep
        std::vector<double> freqs = reader.frequencies_hz();
        eadf::PatternSet probe(reader.grid(), freqs, reader.element_ids(), reader.polarizations());
        std::size_t s_model = frequency_hz ? probe.frequency_index(*frequency_hz) : probe.center_frequency_index();

        // Characterize element by element so that large containers never
        // have to be resident in memory at once
        eadf::ArrayModel model;
        bool first = true;
        for (int e : reader.element_ids())
        {
            eadf::PatternSet elem_set = (mode == eadf::ModelMode::enhanced)
                                            ? reader.read_element(e, zf, af)
                                            : [&]() {
                                                  eadf::PatternSet one(
                                                      zf == 1 && af == 1
                                                          ? reader.grid()
                                                          : eadf::AngularGrid(reader.grid().m() / zf,
                                                                              reader.grid().n() / af),
                                                      {freqs[s_model]}, {e}, reader.polarizations());
                                                  for (eadf::Polarization pol : reader.polarizations())
                                                  {
                                                      eadf::RadiationPattern p = reader.read(e, s_model, pol);
                                                      if (zf != 1 || af != 1)
                                                          p = eadf::subsample(p, zf, af);
                                                      one.insert(std::move(p), 0);
                                                  }
                                                  return one;
                                              }();

            eadf::ArrayModel part = (mode == eadf::ModelMode::enhanced)
                                        ? eadf::build_enhanced_model(elem_set, freqs[s_model], threshold_db,
                                                                     power_fraction)
                                        : eadf::build_conventional_model(elem_set, freqs[s_model], power_fraction);

            if (delay_maps && mode == eadf::ModelMode::enhanced)
            {
                eadf::Polarization pol = elem_set.contains(e, elem_set.center_frequency_index(), eadf::Polarization::V)
                                             ? eadf::Polarization::V
                                             : eadf::Polarization::H;
                eadf::DelayMap map = eadf::build_delay_map(elem_set, e, pol, threshold_db);
                fs::create_directories(out_dir);
                fs::path dm_path = fs::path(out_dir) / ("delay_map_e" + std::to_string(e) + ".csv");
                eadf::write_delay_map_csv(map, dm_path);
                std::cout << "Wrote " << dm_path.string() << "\n";
            }

            if (first)
            {
                model = std::move(part);
                first = false;
            }
            else
                model.elements.push_back(std::move(part.elements.front()));
        }

        fs::create_directories(out_dir);
        fs::path model_path = fs::path(out_dir) / "model.json";
        eadf::write_array_model(model, model_path);
        std::cout << "Wrote " << model_path.string() << " (" << eadf::to_string(model.mode) << ", "
                  << model.elements.size() << " element(s), build grid " << model.build_grid.n_zenith() << " x "
                  << model.build_grid.n_azimuth() << ")\n";

        if (mode == eadf::ModelMode::enhanced)
        {
            fs::path pc_path = fs::path(out_dir) / "phase_centers.json";
            eadf::write_phase_centers_json(model, pc_path);
            std::cout << "Wrote " << pc_path.string() << "\n";
        }

        if (spectra)
            for (const eadf::ElementModel &elem : model.elements)
                for (eadf::Polarization pol : {eadf::Polarization::H, eadf::Polarization::V})
                {
                    const std::optional<eadf::Eadf> &q = pol == eadf::Polarization::H ? elem.q_h : elem.q_v;
                    if (!q)
                        continue;
                    fs::path sp_path = fs::path(out_dir) / ("spectrum_e" + std::to_string(elem.element_id) + "_" +
                                                            eadf::to_string(pol) + ".csv");
                    eadf::write_power_spectrum_csv(*q, sp_path);
                    std::cout << "Wrote " << sp_path.string() << "\n";
                }

        return 0;
    }

    int cmd_evaluate(const std::string &truth_path, const std::string &model_path, const std::string &out_dir,
                     double threshold_db, bool full_sphere, bool include_build)
    {
        eadf::ArrayModel model = eadf::read_array_model(model_path);
        eadf::PatternSetReader reader(truth_path);

        eadf::PatternSet probe(reader.grid(), reader.frequencies_hz(), reader.element_ids(), reader.polarizations());
        std::size_t s = probe.frequency_index(model.frequency_hz);

        eadf::RemOptions options;
        options.threshold_db = threshold_db;
        options.use_coverage_mask = !full_sphere;
        options.include_build_directions = include_build;

        fs::create_directories(out_dir);
        std::map<std::string, eadf::RemAccumulator> pooled;

        for (const eadf::ElementModel &elem : model.elements)
            for (eadf::Polarization pol : {eadf::Polarization::H, eadf::Polarization::V})
            {
                const std::optional<eadf::Eadf> &q = pol == eadf::Polarization::H ? elem.q_h : elem.q_v;
                if (!q)
                    continue;

                eadf::RadiationPattern truth = reader.read(elem.element_id, s, pol);
                eadf::RemReport report = eadf::rem_map(truth, model, options);

                std::string stem = "rem_e" + std::to_string(elem.element_id) + "_" + eadf::to_string(pol);
                eadf::write_rem_report(report, fs::path(out_dir) / (stem + ".csv"),
                                       fs::path(out_dir) / (stem + ".json"));
                pooled[eadf::to_string(pol)].add(report);

                std::cout << stem << ": median " << report.median_db << " dB over " << report.n_evaluated
                          << " direction(s)\n";
            }

        fs::path summary = fs::path(out_dir) / "summary.json";
        eadf::write_rem_summary_json(pooled, summary);
        for (const auto &[key, acc] : pooled)
            if (acc.n_values())
                std::cout << "pooled " << key << ": median " << acc.median_db() << " dB over " << acc.n_values()
                          << " direction(s)\n";
        std::cout << "Wrote " << summary.string() << "\n";
        return 0;
    }

    json budget_entry(int element_id, const eadf::Vec3 &offset, double wavelength)
    {
        eadf::SpatialFreqBudget b = eadf::max_spatial_freq(offset, wavelength);
        json entry{{"element_id", element_id},
                   {"offset_m", {offset.x, offset.y, offset.z}},
                   {"f_zenith_max_cyc_per_rad", b.f_zenith_max},
                   {"f_azimuth_max_cyc_per_rad", b.f_azimuth_max}};
        entry["max_zenith_step_deg"] =
            b.zenith_unbounded() ? json() : json(eadf::rad2deg(b.max_zenith_step()));
        entry["max_azimuth_step_deg"] =
            b.azimuth_unbounded() ? json() : json(eadf::rad2deg(b.max_azimuth_step()));
        return entry;
    }

    void print_budget_entry(const json &e)
    {
        std::cout << "element " << e.at("element_id") << ": f_zenith " << e.at("f_zenith_max_cyc_per_rad").get<double>()
                  << " cyc/rad, f_azimuth " << e.at("f_azimuth_max_cyc_per_rad").get<double>() << " cyc/rad";
        if (e.at("max_zenith_step_deg").is_null())
            std::cout << ", zenith step unbounded";
        else
            std::cout << ", zenith step <= " << e.at("max_zenith_step_deg").get<double>() << " deg";
        if (e.at("max_azimuth_step_deg").is_null())
            std::cout << ", azimuth step unbounded";
        else
            std::cout << ", azimuth step <= " << e.at("max_azimuth_step_deg").get<double>() << " deg";
        std::cout << "\n";
    }

    int cmd_budget(const std::string &config_path, const std::string &model_path, const std::vector<double> &offset,
                   std::optional<double> frequency_hz, const std::string &json_out)
    {
        std::vector<json> entries;
        double wavelength = 0.0;

        if (!config_path.empty())
        {
            eadf::ChamberSpec spec = eadf::read_chamber_spec(config_path);
            double f = frequency_hz ? *frequency_hz
                                    : 0.5 * (spec.frequencies_hz.front() + spec.frequencies_hz.back());
            wavelength = eadf::speed_of_light / f;
            for (std::size_t e = 0; e < spec.elements.size(); e++)
                entries.push_back(budget_entry(static_cast<int>(e), spec.elements[e].position_m, wavelength));
        }
        else if (!model_path.empty())
        {
            eadf::ArrayModel model = eadf::read_array_model(model_path);
            double f = frequency_hz ? *frequency_hz : model.frequency_hz;
            wavelength = eadf::speed_of_light / f;
            for (const eadf::ElementModel &elem : model.elements)
                entries.push_back(budget_entry(elem.element_id, elem.phase_center, wavelength));
        }
        else if (offset.size() == 3)
        {
            if (!frequency_hz)
                throw eadf::Error("--offset requires --frequency");
            wavelength = eadf::speed_of_light / *frequency_hz;
            entries.push_back(budget_entry(0, {offset[0], offset[1], offset[2]}, wavelength));
        }
        else
            throw eadf::Error("budget requires --config, --model or --offset");

        // Array-level budget: the worst element bounds the whole campaign
        eadf::SpatialFreqBudget array_budget;
        for (const json &e : entries)
        {
            array_budget.f_zenith_max = std::max(array_budget.f_zenith_max, e.at("f_zenith_max_cyc_per_rad").get<double>());
            array_budget.f_azimuth_max =
                std::max(array_budget.f_azimuth_max, e.at("f_azimuth_max_cyc_per_rad").get<double>());
        }

        for (const json &e : entries)
            print_budget_entry(e);
        std::cout << "array: f_zenith " << array_budget.f_zenith_max << " cyc/rad, f_azimuth "
                  << array_budget.f_azimuth_max << " cyc/rad";
        if (array_budget.zenith_unbounded())
            std::cout << ", zenith step unbounded";
        else
            std::cout << ", zenith step <= " << eadf::rad2deg(array_budget.max_zenith_step()) << " deg";
        if (array_budget.azimuth_unbounded())
            std::cout << ", azimuth step unbounded";
        else
            std::cout << ", azimuth step <= " << eadf::rad2deg(array_budget.max_azimuth_step()) << " deg";
        std::cout << "\n";

        if (!json_out.empty())
        {
            json doc{{"format", "eadf-budget"},
                     {"version", 1},
                     {"wavelength_m", wavelength},
                     {"elements", entries},
                     {"array",
                      {{"f_zenith_max_cyc_per_rad", array_budget.f_zenith_max},
                       {"f_azimuth_max_cyc_per_rad", array_budget.f_azimuth_max}}}};
            std::ofstream out(json_out, std::ios::binary | std::ios::trunc);
            if (!out)
                throw eadf::Error("Cannot open '" + json_out + "' for writing");
            out << doc.dump(2) << "\n";
            std::cout << "Wrote " << json_out << "\n";
        }

        return 0;
    }

    int cmd_validate(const std::string &input)
    {
        eadf::PatternSet set = eadf::read_pattern_set(input);
        std::vector<eadf::Diagnostic> diags = eadf::validate(set);

        bool has_error = false;
        for (const eadf::Diagnostic &d : diags)
        {
            bool err = d.severity == eadf::Diagnostic::Severity::error;
            has_error |= err;
            std::cout << (err ? "error:   " : "warning: ") << d.message << "\n";
        }

        if (diags.empty())
            std::cout << "No findings\n";
        return has_error ? 2 : 0;
    }

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Antenna array characterization via effective aperture distribution functions"};
    app.require_subcommand(1);
    app.footer("Set EADF_THREADS to bound the number of worker threads.");

    // simulate
    auto *sim = app.add_subcommand("simulate", "Run a synthetic chamber campaign and store the pattern container");
    std::string sim_config, sim_out;
    std::optional<std::uint64_t> sim_seed;
    std::optional<double> sim_snr;
    bool sim_noiseless = false;
    sim->add_option("--config", sim_config, "Chamber configuration (.toml or .json)")->required();
    sim->add_option("--out", sim_out, "Output directory")->required();
    sim->add_option("--seed", sim_seed, "Override the configured RNG seed");
    sim->add_option("--snr", sim_snr, "Override the configured SNR in dB");
    sim->add_flag("--noiseless", sim_noiseless, "Disable receiver noise");

    // characterize
    auto *chr = app.add_subcommand("characterize", "Derive an array model from a pattern container");
    std::string chr_input, chr_out, chr_mode;
    std::optional<double> chr_step, chr_freq;
    double chr_threshold = 13.0, chr_fraction = 1.0;
    bool chr_spectra = false, chr_delay_maps = false;
    chr->add_option("--input", chr_input, "Pattern container manifest")->required();
    chr->add_option("--out", chr_out, "Output directory")->required();
    chr->add_option("--mode", chr_mode, "'conventional' or 'enhanced'")->required();
    chr->add_option("--step", chr_step, "Decimate the container to this angular step in degrees");
    chr->add_option("--frequency,--freq", chr_freq, "Model frequency in Hz (default: sweep center)");
    chr->add_option("--threshold-db", chr_threshold, "Main-coverage threshold below peak gain (default 13)");
    chr->add_option("--power-fraction", chr_fraction, "Spectral power fraction kept by truncation (default 1.0)");
    chr->add_flag("--spectra", chr_spectra, "Also export per-element power spectra as CSV");
    chr->add_flag("--delay-maps", chr_delay_maps, "Also export per-element delay maps as CSV (enhanced mode)");

    // evaluate
    auto *evl = app.add_subcommand("evaluate", "Compare a model against reference patterns");
    std::string evl_truth, evl_model, evl_out;
    double evl_threshold = 13.0;
    bool evl_full = false, evl_include = false;
    evl->add_option("--truth", evl_truth, "Reference pattern container manifest")->required();
    evl->add_option("--model", evl_model, "Array model manifest")->required();
    evl->add_option("--out", evl_out, "Output directory")->required();
    evl->add_option("--threshold-db", evl_threshold, "Main-coverage threshold below peak gain (default 13)");
    evl->add_flag("--full-sphere", evl_full, "Evaluate the whole sphere instead of the main coverage");
    evl->add_flag("--include-build-directions", evl_include, "Keep directions the model was built from");

    // budget
    auto *bud = app.add_subcommand("budget", "Report spatial frequency budgets and alias-free steps");
    std::string bud_config, bud_model, bud_json;
    std::vector<double> bud_offset;
    std::optional<double> bud_freq;
    bud->add_option("--config", bud_config, "Chamber configuration (.toml or .json)");
    bud->add_option("--model", bud_model, "Array model manifest");
    bud->add_option("--offset", bud_offset, "Offset x y z in meters")->expected(3);
    bud->add_option("--frequency", bud_freq, "Frequency in Hz");
    bud->add_option("--json", bud_json, "Also write the budget as JSON");

    // validate
    auto *val = app.add_subcommand("validate", "Check a pattern container for defects");
    std::string val_input;
    val->add_option("--input", val_input, "Pattern container manifest")->required();

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (sim->parsed())
            return cmd_simulate(sim_config, sim_out, sim_seed, sim_snr, sim_noiseless);
        if (chr->parsed())
            return cmd_characterize(chr_input, chr_out, chr_mode, chr_step, chr_freq, chr_threshold, chr_fraction,
                                    chr_spectra, chr_delay_maps);
        if (evl->parsed())
            return cmd_evaluate(evl_truth, evl_model, evl_out, evl_threshold, evl_full, evl_include);
        if (bud->parsed())
            return cmd_budget(bud_config, bud_model, bud_offset, bud_freq, bud_json);
        if (val->parsed())
            return cmd_validate(val_input);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    return 0;
}
