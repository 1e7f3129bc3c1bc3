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

#ifndef EADF_CONTAINER_HPP
#define EADF_CONTAINER_HPP

#include <filesystem>
#include <map>

#include "eadf/metrics.hpp"
#include "eadf/pattern.hpp"
#include "eadf/phase_center.hpp"

namespace eadf
{
    // Pattern sets are stored as a JSON manifest plus a flat binary data file
    // (little-endian float64 interleaved re/im). See docs/formats.md for the
    // exact layout. All writers are atomic: data lands under a temporary name
    // and is renamed into place.

    void write_pattern_set(const PatternSet &set, const std::filesystem::path &manifest_path);
    PatternSet read_pattern_set(const std::filesystem::path &manifest_path);

    // Incremental writer for campaigns too large to hold in memory. Patterns
    // may be appended in any order; each (element, frequency, polarization)
    // slot must be filled exactly once before finalize().
    class PatternSetWriter
    {
      public:
        PatternSetWriter(const std::filesystem::path &manifest_path, const AngularGrid &grid,
                         std::vector<double> frequencies_hz, std::vector<int> element_ids,
                         std::vector<Polarization> polarizations);
        ~PatternSetWriter();

        void append(const RadiationPattern &pattern, std::size_t freq_index);
        void finalize(); // writes the manifest and renames both files into place

      private:
        struct Impl;
        std::unique_ptr<Impl> m_impl;
    };

    // Random-access reader over the same layout; patterns are read on demand
    class PatternSetReader
    {
      public:
        explicit PatternSetReader(const std::filesystem::path &manifest_path);
        ~PatternSetReader();

        const AngularGrid &grid() const;
        const std::vector<double> &frequencies_hz() const;
        const std::vector<int> &element_ids() const;
        const std::vector<Polarization> &polarizations() const;

        RadiationPattern read(int element_id, std::size_t freq_index, Polarization pol) const;

        // Load every pattern of one element (optionally decimated)
        PatternSet read_element(int element_id, unsigned zenith_factor = 1, unsigned azimuth_factor = 1) const;

        // Load the whole set
        PatternSet read_all() const;

      private:
        struct Impl;
        std::unique_ptr<Impl> m_impl;
    };

    // Array models: JSON manifest plus binary coefficient file
    void write_array_model(const ArrayModel &model, const std::filesystem::path &manifest_path);
    ArrayModel read_array_model(const std::filesystem::path &manifest_path);

    // Delay maps: CSV with one row per grid direction
    void write_delay_map_csv(const DelayMap &map, const std::filesystem::path &path);

    // Phase-center estimates of a whole model, JSON keyed by element
    void write_phase_centers_json(const ArrayModel &model, const std::filesystem::path &path);

    // Error-map reports: per-direction CSV plus a JSON summary with the CDF
    void write_rem_report(const RemReport &report, const std::filesystem::path &csv_path,
                          const std::filesystem::path &json_path);

    // Pooled CDF summary of several reports
    void write_rem_summary_json(const std::map<std::string, RemAccumulator> &pooled,
                                const std::filesystem::path &path);

    // Power spectrum of one element spectrum as CSV (dB relative to peak)
    void write_power_spectrum_csv(const Eadf &eadf, const std::filesystem::path &path);

} // namespace eadf

#endif
