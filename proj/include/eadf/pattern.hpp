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

#ifndef EADF_PATTERN_HPP
#define EADF_PATTERN_HPP

#include <armadillo>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "eadf/geometry.hpp"

namespace eadf
{
    enum class Polarization
    {
        H, // horizontal probe polarization
        V  // vertical probe polarization
    };

    std::string to_string(Polarization pol);
    Polarization polarization_from_string(const std::string &s);

    // Complex far-field gains of one element, measured over a full angular
    // grid at a single frequency and probe polarization. data(r, c) is the
    // gain at theta = r*pi/M, phi = c*pi/N, so the matrix is (M+1) x 2N.
    struct RadiationPattern
    {
        AngularGrid grid{2, 2};
        double frequency_hz = 0.0;
        Polarization polarization = Polarization::V;
        int element_id = 0;
        arma::cx_mat data;

        double wavelength() const; // speed of light / frequency
        void check() const;        // throws on shape mismatch or non-finite entries
    };

    // Full-sphere continuation of a measured pattern. Rows cover
    // theta = r*pi/M for r = 0..2M-1, i.e. the zenith axis extended past the
    // lower pole; columns are unchanged. The matrix is 2M x 2N.
    struct ExtendedPattern
    {
        AngularGrid grid{2, 2};
        arma::cx_mat data;
    };

    // Continue a measured upper+lower hemisphere sweep to the full sphere:
    // rows 0..M are copied, row M+s (s = 1..M-1) takes row M-s with the
    // azimuth columns rotated by half a turn. Entries are copied bit-exactly.
    ExtendedPattern extend(const RadiationPattern &pattern);

    // Keep every zenith_factor-th row and azimuth_factor-th column (phase
    // reference row/column 0 always kept). Factors must divide M and N;
    // otherwise NonDivisibleFactor is thrown, naming the admissible factors.
    RadiationPattern subsample(const RadiationPattern &pattern, unsigned zenith_factor, unsigned azimuth_factor);

    // Validation findings, reported without interrupting a pipeline
    struct Diagnostic
    {
        enum class Severity
        {
            warning,
            error
        };

        Severity severity = Severity::warning;
        std::string message;
    };

    // Collection of patterns of one measured array: all elements, all sweep
    // frequencies, one or two probe polarizations, all on one shared grid.
    class PatternSet
    {
      public:
        PatternSet(AngularGrid grid, std::vector<double> frequencies_hz, std::vector<int> element_ids,
                   std::vector<Polarization> polarizations);

        const AngularGrid &grid() const
        {
            return m_grid;
        }
        const std::vector<double> &frequencies_hz() const
        {
            return m_frequencies;
        }
        const std::vector<int> &element_ids() const
        {
            return m_elements;
        }
        const std::vector<Polarization> &polarizations() const
        {
            return m_polarizations;
        }

        std::size_t n_frequencies() const
        {
            return m_frequencies.size();
        }
        std::size_t n_elements() const
        {
            return m_elements.size();
        }

        // Frequency spacing of the sweep; throws unless the spacing is uniform
        // to within a 1e-6 relative tolerance (or the sweep has a single point)
        double frequency_spacing() const;

        // Index of the sweep frequency closest to the arithmetic band center
        std::size_t center_frequency_index() const;

        // Index of a frequency given in hertz (1e-6 relative tolerance)
        std::size_t frequency_index(double frequency_hz) const;

        void insert(RadiationPattern pattern, std::size_t freq_index);
        bool contains(int element_id, std::size_t freq_index, Polarization pol) const;
        const RadiationPattern &at(int element_id, std::size_t freq_index, Polarization pol) const;

      private:
        AngularGrid m_grid;
        std::vector<double> m_frequencies;
        std::vector<int> m_elements;
        std::vector<Polarization> m_polarizations;
        std::map<std::tuple<int, std::size_t, int>, RadiationPattern> m_patterns;
    };

    // Decimate every member pattern of a set by the given factors
    PatternSet subsample(const PatternSet &set, unsigned zenith_factor, unsigned azimuth_factor);

    // Check a pattern set for missing members, non-finite samples, suspicious
    // dynamic range (above 200 dB) and non-uniform frequency spacing
    std::vector<Diagnostic> validate(const PatternSet &set);

} // namespace eadf

#endif
