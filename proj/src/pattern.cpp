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

#include "eadf/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace eadf
{

    std::string to_string(Polarization pol)
    {
        return pol == Polarization::H ? "H" : "V";
    }

    Polarization polarization_from_string(const std::string &s)
    {
        if (s == "H" || s == "h")
            return Polarization::H;
        if (s == "V" || s == "v")
            return Polarization::V;
        throw Error("Unknown polarization '" + s + "', expected 'H' or 'V'");
    }

    double RadiationPattern::wavelength() const
    {
        if (!(frequency_hz > 0.0))
            throw Error("Pattern frequency must be positive to derive a wavelength");
        return speed_of_light / frequency_hz;
    }

    void RadiationPattern::check() const
    {
        if (data.n_rows != grid.n_zenith() || data.n_cols != grid.n_azimuth())
            throw Error("Pattern data is " + std::to_string(data.n_rows) + " x " + std::to_string(data.n_cols) +
                        " but the grid requires " + std::to_string(grid.n_zenith()) + " x " +
                        std::to_string(grid.n_azimuth()));
        if (!data.is_finite())
            throw Error("Pattern data contains non-finite samples");
    }

    ExtendedPattern extend(const RadiationPattern &pattern)
    {
        pattern.check();

        const unsigned M = pattern.grid.m();
        const unsigned N = pattern.grid.n();
        const arma::cx_mat &A = pattern.data;

        arma::cx_mat C(2 * M, 2 * N);

        // Measured hemisphere rows pass through unchanged
        C.rows(0, M) = A;

        // Continuation rows: same physical directions approached across the
        // poles, i.e. the mirrored zenith row with azimuth rotated by a half
        // turn. Entries are copied, never recomputed.
        for (unsigned s = 1; s < M; s++)
            for (unsigned c = 0; c < 2 * N; c++)
                C(M + s, c) = A(M - s, (c + N) % (2 * N));

        return ExtendedPattern{pattern.grid, std::move(C)};
    }

    RadiationPattern subsample(const RadiationPattern &pattern, unsigned zenith_factor, unsigned azimuth_factor)
    {
        pattern.check();

        const unsigned M = pattern.grid.m();
        const unsigned N = pattern.grid.n();

        auto admissible = [](unsigned half_order) {
            std::string list;
            for (unsigned f = 1; f <= half_order / 2; f++)
                if (half_order % f == 0)
                    list += (list.empty() ? "" : ", ") + std::to_string(f);
            return list;
        };

        if (zenith_factor == 0 || M % zenith_factor != 0 || M / zenith_factor < 2)
            throw NonDivisibleFactor("Zenith factor " + std::to_string(zenith_factor) +
                                     " does not divide the grid half-order " + std::to_string(M) +
                                     " (admissible factors: " + admissible(M) + ")");
        if (azimuth_factor == 0 || N % azimuth_factor != 0 || N / azimuth_factor < 2)
            throw NonDivisibleFactor("Azimuth factor " + std::to_string(azimuth_factor) +
                                     " does not divide the grid half-order " + std::to_string(N) +
                                     " (admissible factors: " + admissible(N) + ")");

        RadiationPattern out;
        out.grid = AngularGrid(M / zenith_factor, N / azimuth_factor);
        out.frequency_hz = pattern.frequency_hz;
        out.polarization = pattern.polarization;
        out.element_id = pattern.element_id;
        out.data.set_size(out.grid.n_zenith(), out.grid.n_azimuth());

        for (unsigned r = 0; r < out.grid.n_zenith(); r++)
            for (unsigned c = 0; c < out.grid.n_azimuth(); c++)
                out.data(r, c) = pattern.data(r * zenith_factor, c * azimuth_factor);

        return out;
    }

    PatternSet::PatternSet(AngularGrid grid, std::vector<double> frequencies_hz, std::vector<int> element_ids,
                           std::vector<Polarization> polarizations)
        : m_grid(grid), m_frequencies(std::move(frequencies_hz)), m_elements(std::move(element_ids)),
          m_polarizations(std::move(polarizations))
    {
        if (m_frequencies.empty())
            throw Error("PatternSet requires at least one sweep frequency");
        for (std::size_t s = 0; s < m_frequencies.size(); s++)
        {
            if (!(m_frequencies[s] > 0.0) || !std::isfinite(m_frequencies[s]))
                throw Error("Sweep frequencies must be positive and finite");
            if (s > 0 && !(m_frequencies[s] > m_frequencies[s - 1]))
                throw Error("Sweep frequencies must be strictly increasing");
        }

        if (m_elements.empty())
            throw Error("PatternSet requires at least one element id");
        std::vector<int> sorted = m_elements;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw Error("PatternSet element ids must be unique");

        if (m_polarizations.empty() || m_polarizations.size() > 2)
            throw Error("PatternSet requires one or two probe polarizations");
        if (m_polarizations.size() == 2 && m_polarizations[0] == m_polarizations[1])
            throw Error("PatternSet polarizations must be distinct");
    }

    double PatternSet::frequency_spacing() const
    {
        if (m_frequencies.size() < 2)
            throw Error("Frequency spacing requires at least two sweep points");

        double df = m_frequencies[1] - m_frequencies[0];
        for (std::size_t s = 2; s < m_frequencies.size(); s++)
            if (std::abs((m_frequencies[s] - m_frequencies[s - 1]) - df) > 1e-6 * df)
                throw Error("Sweep frequencies are not uniformly spaced");
        return df;
    }

    std::size_t PatternSet::center_frequency_index() const
    {
        double fc = 0.5 * (m_frequencies.front() + m_frequencies.back());
        std::size_t best = 0;
        for (std::size_t s = 1; s < m_frequencies.size(); s++)
            if (std::abs(m_frequencies[s] - fc) < std::abs(m_frequencies[best] - fc))
                best = s;
        return best;
    }

    std::size_t PatternSet::frequency_index(double frequency_hz) const
    {
        for (std::size_t s = 0; s < m_frequencies.size(); s++)
            if (std::abs(m_frequencies[s] - frequency_hz) <= 1e-6 * m_frequencies[s])
                return s;

        std::ostringstream msg;
        msg << "Frequency " << frequency_hz << " Hz is not part of the sweep [" << m_frequencies.front() << ", "
            << m_frequencies.back() << "] Hz with " << m_frequencies.size() << " points";
        throw Error(msg.str());
    }

    void PatternSet::insert(RadiationPattern pattern, std::size_t freq_index)
    {
        if (freq_index >= m_frequencies.size())
            throw Error("Frequency index out of range");
        if (!(pattern.grid == m_grid))
            throw Error("Pattern grid does not match the set grid");
        if (std::find(m_elements.begin(), m_elements.end(), pattern.element_id) == m_elements.end())
            throw Error("Element id " + std::to_string(pattern.element_id) + " is not declared in the set");
        if (std::find(m_polarizations.begin(), m_polarizations.end(), pattern.polarization) == m_polarizations.end())
            throw Error("Polarization " + to_string(pattern.polarization) + " is not declared in the set");

        pattern.frequency_hz = m_frequencies[freq_index];

        auto key = std::make_tuple(pattern.element_id, freq_index, static_cast<int>(pattern.polarization));
        if (m_patterns.count(key))
            throw Error("Duplicate pattern for element " + std::to_string(pattern.element_id) + ", frequency index " +
                        std::to_string(freq_index) + ", polarization " + to_string(pattern.polarization));

        m_patterns.emplace(key, std::move(pattern));
    }

    bool PatternSet::contains(int element_id, std::size_t freq_index, Polarization pol) const
    {
        return m_patterns.count(std::make_tuple(element_id, freq_index, static_cast<int>(pol))) > 0;
    }

    const RadiationPattern &PatternSet::at(int element_id, std::size_t freq_index, Polarization pol) const
    {
        auto it = m_patterns.find(std::make_tuple(element_id, freq_index, static_cast<int>(pol)));
        if (it == m_patterns.end())
            throw Error("No pattern stored for element " + std::to_string(element_id) + ", frequency index " +
                        std::to_string(freq_index) + ", polarization " + to_string(pol));
        return it->second;
    }

    PatternSet subsample(const PatternSet &set, unsigned zenith_factor, unsigned azimuth_factor)
    {
        const unsigned M = set.grid().m(), N = set.grid().n();
        if (zenith_factor == 0 || M % zenith_factor != 0 || M / zenith_factor < 2)
            throw NonDivisibleFactor("Zenith factor " + std::to_string(zenith_factor) +
                                     " does not divide the grid half-order " + std::to_string(M));
        if (azimuth_factor == 0 || N % azimuth_factor != 0 || N / azimuth_factor < 2)
            throw NonDivisibleFactor("Azimuth factor " + std::to_string(azimuth_factor) +
                                     " does not divide the grid half-order " + std::to_string(N));

        PatternSet out(AngularGrid(M / zenith_factor, N / azimuth_factor), set.frequencies_hz(), set.element_ids(),
                       set.polarizations());
        for (int e : set.element_ids())
            for (std::size_t s = 0; s < set.n_frequencies(); s++)
                for (Polarization pol : set.polarizations())
                    if (set.contains(e, s, pol))
                        out.insert(subsample(set.at(e, s, pol), zenith_factor, azimuth_factor), s);
        return out;
    }

    std::vector<Diagnostic> validate(const PatternSet &set)
    {
        std::vector<Diagnostic> diags;

        for (int e : set.element_ids())
            for (std::size_t s = 0; s < set.n_frequencies(); s++)
                for (Polarization pol : set.polarizations())
                {
                    if (!set.contains(e, s, pol))
                    {
                        diags.push_back({Diagnostic::Severity::error,
                                         "Missing pattern: element " + std::to_string(e) + ", frequency index " +
                                             std::to_string(s) + ", polarization " + to_string(pol)});
                        continue;
                    }

                    const arma::cx_mat &d = set.at(e, s, pol).data;
                    if (!d.is_finite())
                    {
                        for (unsigned r = 0; r < d.n_rows; r++)
                            for (unsigned c = 0; c < d.n_cols; c++)
                                if (!std::isfinite(d(r, c).real()) || !std::isfinite(d(r, c).imag()))
                                {
                                    diags.push_back({Diagnostic::Severity::error,
                                                     "Non-finite sample at element " + std::to_string(e) +
                                                         ", frequency index " + std::to_string(s) + ", polarization " +
                                                         to_string(pol) + ", zenith row " + std::to_string(r) +
                                                         ", azimuth column " + std::to_string(c)});
                                    r = d.n_rows; // report the first offender only
                                    break;
                                }
                        continue;
                    }

                    double peak = arma::abs(d).max();
                    arma::mat mag = arma::abs(d);
                    double floor = mag.elem(arma::find(mag > 0.0)).is_empty() ? 0.0 : mag.elem(arma::find(mag > 0.0)).min();
                    if (peak > 0.0 && floor > 0.0 && 20.0 * std::log10(peak / floor) > 200.0)
                        diags.push_back({Diagnostic::Severity::warning,
                                         "Dynamic range above 200 dB at element " + std::to_string(e) +
                                             ", frequency index " + std::to_string(s) + ", polarization " +
                                             to_string(pol)});
                    if (peak == 0.0)
                        diags.push_back({Diagnostic::Severity::warning, "All-zero pattern at element " +
                                                                            std::to_string(e) + ", frequency index " +
                                                                            std::to_string(s) + ", polarization " +
                                                                            to_string(pol)});
                }

        if (set.n_frequencies() >= 2)
        {
            try
            {
                set.frequency_spacing();
            }
            catch (const Error &e)
            {
                diags.push_back({Diagnostic::Severity::warning, e.what()});
            }
        }

        return diags;
    }

} // namespace eadf
