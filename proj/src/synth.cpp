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

#include "eadf/synth.hpp"

#include <cmath>
#include <limits>

namespace eadf
{

    // ------------------------- deterministic RNG -------------------------
    //
    // All randomness is drawn from a counter-based hash of the seed and the
    // sample coordinates, never from sequential generator state. Simulated
    // values therefore do not depend on evaluation order, which makes
    // decimated or per-element simulation bit-identical to slicing the full
    // campaign.

    static std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    static std::uint64_t mix(std::uint64_t h, std::uint64_t v)
    {
        return splitmix64(h ^ (v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2)));
    }

    // Standard complex normal (unit variance per component) at a hashed counter
    static std::complex<double> hashed_normal(std::uint64_t h)
    {
        std::uint64_t b1 = splitmix64(h ^ 0x452821E638D01377ULL);
        std::uint64_t b2 = splitmix64(h ^ 0x13198A2E03707344ULL);
        double u1 = (static_cast<double>(b1 >> 11) + 1.0) * 0x1.0p-53; // (0, 1]
        double u2 = static_cast<double>(b2 >> 11) * 0x1.0p-53;         // [0, 1)
        double rad = std::sqrt(-2.0 * std::log(u1));
        return {rad * std::cos(2.0 * pi * u2), rad * std::sin(2.0 * pi * u2)};
    }

    // Receiver noise of one sample, keyed by campaign seed and the sample's
    // full-resolution coordinates
    static std::complex<double> chamber_noise(std::uint64_t seed, std::uint64_t elem, std::uint64_t freq,
                                              std::uint64_t pol, std::uint64_t row, std::uint64_t col)
    {
        std::uint64_t h = splitmix64(seed ^ 0x243F6A8885A308D3ULL);
        h = mix(h, elem);
        h = mix(h, freq);
        h = mix(h, pol);
        h = mix(h, row);
        h = mix(h, col);
        return hashed_normal(h);
    }

    static double ipow(double base, unsigned e)
    {
        double r = 1.0;
        while (e)
        {
            if (e & 1u)
                r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    // ------------------------- pattern models -------------------------

    arma::cx_mat bandlimited_coefficients(const BandlimitedModel &model, Polarization pol)
    {
        const unsigned Kz = model.max_zenith_order, Ka = model.max_azimuth_order;
        arma::cx_mat g(2 * Kz + 1, 2 * Ka + 1, arma::fill::zeros);

        std::uint64_t base = splitmix64(model.seed ^ 0x082EFA98EC4E6C89ULL);
        base = mix(base, pol == Polarization::H ? 2ULL : 1ULL);

        // Row index kz holds zenith order kz - Kz, column la azimuth order
        // la - Ka. Orders are drawn for kappa >= 0 and mirrored with the
        // factor (-1)^lambda, which makes the full-sphere continuation of the
        // sampled series coincide with the series itself. For kappa = 0 that
        // factor forces the odd-lambda coefficients to vanish.
        for (unsigned kappa = 0; kappa <= Kz; kappa++)
            for (int lambda = -static_cast<int>(Ka); lambda <= static_cast<int>(Ka); lambda++)
            {
                bool odd = (lambda % 2) != 0;
                if (kappa == 0 && odd)
                    continue;

                std::uint64_t h = mix(base, kappa);
                h = mix(h, static_cast<std::uint64_t>(lambda + static_cast<int>(Ka)));
                std::complex<double> z = hashed_normal(h);

                g(Kz + kappa, Ka + lambda) = z;
                if (kappa > 0)
                    g(Kz - kappa, Ka + lambda) = odd ? -z : z;
            }

        double scale = arma::accu(arma::abs(g));
        if (scale > 0.0)
            g /= scale; // peak magnitude of the series is at most one

        return g;
    }

    std::complex<double> bandlimited_value(const BandlimitedModel &model, Polarization pol, const Direction &dir)
    {
        arma::cx_mat g = bandlimited_coefficients(model, pol);
        const int Kz = static_cast<int>(model.max_zenith_order), Ka = static_cast<int>(model.max_azimuth_order);

        std::complex<double> sum(0.0, 0.0);
        for (int kappa = -Kz; kappa <= Kz; kappa++)
            for (int lambda = -Ka; lambda <= Ka; lambda++)
                sum += g(kappa + Kz, lambda + Ka) *
                       std::polar(1.0, kappa * dir.theta() + lambda * dir.phi());
        return sum;
    }

    // Aligned pattern values at (zenith(rows[i]), azimuth(cols[j])) of a full
    // resolution grid. Angles are always derived from full-grid indices so
    // that decimated simulation reproduces full-campaign samples exactly.
    static arma::cx_mat a0_values(const PatternModel &model, Polarization pol, const AngularGrid &fine,
                                  const std::vector<unsigned> &rows, const std::vector<unsigned> &cols)
    {
        arma::cx_mat out(rows.size(), cols.size());

        if (std::holds_alternative<OmniModel>(model))
        {
            out.ones();
            return out;
        }

        if (const PatchModel *patch = std::get_if<PatchModel>(&model))
        {
            Vec3 b = unit_vector(Direction(patch->boresight_theta_rad, patch->boresight_phi_rad));
            const double eps = std::pow(10.0, -30.0 / 20.0); // -30 dB back lobe

            for (std::size_t i = 0; i < rows.size(); i++)
            {
                double theta = fine.zenith(rows[i]);
                double st = std::sin(theta), ct = std::cos(theta);
                for (std::size_t j = 0; j < cols.size(); j++)
                {
                    double phi = fine.azimuth(cols[j]);
                    double ca = st * (std::cos(phi) * b.x + std::sin(phi) * b.y) + ct * b.z;
                    if (std::abs(ca) <= 4.0 * std::numeric_limits<double>::epsilon())
                        ca = 0.0; // exact null in the plane orthogonal to the boresight
                    double val = ca >= 0.0 ? ipow(ca, patch->order) : eps * ipow(-ca, patch->order);
                    out(i, j) = val;
                }
            }
            return out;
        }

        const BandlimitedModel &bl = std::get<BandlimitedModel>(model);
        if (bl.max_zenith_order >= fine.m() || bl.max_azimuth_order >= fine.n())
            throw BandLimitViolation("Band-limited model with orders " + std::to_string(bl.max_zenith_order) + ", " +
                                     std::to_string(bl.max_azimuth_order) +
                                     " does not fit a grid with half-orders " + std::to_string(fine.m()) + ", " +
                                     std::to_string(fine.n()));

        arma::cx_mat g = bandlimited_coefficients(bl, pol);

        arma::cx_mat Ez(rows.size(), g.n_rows);
        for (std::size_t i = 0; i < rows.size(); i++)
            for (unsigned k = 0; k < g.n_rows; k++)
                Ez(i, k) = std::polar(1.0, fine.zenith(rows[i]) *
                                               (static_cast<double>(k) - static_cast<double>(bl.max_zenith_order)));

        arma::cx_mat Ea(cols.size(), g.n_cols);
        for (std::size_t j = 0; j < cols.size(); j++)
            for (unsigned l = 0; l < g.n_cols; l++)
                Ea(j, l) = std::polar(1.0, fine.azimuth(cols[j]) *
                                               (static_cast<double>(l) - static_cast<double>(bl.max_azimuth_order)));

        out = Ez * g * Ea.st();
        return out;
    }

    RadiationPattern sample_a0(const ElementSpec &spec, const AngularGrid &grid, double frequency_hz, Polarization pol,
                               int element_id)
    {
        std::vector<unsigned> rows(grid.n_zenith()), cols(grid.n_azimuth());
        for (unsigned r = 0; r < grid.n_zenith(); r++)
            rows[r] = r;
        for (unsigned c = 0; c < grid.n_azimuth(); c++)
            cols[c] = c;

        RadiationPattern out;
        out.grid = grid;
        out.frequency_hz = frequency_hz;
        out.polarization = pol;
        out.element_id = element_id;
        out.data = a0_values(spec.model, pol, grid, rows, cols);
        return out;
    }

    RadiationPattern apply_offset(const RadiationPattern &pattern, const Vec3 &offset_m, double wavelength_m)
    {
        pattern.check();
        if (!offset_m.is_finite())
            throw Error("Offset must be finite");
        if (!(wavelength_m > 0.0) || !std::isfinite(wavelength_m))
            throw Error("Wavelength must be positive and finite");

        const double k = 2.0 * pi / wavelength_m;

        RadiationPattern out = pattern;
        for (unsigned r = 0; r < out.data.n_rows; r++)
        {
            double theta = out.grid.zenith(r);
            double st = std::sin(theta), ct = std::cos(theta);
            for (unsigned c = 0; c < out.data.n_cols; c++)
            {
                double phi = out.grid.azimuth(c);
                double dot = st * (std::cos(phi) * offset_m.x + std::sin(phi) * offset_m.y) + ct * offset_m.z;
                out.data(r, c) *= std::polar(1.0, k * dot);
            }
        }
        return out;
    }

    void ChamberSpec::check() const
    {
        if (elements.empty())
            throw Error("Chamber spec declares no elements");
        for (const ElementSpec &e : elements)
        {
            if (!e.position_m.is_finite())
                throw Error("Element positions must be finite");
            if (!std::isfinite(e.delta_tau_s))
                throw Error("Element delays must be finite");
            if (const BandlimitedModel *bl = std::get_if<BandlimitedModel>(&e.model))
                if (bl->max_zenith_order >= grid.m() || bl->max_azimuth_order >= grid.n())
                    throw BandLimitViolation("Band-limited model with orders " +
                                             std::to_string(bl->max_zenith_order) + ", " +
                                             std::to_string(bl->max_azimuth_order) +
                                             " does not fit a grid with half-orders " + std::to_string(grid.m()) +
                                             ", " + std::to_string(grid.n()));
        }

        if (frequencies_hz.empty())
            throw Error("Chamber spec declares no sweep frequencies");
        for (std::size_t s = 0; s < frequencies_hz.size(); s++)
        {
            if (!(frequencies_hz[s] > 0.0) || !std::isfinite(frequencies_hz[s]))
                throw Error("Sweep frequencies must be positive and finite");
            if (s > 0 && !(frequencies_hz[s] > frequencies_hz[s - 1]))
                throw Error("Sweep frequencies must be strictly increasing");
        }

        if (snr_db && !std::isfinite(*snr_db))
            throw Error("SNR must be finite when given");

        if (polarizations.empty() || polarizations.size() > 2)
            throw Error("Chamber spec requires one or two probe polarizations");
        if (polarizations.size() == 2 && polarizations[0] == polarizations[1])
            throw Error("Chamber spec polarizations must be distinct");
    }

    // ------------------------- campaign simulation -------------------------

    RadiationPattern simulate_pattern(const ChamberSpec &spec, std::size_t element_index, std::size_t freq_index,
                                      Polarization pol, unsigned zenith_factor, unsigned azimuth_factor)
    {
        spec.check();
        if (element_index >= spec.elements.size())
            throw Error("Element index out of range");
        if (freq_index >= spec.frequencies_hz.size())
            throw Error("Frequency index out of range");

        const AngularGrid &fine = spec.grid;
        const unsigned M = fine.m(), N = fine.n();
        if (zenith_factor == 0 || M % zenith_factor != 0 || M / zenith_factor < 2)
            throw NonDivisibleFactor("Zenith factor " + std::to_string(zenith_factor) +
                                     " does not divide the grid half-order " + std::to_string(M));
        if (azimuth_factor == 0 || N % azimuth_factor != 0 || N / azimuth_factor < 2)
            throw NonDivisibleFactor("Azimuth factor " + std::to_string(azimuth_factor) +
                                     " does not divide the grid half-order " + std::to_string(N));

        AngularGrid coarse(M / zenith_factor, N / azimuth_factor);
        std::vector<unsigned> rows(coarse.n_zenith()), cols(coarse.n_azimuth());
        for (unsigned r = 0; r < coarse.n_zenith(); r++)
            rows[r] = r * zenith_factor;
        for (unsigned c = 0; c < coarse.n_azimuth(); c++)
            cols[c] = c * azimuth_factor;

        const ElementSpec &elem = spec.elements[element_index];
        const double f = spec.frequencies_hz[freq_index];
        const double k = 2.0 * pi * f / speed_of_light;
        const double cable_phase = -2.0 * pi * f * elem.delta_tau_s;
        const double sigma = spec.snr_db ? std::pow(10.0, -*spec.snr_db / 20.0) : 0.0;
        const double noise_scale = sigma / std::sqrt(2.0);
        const std::uint64_t pol_key = pol == Polarization::H ? 0 : 1;

        arma::cx_mat data = a0_values(elem.model, pol, fine, rows, cols);

        for (std::size_t i = 0; i < rows.size(); i++)
        {
            double theta = fine.zenith(rows[i]);
            double st = std::sin(theta), ct = std::cos(theta);
            for (std::size_t j = 0; j < cols.size(); j++)
            {
                double phi = fine.azimuth(cols[j]);
                double dot =
                    st * (std::cos(phi) * elem.position_m.x + std::sin(phi) * elem.position_m.y) + ct * elem.position_m.z;
                data(i, j) *= std::polar(1.0, k * dot + cable_phase);
                if (noise_scale > 0.0)
                    data(i, j) += noise_scale * chamber_noise(spec.rng_seed, element_index, freq_index, pol_key,
                                                              rows[i], cols[j]);
            }
        }

        RadiationPattern out;
        out.grid = coarse;
        out.frequency_hz = f;
        out.polarization = pol;
        out.element_id = static_cast<int>(element_index);
        out.data = std::move(data);
        return out;
    }

    PatternSet simulate_element(const ChamberSpec &spec, std::size_t element_index, unsigned zenith_factor,
                                unsigned azimuth_factor)
    {
        spec.check();
        if (element_index >= spec.elements.size())
            throw Error("Element index out of range");

        const unsigned M = spec.grid.m(), N = spec.grid.n();
        if (zenith_factor == 0 || M % zenith_factor != 0 || M / zenith_factor < 2)
            throw NonDivisibleFactor("Zenith factor " + std::to_string(zenith_factor) +
                                     " does not divide the grid half-order " + std::to_string(M));
        if (azimuth_factor == 0 || N % azimuth_factor != 0 || N / azimuth_factor < 2)
            throw NonDivisibleFactor("Azimuth factor " + std::to_string(azimuth_factor) +
                                     " does not divide the grid half-order " + std::to_string(N));

        AngularGrid coarse(M / zenith_factor, N / azimuth_factor);
        PatternSet out(coarse, spec.frequencies_hz, {static_cast<int>(element_index)}, spec.polarizations);

        for (std::size_t s = 0; s < spec.frequencies_hz.size(); s++)
            for (Polarization pol : spec.polarizations)
                out.insert(simulate_pattern(spec, element_index, s, pol, zenith_factor, azimuth_factor), s);
        return out;
    }

    PatternSet simulate(const ChamberSpec &spec)
    {
        spec.check();

        std::vector<int> ids(spec.elements.size());
        for (std::size_t e = 0; e < ids.size(); e++)
            ids[e] = static_cast<int>(e);

        PatternSet out(spec.grid, spec.frequencies_hz, ids, spec.polarizations);
        for (std::size_t e = 0; e < spec.elements.size(); e++)
            for (std::size_t s = 0; s < spec.frequencies_hz.size(); s++)
                for (Polarization pol : spec.polarizations)
                    out.insert(simulate_pattern(spec, e, s, pol), s);
        return out;
    }

} // namespace eadf
