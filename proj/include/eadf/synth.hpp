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

#ifndef EADF_SYNTH_HPP
#define EADF_SYNTH_HPP

#include <cstdint>
#include <optional>
#include <variant>

#include "eadf/pattern.hpp"
#include "eadf/phase_center.hpp"

namespace eadf
{
    // Isotropic radiator, unit gain in every direction
    struct OmniModel
    {
    };

    // Directive patch-like radiator: cos(delta)^order towards the boresight
    // (delta being the great-circle angle from boresight), and a -30 dB back
    // lobe eps*|cos(delta)|^order behind it
    struct PatchModel
    {
        unsigned order = 2;
        double boresight_theta_rad = 0.0;
        double boresight_phi_rad = 0.0;
    };

    // Random trigonometric polynomial with zenith orders |k| <= max_zenith
    // and azimuth orders |l| <= max_azimuth, drawn deterministically from the
    // seed. Its full-sphere continuation is exactly band-limited, so spectra
    // derived from sufficiently fine grids reproduce it exactly.
    struct BandlimitedModel
    {
        unsigned max_zenith_order = 4;
        unsigned max_azimuth_order = 4;
        std::uint64_t seed = 1;
    };

    using PatternModel = std::variant<OmniModel, PatchModel, BandlimitedModel>;

    // One simulated element: its aligned pattern model, true phase-center
    // offset from the sphere center, and residual cable delay
    struct ElementSpec
    {
        PatternModel model;
        Vec3 position_m;        // true phase center
        double delta_tau_s = 0.0;
    };

    // Full description of a synthetic chamber campaign
    struct ChamberSpec
    {
        std::vector<ElementSpec> elements;
        AngularGrid grid{2, 2};
        std::vector<double> frequencies_hz; // uniform ascending sweep
        std::optional<double> snr_db;       // omit for a noiseless campaign
        std::uint64_t rng_seed = 0;
        std::vector<Polarization> polarizations{Polarization::V};

        void check() const;
    };

    // Aligned pattern of one element on a grid (no offset, no delay, no
    // noise). The frequency only stamps the output; the aligned patterns are
    // frequency-flat by construction. Peak magnitudes are normalized to at
    // most one, exactly one for the omni and patch models.
    RadiationPattern sample_a0(const ElementSpec &spec, const AngularGrid &grid, double frequency_hz,
                               Polarization pol = Polarization::V, int element_id = 0);

    // Displace a pattern's phase center: multiply each sample by
    // exp(+j*2*pi/lambda * u.offset). Magnitudes are unchanged.
    RadiationPattern apply_offset(const RadiationPattern &pattern, const Vec3 &offset_m, double wavelength_m);

    // Closed-form value of a band-limited model at an arbitrary direction
    std::complex<double> bandlimited_value(const BandlimitedModel &model, Polarization pol, const Direction &dir);

    // Normalized coefficients of a band-limited model; row k holds zenith
    // order k - max_zenith, column l azimuth order l - max_azimuth
    arma::cx_mat bandlimited_coefficients(const BandlimitedModel &model, Polarization pol);

    // Run the synthetic campaign: every element, sweep frequency and
    // polarization, with offsets, delays and (optionally) noise applied.
    // Output is bit-reproducible for a fixed spec.
    PatternSet simulate(const ChamberSpec &spec);

    // Simulate a single element on a decimated grid, keeping every
    // zenith_factor-th row and azimuth_factor-th column. Samples equal the
    // corresponding entries of subsample(simulate(spec), ...) bit-for-bit, so
    // large campaigns can be consumed piecewise without materializing the
    // full set.
    PatternSet simulate_element(const ChamberSpec &spec, std::size_t element_index, unsigned zenith_factor = 1,
                                unsigned azimuth_factor = 1);

    // Single pattern of a campaign, same bit-reproducibility guarantee
    RadiationPattern simulate_pattern(const ChamberSpec &spec, std::size_t element_index, std::size_t freq_index,
                                      Polarization pol, unsigned zenith_factor = 1, unsigned azimuth_factor = 1);

} // namespace eadf

#endif
