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

#ifndef EADF_EADF_HPP
#define EADF_EADF_HPP

#include <complex>
#include <optional>
#include <vector>

#include "eadf/pattern.hpp"

namespace eadf
{
    // Effective aperture distribution function: the centered 2D spatial
    // frequency spectrum of a full-sphere pattern continuation.
    //
    // For a grid with half-orders M and N the full spectrum is 2M x 2N with
    // the DC coefficient at row M, column N (zero based). Row r holds zenith
    // order r - M in [-M, M-1], column c holds azimuth order c - N in
    // [-N, N-1]. A truncated instance stores only a centered rectangular
    // block; coefficients outside the block are implicitly zero.
    class Eadf
    {
      public:
        // Full 2M x 2N spectrum
        Eadf(AngularGrid grid, arma::cx_mat coefficients);

        // Centered block of a spectrum; bounds are zero-based inclusive row
        // and column indices into the full 2M x 2N index space
        Eadf(AngularGrid grid, arma::cx_mat block, unsigned row_lo, unsigned row_hi, unsigned col_lo, unsigned col_hi);

        const AngularGrid &grid() const
        {
            return m_grid;
        }
        const arma::cx_mat &coefficients() const
        {
            return m_coeff;
        }

        unsigned row_lo() const
        {
            return m_row_lo;
        }
        unsigned row_hi() const
        {
            return m_row_hi;
        }
        unsigned col_lo() const
        {
            return m_col_lo;
        }
        unsigned col_hi() const
        {
            return m_col_hi;
        }

        bool truncated() const; // true when the stored block is smaller than 2M x 2N

        // Zenith order of stored row k (k = 0 addresses row_lo), in [-M, M-1]
        int zenith_order(unsigned k) const;

        // Azimuth order of stored column l, in [-N, N-1]
        int azimuth_order(unsigned l) const;

        double total_power() const; // sum of squared coefficient magnitudes

      private:
        AngularGrid m_grid;
        arma::cx_mat m_coeff;
        unsigned m_row_lo, m_row_hi, m_col_lo, m_col_hi;
    };

    // Forward transform: the centered, normalized 2D discrete Fourier
    // spectrum of a full-sphere pattern continuation (normalization 1/(4MN))
    Eadf forward(const ExtendedPattern &pattern);

    // Evaluate the inverse transform at one arbitrary direction. For an
    // untruncated spectrum this interpolates the underlying pattern: at grid
    // directions it reproduces the continuation samples exactly (up to
    // rounding), and it is 2*pi-periodic in both angles.
    std::complex<double> reconstruct(const Eadf &eadf, const Direction &dir);

    // Evaluate the inverse transform on a cartesian product of angles;
    // element (i, j) is the value at (zenith_rad[i], azimuth_rad[j])
    arma::cx_mat reconstruct_grid(const Eadf &eadf, const std::vector<double> &zenith_rad,
                                  const std::vector<double> &azimuth_rad);

    // Smallest centered block retaining at least the given fraction of total
    // spectral power. Fraction 1.0 returns the input unchanged. Ties between
    // equal-area candidates prefer fewer rows.
    Eadf truncate(const Eadf &eadf, double power_fraction);

    // Spatial frequency budget of an element offset from the measurement
    // sphere center, in cycles per radian of observation angle
    struct SpatialFreqBudget
    {
        double f_zenith_max = 0.0;  // sqrt(x^2+y^2+z^2) / lambda
        double f_azimuth_max = 0.0; // sqrt(x^2+y^2) / lambda

        bool zenith_unbounded() const; // true when f_zenith_max == 0
        bool azimuth_unbounded() const;

        double max_zenith_step() const;  // largest alias-free step, radians
        double max_azimuth_step() const; // infinity when unbounded
    };

    SpatialFreqBudget max_spatial_freq(const Vec3 &offset_m, double wavelength_m);

    enum class ModelMode
    {
        conventional, // spectra of the raw measured patterns
        enhanced      // spectra of phase-compensated patterns plus phase centers
    };

    std::string to_string(ModelMode mode);
    ModelMode model_mode_from_string(const std::string &s);

    // Spectra and phase-center data of one array element
    struct ElementModel
    {
        int element_id = 0;
        std::optional<Eadf> q_h;  // horizontal polarization spectrum
        std::optional<Eadf> q_v;  // vertical polarization spectrum
        Vec3 phase_center;        // estimated offset d, meters; zero in conventional mode
        double delta_tau_s = 0.0; // fitted residual cable delay, seconds (diagnostic)
        double fit_rms_residual_s = 0.0;
        double fit_condition = 0.0;
        std::size_t fit_directions = 0;
    };

    // Compact polarimetric model of a measured array at one frequency
    struct ArrayModel
    {
        ModelMode mode = ModelMode::conventional;
        double frequency_hz = 0.0;
        AngularGrid build_grid{2, 2}; // grid the spectra were derived from
        std::vector<ElementModel> elements;

        double wavelength() const;
        const ElementModel *find(int element_id) const;
        void check() const; // ModeMismatch when enhanced mode lacks finite phase centers
    };

    // Response of one modeled element at one direction and polarization. In
    // enhanced mode the interpolated compensated pattern is re-modulated by
    // the element's phase-center steering factor. Returns zero when the
    // polarization was not measured.
    std::complex<double> element_response(const ArrayModel &model, const ElementModel &elem, Polarization pol,
                                          const Direction &dir);

    // Same response evaluated over a cartesian product of angles
    arma::cx_mat element_response_grid(const ArrayModel &model, const ElementModel &elem, Polarization pol,
                                       const std::vector<double> &zenith_rad, const std::vector<double> &azimuth_rad);

    // Polarimetric array response at one direction: one row per element in
    // model order, column 0 horizontal, column 1 vertical
    arma::cx_mat array_response(const ArrayModel &model, const Direction &dir);

    // Conventional characterization: per-element spectra of the uncompensated
    // patterns at one sweep frequency, optionally truncated
    ArrayModel build_conventional_model(const PatternSet &set, double frequency_hz, double power_fraction = 1.0);

} // namespace eadf

#endif
