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

#ifndef EADF_PHASE_CENTER_HPP
#define EADF_PHASE_CENTER_HPP

#include "eadf/eadf.hpp"
#include "eadf/pattern.hpp"

namespace eadf
{
    // One cell of an angular grid
    struct GridCell
    {
        unsigned row = 0;
        unsigned col = 0;

        bool operator==(const GridCell &c) const = default;
    };

    // Frequency sweep responses of one element at a masked subset of grid
    // directions: responses(i, s) is the complex gain of cell cells[i] at
    // sweep frequency frequencies_hz[s]
    struct WidebandSweep
    {
        AngularGrid grid{2, 2};
        std::vector<GridCell> cells;
        std::vector<double> frequencies_hz;
        arma::cx_mat responses;
    };

    // Per-direction wideband delay estimates of one element
    struct DelayMap
    {
        AngularGrid grid{2, 2};
        arma::mat delays_s; // (M+1) x 2N, NaN outside the mask
        arma::umat mask;    // 1 where a delay was estimated
        std::vector<Diagnostic> diagnostics;

        std::size_t n_valid() const;
    };

    // Least-squares phase-center fit result
    struct PhaseCenterEstimate
    {
        Vec3 offset_m;                // estimated displacement from sphere center
        double delta_tau_s = 0.0;     // residual cable/trigger delay
        double rms_residual_s = 0.0;  // RMS delay residual of the fit
        std::size_t n_directions = 0; // directions entering the fit
        double condition_number = 0.0;
    };

    // Directions within threshold_db of the pattern's peak magnitude gain.
    // Throws AllMasked when no direction qualifies.
    arma::umat main_coverage_mask(const RadiationPattern &pattern, double threshold_db = 13.0);

    // Delay of one frequency sweep: the location of the largest magnitude of
    // the sweep's inverse Fourier transform, refined to a continuous maximum.
    // The result lies in the unambiguous window (-1/(2*df), 1/(2*df)]; among
    // equal peaks the smallest absolute delay wins. Requires at least two
    // uniformly spaced frequencies; throws DegenerateInput on an all-zero sweep.
    double estimate_delay(const arma::cx_vec &responses, const std::vector<double> &frequencies_hz);

    // Delay estimates over all cells of a sweep
    DelayMap build_delay_map(const WidebandSweep &sweep);

    // Convenience: mask one element of a set at its center frequency, gather
    // the per-direction sweeps and estimate all delays
    DelayMap build_delay_map(const PatternSet &set, int element_id, Polarization pol, double threshold_db = 13.0);

    // Fit delay = delta_tau - u.d / c to a delay map by linear least squares.
    // Throws RankDeficient when fewer than four directions are available or
    // the design matrix condition number exceeds 1e8.
    PhaseCenterEstimate fit_phase_center(const DelayMap &map);

    // Remove the phase-center steering factor from a measured pattern:
    // each sample is multiplied by exp(-j*2*pi/lambda * u.offset)
    RadiationPattern compensate(const RadiationPattern &pattern, const Vec3 &offset_m, double wavelength_m);

    // Enhanced characterization: estimate each element's phase center from the
    // sweep, compensate the pattern at the model frequency, and store the
    // spectra of the compensated patterns together with the estimates
    ArrayModel build_enhanced_model(const PatternSet &set, double frequency_hz, double threshold_db = 13.0,
                                    double power_fraction = 1.0);

} // namespace eadf

#endif
