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

#ifndef EADF_METRICS_HPP
#define EADF_METRICS_HPP

#include "eadf/eadf.hpp"
#include "eadf/pattern.hpp"

namespace eadf
{
    // Relative error magnitude |truth - estimate| / |truth|.
    // Throws UndefinedAtZero when the reference is exactly zero.
    double rem(std::complex<double> truth, std::complex<double> estimate);

    double to_db(double linear);   // 20*log10, floored at -300 dB
    double from_db(double level);  // inverse of to_db

    struct RemOptions
    {
        double threshold_db = 13.0;          // main-coverage threshold below peak gain
        bool use_coverage_mask = true;       // false: evaluate the whole sphere
        bool include_build_directions = false; // true: keep directions the model was built from
    };

    // Reconstruction error map of one element against a reference pattern
    struct RemReport
    {
        AngularGrid grid{2, 2};
        arma::mat rem_values; // (M+1) x 2N, NaN where not evaluated
        arma::umat mask;      // 1 where a value entered the statistics
        std::vector<std::pair<double, double>> cdf; // (level_db, cumulative probability)
        double median_db = 0.0;
        std::size_t n_evaluated = 0;
        std::vector<Diagnostic> diagnostics;
    };

    // Evaluate a model element at every direction of a reference pattern and
    // report the per-direction relative error magnitudes. Directions are
    // dropped from the statistics when excluded by the coverage mask, when
    // they coincide with model build directions (unless included), or when
    // the reference is zero (reported as a diagnostic).
    RemReport rem_map(const RadiationPattern &truth, const ArrayModel &model, const RemOptions &options = {});

    // Pool per-direction errors of several reports into one distribution
    class RemAccumulator
    {
      public:
        void add(const RemReport &report);
        std::size_t n_values() const;
        double median_db() const; // throws DegenerateInput when empty
        std::vector<std::pair<double, double>> cdf() const;

      private:
        std::vector<double> m_values;
    };

    // Coefficient power of a spectrum in dB relative to its peak coefficient,
    // floored at -300 dB; same shape as the stored block
    arma::mat eadf_power_spectrum(const Eadf &eadf);

} // namespace eadf

#endif
