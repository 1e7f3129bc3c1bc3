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

#include "eadf/metrics.hpp"

#include "eadf/phase_center.hpp"

#include <algorithm>
#include <cmath>

namespace eadf
{

    double rem(std::complex<double> truth, std::complex<double> estimate)
    {
        if (truth == std::complex<double>(0.0, 0.0))
            throw UndefinedAtZero("Relative error against a zero reference is undefined");
        return std::abs(truth - estimate) / std::abs(truth);
    }

    double to_db(double linear)
    {
        if (!(linear > 0.0))
            return -300.0;
        return std::max(-300.0, 20.0 * std::log10(linear));
    }

    double from_db(double level)
    {
        return std::pow(10.0, level / 20.0);
    }

    // Empirical CDF over 0.5 dB bins spanning [-120, +20] dB; values below
    // the span count into the first bin, values above are only reflected in
    // probabilities staying below one
    static std::vector<std::pair<double, double>> make_cdf(const std::vector<double> &values_linear)
    {
        if (values_linear.empty())
            return {};

        std::vector<double> db(values_linear.size());
        for (std::size_t i = 0; i < values_linear.size(); i++)
            db[i] = to_db(values_linear[i]);
        std::sort(db.begin(), db.end());

        std::vector<std::pair<double, double>> cdf;
        cdf.reserve(281);
        for (int bin = 0; bin <= 280; bin++)
        {
            double level = -120.0 + 0.5 * bin;
            std::size_t count = std::upper_bound(db.begin(), db.end(), level) - db.begin();
            cdf.emplace_back(level, static_cast<double>(count) / static_cast<double>(db.size()));
        }
        return cdf;
    }

    // Lower-midpoint sample median in dB
    static double median_db_of(std::vector<double> values_linear)
    {
        std::sort(values_linear.begin(), values_linear.end());
        return to_db(values_linear[(values_linear.size() - 1) / 2]);
    }

    RemReport rem_map(const RadiationPattern &truth, const ArrayModel &model, const RemOptions &options)
    {
        truth.check();
        model.check();

        const ElementModel *elem = model.find(truth.element_id);
        if (!elem)
            throw Error("Model does not contain element " + std::to_string(truth.element_id));
        if (std::abs(truth.frequency_hz - model.frequency_hz) > 1e-6 * model.frequency_hz)
            throw Error("Reference pattern frequency does not match the model frequency");

        const unsigned Mt = truth.grid.m(), Nt = truth.grid.n();
        const unsigned Mb = model.build_grid.m(), Nb = model.build_grid.n();
        if (Mt % Mb != 0 || Nt % Nb != 0)
            throw Error("Reference grid is not an integer refinement of the model build grid");
        const unsigned zf = Mt / Mb, af = Nt / Nb;

        RemReport report;
        report.grid = truth.grid;
        report.rem_values.set_size(truth.grid.n_zenith(), truth.grid.n_azimuth());
        report.rem_values.fill(arma::datum::nan);
        report.mask.zeros(truth.grid.n_zenith(), truth.grid.n_azimuth());

        std::vector<double> zeniths(truth.grid.n_zenith()), azimuths(truth.grid.n_azimuth());
        for (unsigned r = 0; r < zeniths.size(); r++)
            zeniths[r] = truth.grid.zenith(r);
        for (unsigned c = 0; c < azimuths.size(); c++)
            azimuths[c] = truth.grid.azimuth(c);

        arma::cx_mat est = element_response_grid(model, *elem, truth.polarization, zeniths, azimuths);

        arma::umat coverage = options.use_coverage_mask ? main_coverage_mask(truth, options.threshold_db)
                                                        : arma::umat(truth.grid.n_zenith(), truth.grid.n_azimuth(),
                                                                     arma::fill::ones);

        std::size_t n_zero = 0, n_build = 0;
        std::vector<double> values;

        for (unsigned r = 0; r < report.rem_values.n_rows; r++)
            for (unsigned c = 0; c < report.rem_values.n_cols; c++)
            {
                bool build_dir = (r % zf == 0) && (c % af == 0);
                if (build_dir && !options.include_build_directions)
                {
                    n_build++;
                    continue;
                }

                std::complex<double> t = truth.data(r, c);
                if (t == std::complex<double>(0.0, 0.0))
                {
                    n_zero++;
                    continue;
                }

                report.rem_values(r, c) = std::abs(t - est(r, c)) / std::abs(t);
                if (coverage(r, c))
                {
                    report.mask(r, c) = 1;
                    values.push_back(report.rem_values(r, c));
                }
            }

        if (n_zero > 0)
            report.diagnostics.push_back({Diagnostic::Severity::warning,
                                          std::to_string(n_zero) + " direction(s) dropped: zero reference gain"});
        if (n_build > 0 && !options.include_build_directions)
            report.diagnostics.push_back({Diagnostic::Severity::warning,
                                          std::to_string(n_build) + " model build direction(s) excluded"});

        report.n_evaluated = values.size();
        if (values.empty())
        {
            report.median_db = arma::datum::nan;
            report.diagnostics.push_back({Diagnostic::Severity::error, "No direction entered the error statistics"});
        }
        else
        {
            report.median_db = median_db_of(values);
            report.cdf = make_cdf(values);
        }

        return report;
    }

    void RemAccumulator::add(const RemReport &report)
    {
        for (unsigned r = 0; r < report.mask.n_rows; r++)
            for (unsigned c = 0; c < report.mask.n_cols; c++)
                if (report.mask(r, c))
                    m_values.push_back(report.rem_values(r, c));
    }

    std::size_t RemAccumulator::n_values() const
    {
        return m_values.size();
    }

    double RemAccumulator::median_db() const
    {
        if (m_values.empty())
            throw DegenerateInput("No pooled error values");
        return median_db_of(m_values);
    }

    std::vector<std::pair<double, double>> RemAccumulator::cdf() const
    {
        return make_cdf(m_values);
    }

    arma::mat eadf_power_spectrum(const Eadf &eadf)
    {
        arma::mat mag = arma::abs(eadf.coefficients());
        double peak = mag.max();

        arma::mat db(mag.n_rows, mag.n_cols);
        for (unsigned r = 0; r < mag.n_rows; r++)
            for (unsigned c = 0; c < mag.n_cols; c++)
                db(r, c) = peak > 0.0 ? to_db(mag(r, c) / peak) : -300.0;
        return db;
    }

} // namespace eadf
