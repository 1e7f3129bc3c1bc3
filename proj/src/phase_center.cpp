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

#include "eadf/phase_center.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <limits>
#include <thread>

namespace eadf
{

    // Run fn(i) for i in [0, n) on up to EADF_THREADS workers (default: all
    // hardware threads). Work items must be independent.
    static void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn)
    {
        std::size_t n_threads = std::thread::hardware_concurrency();
        if (const char *env = std::getenv("EADF_THREADS"))
        {
            char *end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end && *end == '\0' && v > 0)
                n_threads = static_cast<std::size_t>(v);
        }
        n_threads = std::max<std::size_t>(1, std::min(n_threads, n));

        if (n_threads == 1)
        {
            for (std::size_t i = 0; i < n; i++)
                fn(i);
            return;
        }

        std::vector<std::thread> workers;
        workers.reserve(n_threads);
        for (std::size_t t = 0; t < n_threads; t++)
            workers.emplace_back([&, t]() {
                for (std::size_t i = t; i < n; i += n_threads)
                    fn(i);
            });
        for (std::thread &w : workers)
            w.join();
    }

    std::size_t DelayMap::n_valid() const
    {
        return arma::accu(mask);
    }

    arma::umat main_coverage_mask(const RadiationPattern &pattern, double threshold_db)
    {
        pattern.check();
        if (!(threshold_db > 0.0) || !std::isfinite(threshold_db))
            throw Error("Coverage threshold must be positive and finite");

        arma::mat mag = arma::abs(pattern.data);
        double peak = mag.max();
        if (!(peak > 0.0))
            throw AllMasked("Coverage mask of an all-zero pattern is empty");

        double floor = peak * std::pow(10.0, -threshold_db / 20.0);
        return mag >= floor;
    }

    // Magnitude-squared beamformer output |sum_s a_s exp(j*2*pi*f_s*tau)|^2
    // together with its first two tau derivatives. Frequencies are taken
    // relative to the first sweep point, which leaves the magnitude unchanged.
    namespace
    {
        struct SweepObjective
        {
            const arma::cx_vec &a;
            std::vector<double> omega; // 2*pi*(f_s - f_0)

            SweepObjective(const arma::cx_vec &responses, const std::vector<double> &freqs) : a(responses)
            {
                omega.resize(freqs.size());
                for (std::size_t s = 0; s < freqs.size(); s++)
                    omega[s] = 2.0 * pi * (freqs[s] - freqs[0]);
            }

            double value(double tau) const
            {
                std::complex<double> p(0.0, 0.0);
                for (std::size_t s = 0; s < omega.size(); s++)
                    p += a(s) * std::polar(1.0, omega[s] * tau);
                return std::norm(p);
            }

            // value, d/dtau, d2/dtau2
            void derivatives(double tau, double &g, double &dg, double &ddg) const
            {
                std::complex<double> p(0.0, 0.0), dp(0.0, 0.0), ddp(0.0, 0.0);
                for (std::size_t s = 0; s < omega.size(); s++)
                {
                    std::complex<double> e = a(s) * std::polar(1.0, omega[s] * tau);
                    p += e;
                    dp += std::complex<double>(0.0, omega[s]) * e;
                    ddp -= omega[s] * omega[s] * e;
                }
                g = std::norm(p);
                dg = 2.0 * std::real(std::conj(p) * dp);
                ddg = 2.0 * (std::real(std::conj(p) * ddp) + std::norm(dp));
            }
        };
    } // namespace

    double estimate_delay(const arma::cx_vec &responses, const std::vector<double> &frequencies_hz)
    {
        const std::size_t S = responses.n_elem;
        if (S < 2 || frequencies_hz.size() != S)
            throw Error("Delay estimation requires at least two sweep responses with matching frequencies");

        const double df = frequencies_hz[1] - frequencies_hz[0];
        if (!(df > 0.0))
            throw Error("Sweep frequencies must be strictly increasing");
        for (std::size_t s = 1; s + 1 < S; s++)
            if (std::abs((frequencies_hz[s + 1] - frequencies_hz[s]) - df) > 1e-6 * df)
                throw Error("Delay estimation requires a uniformly spaced sweep");

        bool all_zero = true;
        for (std::size_t s = 0; s < S && all_zero; s++)
            all_zero = responses(s) == std::complex<double>(0.0, 0.0);
        if (all_zero)
            throw DegenerateInput("Cannot estimate a delay from an all-zero sweep");

        // Coarse search: zero-padded inverse DFT of the sweep; bin g holds the
        // beamformer magnitude at tau = g / (G * df), taken modulo the
        // unambiguous window. Bins are visited by increasing |tau| with
        // positive delays first, and a later bin must be strictly better, so
        // ties resolve towards the smallest absolute delay.
        std::size_t G = 64;
        while (G < 8 * S)
            G *= 2;

        arma::cx_vec padded(G, arma::fill::zeros);
        padded.head(S) = responses;
        arma::cx_vec bins = arma::ifft(padded);

        const double bin_tau = 1.0 / (static_cast<double>(G) * df);
        double best_mag = -1.0, best_tau = 0.0;
        auto visit = [&](std::size_t idx, double tau) {
            double m = std::norm(bins(idx));
            if (m > best_mag)
            {
                best_mag = m;
                best_tau = tau;
            }
        };
        visit(0, 0.0);
        for (std::size_t k = 1; k <= G / 2; k++)
        {
            visit(k, static_cast<double>(k) * bin_tau);
            if (k < G / 2)
                visit(G - k, -static_cast<double>(k) * bin_tau);
        }

        // Continuous refinement inside the coarse bin's neighborhood: golden
        // section, then Newton polish on the magnitude-squared objective
        SweepObjective obj(responses, frequencies_hz);

        double lo = best_tau - bin_tau, hi = best_tau + bin_tau;
        constexpr double inv_phi = 0.6180339887498949;
        double x1 = hi - inv_phi * (hi - lo);
        double x2 = lo + inv_phi * (hi - lo);
        double f1 = obj.value(x1), f2 = obj.value(x2);
        for (int it = 0; it < 18; it++)
        {
            if (f1 < f2)
            {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = obj.value(x2);
            }
            else
            {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = obj.value(x1);
            }
        }

        double tau = (f1 > f2) ? x1 : x2;
        double tau_val = std::max(f1, f2);
        for (int it = 0; it < 8; it++)
        {
            double g, dg, ddg;
            obj.derivatives(tau, g, dg, ddg);
            if (!(ddg < 0.0))
                break;
            double step = -dg / ddg;
            double next = tau + step;
            if (next < best_tau - bin_tau || next > best_tau + bin_tau)
                break;
            if (next == tau)
                break;
            tau = next;
            if (std::abs(step) < 1e-18)
                break;
        }
        if (obj.value(tau) < tau_val)
            tau = (f1 > f2) ? x1 : x2; // Newton made things worse, keep the golden result

        // Wrap into the unambiguous window (-1/(2*df), 1/(2*df)]
        const double period = 1.0 / df;
        tau -= period * std::round(tau / period);
        if (tau <= -0.5 * period)
            tau += period;
        if (tau > 0.5 * period)
            tau -= period;

        return tau;
    }

    DelayMap build_delay_map(const WidebandSweep &sweep)
    {
        if (sweep.responses.n_rows != sweep.cells.size() || sweep.responses.n_cols != sweep.frequencies_hz.size())
            throw Error("Sweep response matrix shape does not match its cells and frequencies");
        for (const GridCell &cell : sweep.cells)
            if (cell.row >= sweep.grid.n_zenith() || cell.col >= sweep.grid.n_azimuth())
                throw Error("Sweep cell outside the grid");

        DelayMap map;
        map.grid = sweep.grid;
        map.delays_s.set_size(sweep.grid.n_zenith(), sweep.grid.n_azimuth());
        map.delays_s.fill(arma::datum::nan);
        map.mask.zeros(sweep.grid.n_zenith(), sweep.grid.n_azimuth());

        std::vector<std::string> failures(sweep.cells.size());
        std::vector<char> ok(sweep.cells.size(), 0);

        parallel_for(sweep.cells.size(), [&](std::size_t i) {
            const GridCell &cell = sweep.cells[i];
            try
            {
                double tau = estimate_delay(sweep.responses.row(i).st(), sweep.frequencies_hz);
                map.delays_s(cell.row, cell.col) = tau;
                ok[i] = 1;
            }
            catch (const DegenerateInput &e)
            {
                failures[i] = e.what();
            }
        });

        for (std::size_t i = 0; i < sweep.cells.size(); i++)
        {
            const GridCell &cell = sweep.cells[i];
            if (ok[i])
                map.mask(cell.row, cell.col) = 1;
            else
                map.diagnostics.push_back({Diagnostic::Severity::warning,
                                           "Dropped zenith row " + std::to_string(cell.row) + ", azimuth column " +
                                               std::to_string(cell.col) + ": " + failures[i]});
        }

        if (map.n_valid() == 0)
            throw AllMasked("No direction of the sweep yielded a delay estimate");

        return map;
    }

    DelayMap build_delay_map(const PatternSet &set, int element_id, Polarization pol, double threshold_db)
    {
        set.frequency_spacing(); // requires a uniform multi-point sweep

        const std::size_t s_center = set.center_frequency_index();
        arma::umat mask = main_coverage_mask(set.at(element_id, s_center, pol), threshold_db);

        WidebandSweep sweep;
        sweep.grid = set.grid();
        sweep.frequencies_hz = set.frequencies_hz();
        for (unsigned r = 0; r < mask.n_rows; r++)
            for (unsigned c = 0; c < mask.n_cols; c++)
                if (mask(r, c))
                    sweep.cells.push_back({r, c});

        sweep.responses.set_size(sweep.cells.size(), set.n_frequencies());
        for (std::size_t s = 0; s < set.n_frequencies(); s++)
        {
            const arma::cx_mat &data = set.at(element_id, s, pol).data;
            for (std::size_t i = 0; i < sweep.cells.size(); i++)
                sweep.responses(i, s) = data(sweep.cells[i].row, sweep.cells[i].col);
        }

        return build_delay_map(sweep);
    }

    PhaseCenterEstimate fit_phase_center(const DelayMap &map)
    {
        if (map.delays_s.n_rows != map.grid.n_zenith() || map.delays_s.n_cols != map.grid.n_azimuth() ||
            arma::size(map.mask) != arma::size(map.delays_s))
            throw Error("Delay map shape does not match its grid");

        std::vector<GridCell> cells;
        for (unsigned r = 0; r < map.mask.n_rows; r++)
            for (unsigned c = 0; c < map.mask.n_cols; c++)
                if (map.mask(r, c))
                {
                    if (!std::isfinite(map.delays_s(r, c)))
                        throw Error("Delay map holds a non-finite delay inside its mask");
                    cells.push_back({r, c});
                }

        const std::size_t T = cells.size();
        if (T < 4)
            throw RankDeficient("Phase-center fit needs at least 4 masked directions, got " + std::to_string(T));

        // Model: tau = delta_tau - u.d / c. Solved in distance units, i.e.
        // [u, -1] [d; c*delta_tau] = -c*tau, so the conditioning reflects the
        // mask geometry rather than the second-vs-nanosecond unit gap.
        arma::mat A(T, 4);
        arma::vec b(T);
        for (std::size_t i = 0; i < T; i++)
        {
            Vec3 u = unit_vector(Direction(map.grid.zenith(cells[i].row), map.grid.azimuth(cells[i].col)));
            A(i, 0) = u.x;
            A(i, 1) = u.y;
            A(i, 2) = u.z;
            A(i, 3) = -1.0;
            b(i) = -speed_of_light * map.delays_s(cells[i].row, cells[i].col);
        }

        arma::mat U, V;
        arma::vec sv;
        if (!arma::svd_econ(U, sv, V, A, "both"))
            throw Error("SVD of the phase-center design matrix failed");

        const double cond_limit = 1e8;
        if (sv(3) <= 0.0 || sv(3) < sv(0) * std::numeric_limits<double>::epsilon() * 100.0)
            throw RankDeficient("Phase-center design matrix is rank deficient (singular values " +
                                std::to_string(sv(0)) + " .. " + std::to_string(sv(3)) + ")");
        double cond = sv(0) / sv(3);
        if (cond > cond_limit)
            throw RankDeficient("Phase-center design matrix condition number " + std::to_string(cond) +
                                " exceeds the limit " + std::to_string(cond_limit));

        arma::vec x = V * ((U.t() * b) / sv);

        PhaseCenterEstimate est;
        est.offset_m = {x(0), x(1), x(2)};
        est.delta_tau_s = x(3) / speed_of_light;
        est.n_directions = T;
        est.condition_number = cond;
        est.rms_residual_s = arma::norm(A * x - b, 2) / std::sqrt(static_cast<double>(T)) / speed_of_light;
        return est;
    }

    RadiationPattern compensate(const RadiationPattern &pattern, const Vec3 &offset_m, double wavelength_m)
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
            double st = std::sin(out.grid.zenith(r)), ct = std::cos(out.grid.zenith(r));
            for (unsigned c = 0; c < out.data.n_cols; c++)
            {
                double phi = out.grid.azimuth(c);
                double dot = st * (std::cos(phi) * offset_m.x + std::sin(phi) * offset_m.y) + ct * offset_m.z;
                out.data(r, c) *= std::polar(1.0, -k * dot);
            }
        }
        return out;
    }

    ArrayModel build_enhanced_model(const PatternSet &set, double frequency_hz, double threshold_db,
                                    double power_fraction)
    {
        const std::size_t s = set.frequency_index(frequency_hz);
        const double wavelength = speed_of_light / set.frequencies_hz()[s];

        ArrayModel model;
        model.mode = ModelMode::enhanced;
        model.frequency_hz = set.frequencies_hz()[s];
        model.build_grid = set.grid();

        const std::size_t s_center = set.center_frequency_index();

        for (int e : set.element_ids())
        {
            // The fit assumes one phase center per element, shared by both
            // polarizations; prefer the vertical sweep when both are present
            Polarization fit_pol;
            if (set.contains(e, s_center, Polarization::V))
                fit_pol = Polarization::V;
            else if (set.contains(e, s_center, Polarization::H))
                fit_pol = Polarization::H;
            else
                throw Error("Element " + std::to_string(e) + " has no pattern at the sweep center frequency");

            PhaseCenterEstimate est;
            try
            {
                est = fit_phase_center(build_delay_map(set, e, fit_pol, threshold_db));
            }
            catch (const Error &err)
            {
                throw Error("Phase-center estimation failed for element " + std::to_string(e) + ": " + err.what());
            }

            ElementModel elem;
            elem.element_id = e;
            elem.phase_center = est.offset_m;
            elem.delta_tau_s = est.delta_tau_s;
            elem.fit_rms_residual_s = est.rms_residual_s;
            elem.fit_condition = est.condition_number;
            elem.fit_directions = est.n_directions;

            for (Polarization pol : set.polarizations())
            {
                if (!set.contains(e, s, pol))
                    continue;
                RadiationPattern comp = compensate(set.at(e, s, pol), est.offset_m, wavelength);
                Eadf q = truncate(forward(extend(comp)), power_fraction);
                (pol == Polarization::H ? elem.q_h : elem.q_v) = std::move(q);
            }

            if (!elem.q_h && !elem.q_v)
                throw Error("Element " + std::to_string(e) + " has no pattern at the requested frequency");

            model.elements.push_back(std::move(elem));
        }

        return model;
    }

} // namespace eadf
