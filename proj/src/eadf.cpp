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

#include "eadf/eadf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eadf
{

    Eadf::Eadf(AngularGrid grid, arma::cx_mat coefficients)
        : m_grid(grid), m_coeff(std::move(coefficients)), m_row_lo(0), m_row_hi(2 * grid.m() - 1), m_col_lo(0),
          m_col_hi(2 * grid.n() - 1)
    {
        if (m_coeff.n_rows != 2 * m_grid.m() || m_coeff.n_cols != 2 * m_grid.n())
            throw Error("Full spectrum must be " + std::to_string(2 * m_grid.m()) + " x " +
                        std::to_string(2 * m_grid.n()) + ", got " + std::to_string(m_coeff.n_rows) + " x " +
                        std::to_string(m_coeff.n_cols));
        if (!m_coeff.is_finite())
            throw Error("Spectrum coefficients must be finite");
    }

    Eadf::Eadf(AngularGrid grid, arma::cx_mat block, unsigned row_lo, unsigned row_hi, unsigned col_lo, unsigned col_hi)
        : m_grid(grid), m_coeff(std::move(block)), m_row_lo(row_lo), m_row_hi(row_hi), m_col_lo(col_lo),
          m_col_hi(col_hi)
    {
        const unsigned M = m_grid.m(), N = m_grid.n();
        if (row_lo > row_hi || row_hi >= 2 * M || col_lo > col_hi || col_hi >= 2 * N)
            throw Error("Spectrum block bounds are outside the full index space");
        if (row_lo > M || row_hi < M || col_lo > N || col_hi < N)
            throw Error("Spectrum block must contain the DC coefficient at row M, column N");
        if (m_coeff.n_rows != row_hi - row_lo + 1 || m_coeff.n_cols != col_hi - col_lo + 1)
            throw Error("Spectrum block shape does not match its bounds");
        if (!m_coeff.is_finite())
            throw Error("Spectrum coefficients must be finite");
    }

    bool Eadf::truncated() const
    {
        return m_coeff.n_rows != 2 * m_grid.m() || m_coeff.n_cols != 2 * m_grid.n();
    }

    int Eadf::zenith_order(unsigned k) const
    {
        return static_cast<int>(m_row_lo + k) - static_cast<int>(m_grid.m());
    }

    int Eadf::azimuth_order(unsigned l) const
    {
        return static_cast<int>(m_col_lo + l) - static_cast<int>(m_grid.n());
    }

    double Eadf::total_power() const
    {
        return arma::accu(arma::square(arma::abs(m_coeff)));
    }

    Eadf forward(const ExtendedPattern &pattern)
    {
        const unsigned M = pattern.grid.m(), N = pattern.grid.n();
        if (pattern.data.n_rows != 2 * M || pattern.data.n_cols != 2 * N)
            throw Error("Extended pattern must be 2M x 2N");

        // Unnormalized 2D DFT, spectrum rotated so DC lands at (M, N), then
        // scaled to make the inverse a plain order-weighted sum
        arma::cx_mat spec = arma::fft2(pattern.data);
        spec = arma::shift(arma::shift(spec, static_cast<int>(M), 0), static_cast<int>(N), 1);
        spec /= static_cast<double>(4 * M * N);

        return Eadf(pattern.grid, std::move(spec));
    }

    // Order-weighted complex exponentials of one angle, matching the stored
    // block rows (dim 0) or columns (dim 1)
    static arma::cx_vec angle_weights(const Eadf &eadf, double angle, unsigned count, bool rows)
    {
        arma::cx_vec w(count);
        for (unsigned i = 0; i < count; i++)
        {
            int order = rows ? eadf.zenith_order(i) : eadf.azimuth_order(i);
            w(i) = std::polar(1.0, angle * static_cast<double>(order));
        }
        return w;
    }

    std::complex<double> reconstruct(const Eadf &eadf, const Direction &dir)
    {
        arma::cx_vec wz = angle_weights(eadf, dir.theta(), eadf.coefficients().n_rows, true);
        arma::cx_vec wa = angle_weights(eadf, dir.phi(), eadf.coefficients().n_cols, false);
        return arma::as_scalar(wz.st() * eadf.coefficients() * wa);
    }

    arma::cx_mat reconstruct_grid(const Eadf &eadf, const std::vector<double> &zenith_rad,
                                  const std::vector<double> &azimuth_rad)
    {
        const arma::cx_mat &Q = eadf.coefficients();

        arma::cx_mat Wz(zenith_rad.size(), Q.n_rows);
        for (std::size_t i = 0; i < zenith_rad.size(); i++)
            for (unsigned k = 0; k < Q.n_rows; k++)
                Wz(i, k) = std::polar(1.0, zenith_rad[i] * static_cast<double>(eadf.zenith_order(k)));

        arma::cx_mat Wa(azimuth_rad.size(), Q.n_cols);
        for (std::size_t j = 0; j < azimuth_rad.size(); j++)
            for (unsigned l = 0; l < Q.n_cols; l++)
                Wa(j, l) = std::polar(1.0, azimuth_rad[j] * static_cast<double>(eadf.azimuth_order(l)));

        return Wz * Q * Wa.st();
    }

    Eadf truncate(const Eadf &eadf, double power_fraction)
    {
        if (!(power_fraction > 0.0) || power_fraction > 1.0)
            throw Error("Power fraction must lie in (0, 1]");
        if (power_fraction == 1.0)
            return eadf;

        const arma::cx_mat &Q = eadf.coefficients();
        const unsigned R = Q.n_rows, C = Q.n_cols;
        const unsigned dc_r = eadf.grid().m() - eadf.row_lo(); // DC row within the block
        const unsigned dc_c = eadf.grid().n() - eadf.col_lo();

        double total = eadf.total_power();
        if (total <= 0.0)
            return eadf;

        // Prefix sums of coefficient power for O(1) window power lookups
        arma::mat P(R + 1, C + 1, arma::fill::zeros);
        for (unsigned r = 0; r < R; r++)
            for (unsigned c = 0; c < C; c++)
                P(r + 1, c + 1) = std::norm(Q(r, c)) + P(r, c + 1) + P(r + 1, c) - P(r, c);

        auto window_power = [&](unsigned r0, unsigned r1, unsigned c0, unsigned c1) {
            return P(r1 + 1, c1 + 1) - P(r0, c1 + 1) - P(r1 + 1, c0) + P(r0, c0);
        };

        // Smallest DC-centered window meeting the power target; ties by area
        // prefer fewer rows
        const double target = power_fraction * total;
        const double slack = 16.0 * std::numeric_limits<double>::epsilon() * total;

        unsigned best_r0 = 0, best_r1 = R - 1, best_c0 = 0, best_c1 = C - 1;
        std::uint64_t best_area = static_cast<std::uint64_t>(R) * C;
        unsigned best_rows = R;
        bool found = false;

        const unsigned max_wr = std::max(dc_r, R - 1 - dc_r);
        const unsigned max_wc = std::max(dc_c, C - 1 - dc_c);

        for (unsigned wr = 0; wr <= max_wr; wr++)
        {
            unsigned r0 = dc_r >= wr ? dc_r - wr : 0;
            unsigned r1 = std::min(dc_r + wr, R - 1);
            for (unsigned wc = 0; wc <= max_wc; wc++)
            {
                unsigned c0 = dc_c >= wc ? dc_c - wc : 0;
                unsigned c1 = std::min(dc_c + wc, C - 1);
                if (window_power(r0, r1, c0, c1) + slack < target)
                    continue;

                std::uint64_t area = static_cast<std::uint64_t>(r1 - r0 + 1) * (c1 - c0 + 1);
                unsigned rows = r1 - r0 + 1;
                if (!found || area < best_area || (area == best_area && rows < best_rows))
                {
                    best_r0 = r0;
                    best_r1 = r1;
                    best_c0 = c0;
                    best_c1 = c1;
                    best_area = area;
                    best_rows = rows;
                    found = true;
                }
                break; // growing wc further only enlarges this row span
            }
        }

        if (!found || (best_r0 == 0 && best_r1 == R - 1 && best_c0 == 0 && best_c1 == C - 1))
            return eadf;

        arma::cx_mat block = Q.submat(best_r0, best_c0, best_r1, best_c1);
        return Eadf(eadf.grid(), std::move(block), eadf.row_lo() + best_r0, eadf.row_lo() + best_r1,
                    eadf.col_lo() + best_c0, eadf.col_lo() + best_c1);
    }

    bool SpatialFreqBudget::zenith_unbounded() const
    {
        return f_zenith_max == 0.0;
    }

    bool SpatialFreqBudget::azimuth_unbounded() const
    {
        return f_azimuth_max == 0.0;
    }

    double SpatialFreqBudget::max_zenith_step() const
    {
        return zenith_unbounded() ? std::numeric_limits<double>::infinity() : 1.0 / (2.0 * f_zenith_max);
    }

    double SpatialFreqBudget::max_azimuth_step() const
    {
        return azimuth_unbounded() ? std::numeric_limits<double>::infinity() : 1.0 / (2.0 * f_azimuth_max);
    }

    SpatialFreqBudget max_spatial_freq(const Vec3 &offset_m, double wavelength_m)
    {
        if (!offset_m.is_finite())
            throw Error("Offset must be finite");
        if (!(wavelength_m > 0.0) || !std::isfinite(wavelength_m))
            throw Error("Wavelength must be positive and finite");

        SpatialFreqBudget budget;
        budget.f_zenith_max = offset_m.norm() / wavelength_m;
        budget.f_azimuth_max = std::hypot(offset_m.x, offset_m.y) / wavelength_m;
        return budget;
    }

    std::string to_string(ModelMode mode)
    {
        return mode == ModelMode::conventional ? "conventional" : "enhanced";
    }

    ModelMode model_mode_from_string(const std::string &s)
    {
        if (s == "conventional")
            return ModelMode::conventional;
        if (s == "enhanced")
            return ModelMode::enhanced;
        throw Error("Unknown model mode '" + s + "', expected 'conventional' or 'enhanced'");
    }

    double ArrayModel::wavelength() const
    {
        if (!(frequency_hz > 0.0))
            throw Error("Model frequency must be positive to derive a wavelength");
        return speed_of_light / frequency_hz;
    }

    const ElementModel *ArrayModel::find(int element_id) const
    {
        for (const ElementModel &e : elements)
            if (e.element_id == element_id)
                return &e;
        return nullptr;
    }

    void ArrayModel::check() const
    {
        if (elements.empty())
            throw Error("Model has no elements");

        for (const ElementModel &e : elements)
        {
            if (!e.q_h && !e.q_v)
                throw Error("Element " + std::to_string(e.element_id) + " stores no spectrum");
            for (const std::optional<Eadf> &q : {e.q_h, e.q_v})
                if (q && !(q->grid() == build_grid))
                    throw Error("Element " + std::to_string(e.element_id) +
                                " spectrum grid does not match the model build grid");

            if (mode == ModelMode::enhanced && !e.phase_center.is_finite())
                throw ModeMismatch("Enhanced model requires a finite phase center for element " +
                                   std::to_string(e.element_id));
            if (mode == ModelMode::conventional && !(e.phase_center == Vec3{}))
                throw ModeMismatch("Conventional model must carry zero phase centers, element " +
                                   std::to_string(e.element_id) + " does not");
        }
    }

    // Phase-center steering factor exp(+j*2*pi/lambda * u.d)
    static std::complex<double> steering(const Vec3 &d, double wavelength, const Direction &dir)
    {
        Vec3 u = unit_vector(dir);
        return std::polar(1.0, 2.0 * pi / wavelength * u.dot(d));
    }

    std::complex<double> element_response(const ArrayModel &model, const ElementModel &elem, Polarization pol,
                                          const Direction &dir)
    {
        const std::optional<Eadf> &q = (pol == Polarization::H) ? elem.q_h : elem.q_v;
        if (!q)
            return {0.0, 0.0};

        std::complex<double> val = reconstruct(*q, dir);
        if (model.mode == ModelMode::enhanced)
            val *= steering(elem.phase_center, model.wavelength(), dir);
        return val;
    }

    arma::cx_mat element_response_grid(const ArrayModel &model, const ElementModel &elem, Polarization pol,
                                       const std::vector<double> &zenith_rad, const std::vector<double> &azimuth_rad)
    {
        const std::optional<Eadf> &q = (pol == Polarization::H) ? elem.q_h : elem.q_v;
        if (!q)
            return arma::cx_mat(zenith_rad.size(), azimuth_rad.size(), arma::fill::zeros);

        arma::cx_mat vals = reconstruct_grid(*q, zenith_rad, azimuth_rad);

        if (model.mode == ModelMode::enhanced)
        {
            double wavelength = model.wavelength();
            for (std::size_t i = 0; i < zenith_rad.size(); i++)
                for (std::size_t j = 0; j < azimuth_rad.size(); j++)
                    vals(i, j) *= steering(elem.phase_center, wavelength, Direction(zenith_rad[i], azimuth_rad[j]));
        }

        return vals;
    }

    arma::cx_mat array_response(const ArrayModel &model, const Direction &dir)
    {
        model.check();

        arma::cx_mat response(model.elements.size(), 2);
        for (std::size_t p = 0; p < model.elements.size(); p++)
        {
            response(p, 0) = element_response(model, model.elements[p], Polarization::H, dir);
            response(p, 1) = element_response(model, model.elements[p], Polarization::V, dir);
        }
        return response;
    }

    ArrayModel build_conventional_model(const PatternSet &set, double frequency_hz, double power_fraction)
    {
        std::size_t s = set.frequency_index(frequency_hz);

        ArrayModel model;
        model.mode = ModelMode::conventional;
        model.frequency_hz = set.frequencies_hz()[s];
        model.build_grid = set.grid();

        for (int e : set.element_ids())
        {
            ElementModel elem;
            elem.element_id = e;

            for (Polarization pol : set.polarizations())
            {
                if (!set.contains(e, s, pol))
                    continue;
                Eadf q = truncate(forward(extend(set.at(e, s, pol))), power_fraction);
                (pol == Polarization::H ? elem.q_h : elem.q_v) = std::move(q);
            }

            if (!elem.q_h && !elem.q_v)
                throw Error("Element " + std::to_string(e) + " has no pattern at the requested frequency");

            model.elements.push_back(std::move(elem));
        }

        return model;
    }

} // namespace eadf
