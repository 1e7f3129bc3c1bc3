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
//
// Slow reference implementations used to cross-check the library. These are
// deliberately written as literal sums and scans, independent of the FFT and
// search code under test.

#ifndef EADF_TEST_ORACLES_HPP
#define EADF_TEST_ORACLES_HPP

#include <armadillo>
#include <complex>
#include <random>
#include <vector>

#include "eadf/geometry.hpp"

namespace oracles
{

    // Centered, normalized 2D spectrum of a 2M x 2N matrix by the literal
    // quadruple-loop double sum
    inline arma::cx_mat brute_force_spectrum(const arma::cx_mat &C)
    {
        const unsigned R = C.n_rows, Cc = C.n_cols;
        const unsigned M = R / 2, N = Cc / 2;
        arma::cx_mat Q(R, Cc);

        for (unsigned kr = 0; kr < R; kr++)
            for (unsigned kc = 0; kc < Cc; kc++)
            {
                const double mu = static_cast<double>(static_cast<int>(kr) - static_cast<int>(M));
                const double nu = static_cast<double>(static_cast<int>(kc) - static_cast<int>(N));
                std::complex<double> sum(0.0, 0.0);
                for (unsigned r = 0; r < R; r++)
                    for (unsigned c = 0; c < Cc; c++)
                        sum += C(r, c) * std::polar(1.0, -2.0 * eadf::pi * (mu * r / R + nu * c / Cc));
                Q(kr, kc) = sum / static_cast<double>(R * Cc);
            }
        return Q;
    }

    // Literal order-weighted sum over a full centered spectrum
    inline std::complex<double> brute_force_reconstruct(const arma::cx_mat &Q, double theta, double phi)
    {
        const unsigned M = Q.n_rows / 2, N = Q.n_cols / 2;
        std::complex<double> sum(0.0, 0.0);
        for (unsigned kr = 0; kr < Q.n_rows; kr++)
            for (unsigned kc = 0; kc < Q.n_cols; kc++)
            {
                const double mu = static_cast<double>(static_cast<int>(kr) - static_cast<int>(M));
                const double nu = static_cast<double>(static_cast<int>(kc) - static_cast<int>(N));
                sum += Q(kr, kc) * std::polar(1.0, mu * theta + nu * phi);
            }
        return sum;
    }

    // Delay of a sweep by exhaustive scan: a dense pass over the unambiguous
    // window followed by a fine linear scan around the best coarse point
    inline double dense_delay_search(const arma::cx_vec &responses, const std::vector<double> &freqs)
    {
        const double df = freqs[1] - freqs[0];
        const double period = 1.0 / df;

        auto objective = [&](double tau) {
            std::complex<double> p(0.0, 0.0);
            for (std::size_t s = 0; s < freqs.size(); s++)
                p += responses(s) * std::polar(1.0, 2.0 * eadf::pi * (freqs[s] - freqs[0]) * tau);
            return std::norm(p);
        };

        const int K = 32768;
        double best_tau = 0.0, best_val = -1.0;
        for (int g = 0; g <= K; g++)
        {
            double tau = -0.5 * period + period * static_cast<double>(g) / K;
            double v = objective(tau);
            bool better = v > best_val * (1.0 + 1e-12);
            bool tie_closer = v >= best_val * (1.0 - 1e-12) && std::abs(tau) < std::abs(best_tau);
            if (better || tie_closer)
            {
                best_val = v;
                best_tau = tau;
            }
        }

        double lo = best_tau - period / K, hi = best_tau + period / K;
        for (int g = 0; g <= 4000; g++)
        {
            double tau = lo + (hi - lo) * static_cast<double>(g) / 4000.0;
            double v = objective(tau);
            if (v > best_val)
            {
                best_val = v;
                best_tau = tau;
            }
        }

        return best_tau;
    }

    inline eadf::Direction random_direction(std::mt19937_64 &rng)
    {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        return eadf::Direction(u(rng) * eadf::pi, u(rng) * 2.0 * eadf::pi);
    }

    inline arma::cx_mat random_cx_mat(std::mt19937_64 &rng, unsigned rows, unsigned cols)
    {
        std::normal_distribution<double> n(0.0, 1.0);
        arma::cx_mat out(rows, cols);
        for (unsigned r = 0; r < rows; r++)
            for (unsigned c = 0; c < cols; c++)
                out(r, c) = {n(rng), n(rng)};
        return out;
    }

} // namespace oracles

#endif
