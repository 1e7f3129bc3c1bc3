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

#include "doctest.h"

#include <cmath>
#include <random>

#include "eadf/errors.hpp"
#include "eadf/phase_center.hpp"
#include "eadf/synth.hpp"
#include "oracles.hpp"

using namespace eadf;

static std::vector<double> make_sweep(double f0, double df, std::size_t n)
{
    std::vector<double> f(n);
    for (std::size_t s = 0; s < n; s++)
        f[s] = f0 + df * static_cast<double>(s);
    return f;
}

TEST_CASE("delay of a pure delayed tone is recovered to sub-picosecond accuracy")
{
    auto freqs = make_sweep(27.0e9, 10.0e6, 51);
    for (double tau_true : {0.0, 3.7e-9, -12.25e-9, 44.0e-9})
    {
        arma::cx_vec resp(freqs.size());
        for (std::size_t s = 0; s < freqs.size(); s++)
            resp(s) = std::polar(0.8, -2.0 * pi * freqs[s] * tau_true);
        double tau = estimate_delay(resp, freqs);
        CHECK(std::abs(tau - tau_true) <= 1.0e-15);
    }
}

TEST_CASE("delays beyond the unambiguous window wrap into it")
{
    auto freqs = make_sweep(2.0e9, 10.0e6, 41); // window (-50 ns, 50 ns]
    double tau_true = 64.0e-9;                  // aliases to -36 ns
    arma::cx_vec resp(freqs.size());
    for (std::size_t s = 0; s < freqs.size(); s++)
        resp(s) = std::polar(1.0, -2.0 * pi * freqs[s] * tau_true);
    double tau = estimate_delay(resp, freqs);
    CHECK(std::abs(tau - -36.0e-9) <= 1.0e-14);
}

TEST_CASE("delay estimator matches an exhaustive dense search")
{
    std::mt19937_64 rng(71);
    std::normal_distribution<double> n(0.0, 1.0);
    auto freqs = make_sweep(3.0e9, 25.0e6, 21); // window (-20 ns, 20 ns]

    for (int trial = 0; trial < 10; trial++)
    {
        // Dominant delayed component plus weaker secondary path and noise
        std::uniform_real_distribution<double> ud(-18.0e-9, 18.0e-9);
        double tau1 = ud(rng), tau2 = ud(rng);
        arma::cx_vec resp(freqs.size());
        for (std::size_t s = 0; s < freqs.size(); s++)
            resp(s) = std::polar(1.0, -2.0 * pi * freqs[s] * tau1) +
                      std::polar(0.35, -2.0 * pi * freqs[s] * tau2) +
                      std::complex<double>(0.01 * n(rng), 0.01 * n(rng));

        std::vector<double> fv(freqs.begin(), freqs.end());
        double tau_ref = oracles::dense_delay_search(resp, fv);
        double tau = estimate_delay(resp, freqs);
        CHECK(std::abs(tau - tau_ref) < 2.0e-13);
    }
}

TEST_CASE("flat sweeps resolve to zero delay")
{
    auto freqs = make_sweep(1.0e9, 5.0e6, 16);
    arma::cx_vec resp(freqs.size(), arma::fill::ones);
    CHECK(std::abs(estimate_delay(resp, freqs)) <= 1.0e-18);
}

TEST_CASE("delay estimator input validation")
{
    auto freqs = make_sweep(1.0e9, 5.0e6, 8);
    arma::cx_vec resp(8, arma::fill::zeros);
    CHECK_THROWS_AS(estimate_delay(resp, freqs), DegenerateInput);

    arma::cx_vec one(1, arma::fill::ones);
    CHECK_THROWS_AS(estimate_delay(one, {1.0e9}), Error);

    arma::cx_vec three(3, arma::fill::ones);
    CHECK_THROWS_AS(estimate_delay(three, {1.0e9, 1.01e9, 1.03e9}), Error); // non-uniform
    CHECK_THROWS_AS(estimate_delay(three, {1.03e9, 1.02e9, 1.01e9}), Error); // descending
}

TEST_CASE("coverage mask keeps directions within the threshold of the peak")
{
    RadiationPattern p;
    p.grid = AngularGrid(4, 4);
    p.frequency_hz = 1.0e9;
    p.data = arma::cx_mat(5, 8, arma::fill::zeros);
    p.data(0, 0) = 2.0;              // peak
    p.data(1, 3) = 2.0 * 0.5;        // -6 dB, inside a 13 dB mask
    p.data(2, 2) = 2.0 * 0.2;        // about -14 dB, outside
    p.data(3, 1) = 2.0 * 0.223872114; // just inside (-13 dB is 0.2238721...)

    auto mask = main_coverage_mask(p, 13.0);
    CHECK(mask(0, 0) == 1);
    CHECK(mask(1, 3) == 1);
    CHECK(mask(2, 2) == 0);
    CHECK(mask(3, 1) == 1);
    CHECK(arma::accu(mask) == 3u + 0u);

    auto zero = p;
    zero.data.zeros();
    CHECK_THROWS_AS(main_coverage_mask(zero), AllMasked);
    CHECK_THROWS_AS(main_coverage_mask(p, -3.0), Error);
}

TEST_CASE("patch coverage at 13 dB spans the analytic beamwidth")
{
    // cos^2 falls 13 dB below peak at acos(10^(-13/40)) = 62.0 degrees, so
    // on a 7.5-degree zenith grid rows 0..8 qualify
    auto p = sample_a0(ElementSpec{PatchModel{2, 0.0, 0.0}, Vec3{}, 0.0}, AngularGrid(24, 24), 1.0e9);
    auto mask = main_coverage_mask(p, 13.0);
    CHECK(arma::accu(mask) == 9u * 48u);
}

TEST_CASE("delay map over a masked sweep")
{
    AngularGrid g(4, 4);
    auto freqs = make_sweep(2.0e9, 20.0e6, 11);

    WidebandSweep sweep;
    sweep.grid = g;
    sweep.frequencies_hz = freqs;
    sweep.cells = {{0, 0}, {1, 2}, {2, 5}, {4, 7}};
    sweep.responses.set_size(4, freqs.size());
    std::vector<double> taus{1.0e-9, -2.0e-9, 5.0e-9, 0.5e-9};
    for (std::size_t i = 0; i < 4; i++)
        for (std::size_t s = 0; s < freqs.size(); s++)
            sweep.responses(i, s) = std::polar(1.0, -2.0 * pi * freqs[s] * taus[i]);

    auto map = build_delay_map(sweep);
    CHECK(map.n_valid() == 4);
    CHECK(map.mask(1, 2) == 1);
    CHECK(map.mask(0, 1) == 0);
    CHECK(std::isnan(map.delays_s(0, 1)));
    for (std::size_t i = 0; i < 4; i++)
        CHECK(std::abs(map.delays_s(sweep.cells[i].row, sweep.cells[i].col) - taus[i]) <= 1e-15);

    // A zero-response cell is dropped with a diagnostic instead of failing
    sweep.responses.row(2).zeros();
    auto partial = build_delay_map(sweep);
    CHECK(partial.n_valid() == 3);
    CHECK(partial.mask(2, 5) == 0);
    REQUIRE(partial.diagnostics.size() == 1);
    CHECK(partial.diagnostics[0].message.find("zenith row 2") != std::string::npos);

    // All cells zero: nothing left to fit
    sweep.responses.zeros();
    CHECK_THROWS_AS(build_delay_map(sweep), AllMasked);

    sweep.cells[0] = {9, 0};
    CHECK_THROWS_AS(build_delay_map(sweep), Error);
}

TEST_CASE("phase-center fit recovers a synthetic displacement exactly")
{
    AngularGrid g(12, 12);
    Vec3 d{0.013, -0.007, 0.021};
    double delta_tau = 2.4e-9;

    DelayMap map;
    map.grid = g;
    map.delays_s.set_size(13, 24);
    map.delays_s.fill(arma::datum::nan);
    map.mask.zeros(13, 24);
    for (unsigned r = 0; r <= 6; r++) // upper hemisphere only
        for (unsigned c = 0; c < 24; c += 2)
        {
            Vec3 u = unit_vector(Direction(g.zenith(r), g.azimuth(c)));
            map.delays_s(r, c) = delta_tau - u.dot(d) / speed_of_light;
            map.mask(r, c) = 1;
        }

    auto est = fit_phase_center(map);
    CHECK(est.offset_m.x == doctest::Approx(d.x).epsilon(1e-12));
    CHECK(est.offset_m.y == doctest::Approx(d.y).epsilon(1e-12));
    CHECK(est.offset_m.z == doctest::Approx(d.z).epsilon(1e-12));
    CHECK(est.delta_tau_s == doctest::Approx(delta_tau).epsilon(1e-12));
    CHECK(est.rms_residual_s < 1e-20);
    CHECK(est.n_directions == 7u * 12u);
    CHECK(est.condition_number < 100.0);
}

TEST_CASE("phase-center fit rejects degenerate geometry")
{
    AngularGrid g(4, 4);
    DelayMap map;
    map.grid = g;
    map.delays_s.set_size(5, 8);
    map.delays_s.fill(arma::datum::nan);
    map.mask.zeros(5, 8);

    // Three directions are not enough
    for (unsigned c = 0; c < 3; c++)
    {
        map.delays_s(2, c) = 1.0e-9;
        map.mask(2, c) = 1;
    }
    CHECK_THROWS_AS(fit_phase_center(map), RankDeficient);

    // All mask cells on the upper pole row share one physical direction, so
    // the design matrix cannot separate the offset from the delay
    map.mask.zeros();
    map.delays_s.fill(arma::datum::nan);
    for (unsigned c = 0; c < 8; c++)
    {
        map.delays_s(0, c) = 1.0e-9;
        map.mask(0, c) = 1;
    }
    CHECK_THROWS_AS(fit_phase_center(map), RankDeficient);
}

TEST_CASE("compensation inverts a simulated displacement")
{
    AngularGrid g(8, 8);
    double f = 3.0e9, lambda = speed_of_light / f;
    Vec3 d{0.004, 0.009, -0.012};

    auto p0 = sample_a0(ElementSpec{BandlimitedModel{3, 3, 17}, Vec3{}, 0.0}, g, f);
    auto shifted = apply_offset(p0, d, lambda);
    auto back = compensate(shifted, d, lambda);
    CHECK(arma::abs(back.data - p0.data).max() < 1e-13);

    // Compensating by parts equals compensating by the sum
    Vec3 d1{0.001, 0.002, 0.003}, d2{-0.004, 0.001, 0.002};
    auto two_step = compensate(compensate(p0, d1, lambda), d2, lambda);
    auto one_step = compensate(p0, d1 + d2, lambda);
    CHECK(arma::abs(two_step.data - one_step.data).max() < 1e-13);

    CHECK_THROWS_AS(compensate(p0, Vec3{std::nan(""), 0, 0}, lambda), Error);
    CHECK_THROWS_AS(compensate(p0, d, 0.0), Error);
}

TEST_CASE("full pipeline: delay map and fit recover a simulated element")
{
    ChamberSpec spec;
    spec.grid = AngularGrid(12, 12);
    spec.frequencies_hz = make_sweep(27.0e9, 15.0e6, 41);
    spec.rng_seed = 5150;
    Vec3 d_true{0.006, -0.003, 0.02};
    double tau_true = 4.2e-9;
    spec.elements.push_back({PatchModel{2, 0.0, 0.0}, d_true, tau_true});

    auto set = simulate(spec);
    auto map = build_delay_map(set, 0, Polarization::V, 13.0);
    CHECK(map.n_valid() > 50);
    auto est = fit_phase_center(map);
    CHECK((est.offset_m - d_true).norm() < 1e-9);
    CHECK(est.delta_tau_s == doctest::Approx(tau_true).epsilon(1e-9));

    // Enhanced characterization wraps the same machinery
    auto model = build_enhanced_model(set, spec.frequencies_hz[20]);
    REQUIRE(model.elements.size() == 1);
    CHECK(model.mode == ModelMode::enhanced);
    CHECK((model.elements[0].phase_center - d_true).norm() < 1e-9);
    CHECK_NOTHROW(model.check());

    // The enhanced model reproduces the measured pattern at build directions
    const auto &truth = set.at(0, 20, Polarization::V);
    for (unsigned r = 0; r <= 12; r += 3)
        for (unsigned c = 0; c < 24; c += 5)
        {
            Direction dir(spec.grid.zenith(r), spec.grid.azimuth(c));
            auto v = element_response(model, model.elements[0], Polarization::V, dir);
            CHECK(std::abs(v - truth.data(r, c)) < 1e-9);
        }
}

TEST_CASE("enhanced model failure names the offending element")
{
    // A single-frequency set cannot supply wideband delays
    AngularGrid g(4, 4);
    PatternSet set(g, {1.0e9}, {3}, {Polarization::V});
    auto p = sample_a0(ElementSpec{OmniModel{}, Vec3{}, 0.0}, g, 1.0e9, Polarization::V, 3);
    p.element_id = 3;
    set.insert(p, 0);
    CHECK_THROWS_WITH_AS(build_enhanced_model(set, 1.0e9), doctest::Contains("element 3"), Error);
}
