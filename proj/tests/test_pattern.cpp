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

#include <random>
#include <string>

#include "eadf/errors.hpp"
#include "eadf/pattern.hpp"
#include "oracles.hpp"

using namespace eadf;

static RadiationPattern make_random_pattern(unsigned M, unsigned N, unsigned long seed, double freq = 3.0e9)
{
    std::mt19937_64 rng(seed);
    RadiationPattern p;
    p.grid = AngularGrid(M, N);
    p.frequency_hz = freq;
    p.polarization = Polarization::V;
    p.element_id = 0;
    p.data = oracles::random_cx_mat(rng, M + 1, 2 * N);
    return p;
}

TEST_CASE("polarization string round-trip")
{
    CHECK(to_string(Polarization::H) == "H");
    CHECK(to_string(Polarization::V) == "V");
    CHECK(polarization_from_string("H") == Polarization::H);
    CHECK(polarization_from_string("V") == Polarization::V);
    CHECK_THROWS_AS(polarization_from_string("X"), Error);
}

TEST_CASE("pattern check validates shape and finiteness")
{
    auto p = make_random_pattern(4, 4, 1);
    CHECK_NOTHROW(p.check());
    CHECK(p.wavelength() == doctest::Approx(speed_of_light / 3.0e9));

    auto bad_shape = p;
    bad_shape.data = arma::cx_mat(3, 8, arma::fill::ones);
    CHECK_THROWS_AS(bad_shape.check(), Error);

    auto bad_value = p;
    bad_value.data(2, 3) = std::complex<double>(std::nan(""), 0.0);
    CHECK_THROWS_AS(bad_value.check(), Error);
}

TEST_CASE("full-sphere continuation copies rows bit-exactly")
{
    auto p = make_random_pattern(5, 6, 2);
    auto ext = extend(p);

    const unsigned M = 5, N = 6;
    REQUIRE(ext.data.n_rows == 2 * M);
    REQUIRE(ext.data.n_cols == 2 * N);

    // Measured half is carried over verbatim
    for (unsigned r = 0; r <= M; r++)
        for (unsigned c = 0; c < 2 * N; c++)
            CHECK(ext.data(r, c) == p.data(r, c));

    // Rows past the lower pole combine reflected zenith with a half-turn in
    // azimuth: the physical direction is identical, so the sample must be the
    // exact same bits
    for (unsigned s = 1; s < M; s++)
        for (unsigned c = 0; c < 2 * N; c++)
            CHECK(ext.data(M + s, c) == p.data(M - s, (c + N) % (2 * N)));
}

TEST_CASE("continuation example with hand-computed indices")
{
    RadiationPattern p;
    p.grid = AngularGrid(2, 2);
    p.frequency_hz = 1.0e9;
    p.data = arma::cx_mat(3, 4, arma::fill::zeros);
    p.data(1, 0) = 5.0; // theta = 90 deg, phi = 0
    auto ext = extend(p);
    // Row 3 is theta = 270 deg; looking "down the back" at phi = 180 deg is
    // the same physical direction as (90 deg, 0)
    CHECK(ext.data(3, 2).real() == doctest::Approx(5.0));
    CHECK(ext.data(3, 0).real() == doctest::Approx(0.0));
}

TEST_CASE("subsampling keeps every k-th node including the poles")
{
    auto p = make_random_pattern(6, 8, 3);
    auto q = subsample(p, 3, 2);
    CHECK(q.grid.m() == 2);
    CHECK(q.grid.n() == 4);
    REQUIRE(q.data.n_rows == 3);
    REQUIRE(q.data.n_cols == 8);
    for (unsigned r = 0; r < 3; r++)
        for (unsigned c = 0; c < 8; c++)
            CHECK(q.data(r, c) == p.data(3 * r, 2 * c));
}

TEST_CASE("subsampling rejects factors that do not divide the grid")
{
    auto p = make_random_pattern(6, 8, 4);
    CHECK_THROWS_AS(subsample(p, 4, 1), NonDivisibleFactor);
    CHECK_THROWS_AS(subsample(p, 1, 3), NonDivisibleFactor);
    CHECK_THROWS_AS(subsample(p, 6, 1), NonDivisibleFactor); // quotient below two
    CHECK_THROWS_AS(subsample(p, 0, 1), NonDivisibleFactor);

    // Error message lists the admissible factors of the zenith axis
    try
    {
        subsample(p, 4, 1);
        FAIL("expected NonDivisibleFactor");
    }
    catch (const NonDivisibleFactor &e)
    {
        std::string msg = e.what();
        CHECK(msg.find("1, 2, 3") != std::string::npos);
    }
}

TEST_CASE("pattern set bookkeeping")
{
    AngularGrid g(4, 4);
    std::vector<double> freqs{1.0e9, 1.1e9, 1.2e9};
    PatternSet set(g, freqs, {0, 1}, {Polarization::V});

    CHECK(set.n_frequencies() == 3);
    CHECK(set.n_elements() == 2);
    CHECK(set.frequency_spacing() == doctest::Approx(1.0e8));
    CHECK(set.center_frequency_index() == 1);
    CHECK(set.frequency_index(1.2e9) == 2);
    CHECK_THROWS_AS(set.frequency_index(1.05e9), Error);

    auto p = make_random_pattern(4, 4, 5);
    p.element_id = 1;
    CHECK_FALSE(set.contains(1, 0, Polarization::V));
    set.insert(p, 0);
    CHECK(set.contains(1, 0, Polarization::V));
    CHECK(set.at(1, 0, Polarization::V).frequency_hz == doctest::Approx(1.0e9)); // stamped on insert
    CHECK_THROWS_AS(set.at(0, 0, Polarization::V), Error);

    // Duplicate insert and foreign members are rejected
    CHECK_THROWS_AS(set.insert(p, 0), Error);
    auto foreign = make_random_pattern(4, 4, 6);
    foreign.element_id = 7;
    CHECK_THROWS_AS(set.insert(foreign, 0), Error);
    auto wrong_grid = make_random_pattern(8, 4, 7);
    wrong_grid.element_id = 0;
    CHECK_THROWS_AS(set.insert(wrong_grid, 1), Error);
}

TEST_CASE("pattern set constructor validates the sweep")
{
    AngularGrid g(4, 4);
    CHECK_THROWS_AS(PatternSet(g, {1.2e9, 1.1e9}, {0}, {Polarization::V}), Error);  // not ascending
    CHECK_THROWS_AS(PatternSet(g, {-1.0e9, 1.1e9}, {0}, {Polarization::V}), Error); // not positive
    CHECK_THROWS_AS(PatternSet(g, {1.0e9}, {0, 0}, {Polarization::V}), Error);      // duplicate element
    CHECK_THROWS_AS(PatternSet(g, {1.0e9}, {0}, {}), Error);                        // no polarization
    CHECK_THROWS_AS(PatternSet(g, {1.0e9}, {0}, {Polarization::V, Polarization::V}), Error);
    CHECK_NOTHROW(PatternSet(g, {1.0e9}, {0}, {Polarization::H, Polarization::V}));
}

TEST_CASE("set-level subsampling decimates every member")
{
    AngularGrid g(6, 6);
    PatternSet set(g, {2.0e9, 2.1e9}, {3}, {Polarization::V});
    for (std::size_t s = 0; s < 2; s++)
    {
        auto p = make_random_pattern(6, 6, 100 + s);
        p.element_id = 3;
        set.insert(p, s);
    }

    auto coarse = subsample(set, 2, 3);
    CHECK(coarse.grid().m() == 3);
    CHECK(coarse.grid().n() == 2);
    const auto &orig = set.at(3, 1, Polarization::V);
    const auto &dec = coarse.at(3, 1, Polarization::V);
    CHECK(dec.data(1, 2) == orig.data(2, 6));

    CHECK_THROWS_AS(subsample(set, 5, 1), NonDivisibleFactor);
}

TEST_CASE("validation reports missing members and bad samples")
{
    AngularGrid g(4, 4);
    PatternSet set(g, {1.0e9, 1.1e9}, {0}, {Polarization::V});
    auto p = make_random_pattern(4, 4, 8);
    set.insert(p, 0); // frequency 1 left missing

    auto diags = validate(set);
    bool missing_reported = false;
    for (const auto &d : diags)
        if (d.severity == Diagnostic::Severity::error && d.message.find("Missing pattern") != std::string::npos)
            missing_reported = true;
    CHECK(missing_reported);

    auto q = make_random_pattern(4, 4, 9);
    q.data(0, 0) = std::complex<double>(1.0 / 0.0, 0.0);
    set.insert(q, 1);
    diags = validate(set);
    bool nonfinite_reported = false;
    for (const auto &d : diags)
        if (d.severity == Diagnostic::Severity::error && d.message.find("finite") != std::string::npos)
            nonfinite_reported = true;
    CHECK(nonfinite_reported);
}

TEST_CASE("validation passes a clean set")
{
    AngularGrid g(4, 4);
    PatternSet set(g, {1.0e9}, {0}, {Polarization::V});
    auto p = make_random_pattern(4, 4, 10);
    set.insert(p, 0);
    auto diags = validate(set);
    for (const auto &d : diags)
        CHECK(d.severity != Diagnostic::Severity::error);
}

TEST_CASE("validation warns on extreme dynamic range")
{
    AngularGrid g(4, 4);
    PatternSet set(g, {1.0e9}, {0}, {Polarization::V});
    auto p = make_random_pattern(4, 4, 11);
    p.data(2, 2) = 1.0e-15; // more than 200 dB below the rest
    p.data(1, 1) = 1.0e6;
    set.insert(p, 0);
    auto diags = validate(set);
    bool range_warned = false;
    for (const auto &d : diags)
        if (d.severity == Diagnostic::Severity::warning && d.message.find("Dynamic range") != std::string::npos)
            range_warned = true;
    CHECK(range_warned);
}
