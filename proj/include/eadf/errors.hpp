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

#ifndef EADF_ERRORS_HPP
#define EADF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eadf
{
    // Base class of all errors thrown by this library
    struct Error : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    // A decimation factor does not divide the grid half-resolution
    struct NonDivisibleFactor : Error
    {
        using Error::Error;
    };

    // A coverage mask ended up empty (e.g. the pattern is identically zero)
    struct AllMasked : Error
    {
        using Error::Error;
    };

    // Input carries no usable signal (e.g. an all-zero frequency sweep)
    struct DegenerateInput : Error
    {
        using Error::Error;
    };

    // Least-squares design matrix has rank < 4 or is numerically singular
    struct RankDeficient : Error
    {
        using Error::Error;
    };

    // Model mode and model contents disagree (enhanced mode without phase centers)
    struct ModeMismatch : Error
    {
        using Error::Error;
    };

    // A synthetic pattern's spectral support does not fit the requested grid
    struct BandLimitViolation : Error
    {
        using Error::Error;
    };

    // Relative error against a zero-valued reference
    struct UndefinedAtZero : Error
    {
        using Error::Error;
    };

} // namespace eadf

#endif
