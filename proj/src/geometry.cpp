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

#include "eadf/geometry.hpp"

#include <cmath>
#include <string>

namespace eadf
{

    double deg2rad(double deg)
    {
        return deg * (pi / 180.0);
    }

    double rad2deg(double rad)
    {
        return rad * (180.0 / pi);
    }

    double Vec3::norm() const
    {
        return std::sqrt(x * x + y * y + z * z);
    }

    double Vec3::dot(const Vec3 &v) const
    {
        return x * v.x + y * v.y + z * v.z;
    }

    bool Vec3::is_finite() const
    {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }

    Vec3 Vec3::operator+(const Vec3 &v) const
    {
        return {x + v.x, y + v.y, z + v.z};
    }

    Vec3 Vec3::operator-(const Vec3 &v) const
    {
        return {x - v.x, y - v.y, z - v.z};
    }

    Vec3 Vec3::operator*(double s) const
    {
        return {x * s, y * s, z * s};
    }

    Direction::Direction(double theta_rad, double phi_rad) : m_theta(theta_rad), m_phi(phi_rad)
    {
        if (!std::isfinite(theta_rad) || !std::isfinite(phi_rad))
            throw Error("Direction angles must be finite");

        // Wrap the azimuth into [0, 2*pi)
        constexpr double two_pi = 2.0 * pi;
        m_phi = std::fmod(m_phi, two_pi);
        if (m_phi < 0.0)
            m_phi += two_pi;
        if (m_phi >= two_pi) // fmod can land exactly on 2*pi after the correction
            m_phi = 0.0;
    }

    AngularGrid::AngularGrid(unsigned zenith_half_order, unsigned azimuth_half_order)
        : m_zenith_half(zenith_half_order), m_azimuth_half(azimuth_half_order)
    {
        if (zenith_half_order < 2 || azimuth_half_order < 2)
            throw Error("AngularGrid half-orders must be at least 2, got M = " + std::to_string(zenith_half_order) +
                        ", N = " + std::to_string(azimuth_half_order));
    }

    double AngularGrid::zenith_step() const
    {
        return pi / static_cast<double>(m_zenith_half);
    }

    double AngularGrid::azimuth_step() const
    {
        return pi / static_cast<double>(m_azimuth_half);
    }

    double AngularGrid::zenith(unsigned row) const
    {
        return static_cast<double>(row) * zenith_step();
    }

    double AngularGrid::azimuth(unsigned col) const
    {
        return static_cast<double>(col) * azimuth_step();
    }

    Vec3 unit_vector(const Direction &dir)
    {
        double st = std::sin(dir.theta()), ct = std::cos(dir.theta());
        double sp = std::sin(dir.phi()), cp = std::cos(dir.phi());
        return {st * cp, st * sp, ct};
    }

    std::vector<Direction> grid_directions(const AngularGrid &grid)
    {
        std::vector<Direction> dirs;
        dirs.reserve(static_cast<std::size_t>(grid.n_zenith()) * grid.n_azimuth());

        for (unsigned r = 0; r < grid.n_zenith(); r++)
            for (unsigned c = 0; c < grid.n_azimuth(); c++)
                dirs.emplace_back(grid.zenith(r), grid.azimuth(c));

        return dirs;
    }

} // namespace eadf
