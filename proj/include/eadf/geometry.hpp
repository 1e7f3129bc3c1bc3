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

#ifndef EADF_GEOMETRY_HPP
#define EADF_GEOMETRY_HPP

#include <numbers>
#include <vector>

#include "eadf/errors.hpp"

namespace eadf
{
    inline constexpr double pi = std::numbers::pi;
    inline constexpr double speed_of_light = 299792458.0; // m/s

    double deg2rad(double deg);
    double rad2deg(double rad);

    // Cartesian 3-vector; meters when used as a position or displacement
    struct Vec3
    {
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;

        double norm() const;
        double dot(const Vec3 &v) const;
        bool is_finite() const;

        Vec3 operator+(const Vec3 &v) const;
        Vec3 operator-(const Vec3 &v) const;
        Vec3 operator*(double s) const;
        bool operator==(const Vec3 &v) const = default;
    };

    // Direction on the measurement sphere. "theta" is the zenith angle measured
    // from the positive z-axis, "phi" the azimuth measured from the positive
    // x-axis towards the y-axis. Azimuth is wrapped to [0, 2*pi) on
    // construction. Zenith angles outside [0, pi] are accepted so that
    // full-sphere continuations can be evaluated on theta in [0, 2*pi).
    class Direction
    {
      public:
        Direction(double theta_rad, double phi_rad);

        double theta() const
        {
            return m_theta;
        }
        double phi() const
        {
            return m_phi;
        }

      private:
        double m_theta;
        double m_phi;
    };

    // Regular zenith-by-azimuth sampling grid of an anechoic measurement.
    //
    // The grid is parameterized by its half-orders M and N. Zenith rows sample
    // theta = r * pi/M for r = 0..M (both poles included, M+1 rows), azimuth
    // columns sample phi = c * pi/N for c = 0..2N-1 (2N columns, 2*pi
    // excluded). Half-orders below 2 are rejected.
    class AngularGrid
    {
      public:
        AngularGrid(unsigned zenith_half_order, unsigned azimuth_half_order);

        unsigned m() const // zenith half-order M
        {
            return m_zenith_half;
        }
        unsigned n() const // azimuth half-order N
        {
            return m_azimuth_half;
        }
        unsigned n_zenith() const // number of zenith rows, M+1
        {
            return m_zenith_half + 1;
        }
        unsigned n_azimuth() const // number of azimuth columns, 2N
        {
            return 2 * m_azimuth_half;
        }

        double zenith_step() const; // pi/M, radians
        double azimuth_step() const; // pi/N, radians
        double zenith(unsigned row) const; // theta of a grid row
        double azimuth(unsigned col) const; // phi of a grid column

        bool operator==(const AngularGrid &g) const = default;

      private:
        unsigned m_zenith_half;
        unsigned m_azimuth_half;
    };

    // Unit propagation vector of a direction,
    // u = [sin(theta)*cos(phi), sin(theta)*sin(phi), cos(theta)]
    Vec3 unit_vector(const Direction &dir);

    // All grid directions in zenith-major order: row 0 first, each row swept
    // over all 2N azimuth columns. Size is (M+1) * 2N.
    std::vector<Direction> grid_directions(const AngularGrid &grid);

} // namespace eadf

#endif
