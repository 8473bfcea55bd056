// SPDX-License-Identifier: Apache-2.0
//
// oamgeo: geostationary OAM interferometric radar imaging simulator
// Copyright (C) 2026 The oamgeo authors
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

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "../core/complex_grid.hpp"
#include "../core/errors.hpp"

namespace oamgeo
{
    struct Vec3
    {
        double x = 0.0, y = 0.0, z = 0.0;

        friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
        friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
        friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
        friend bool operator==(const Vec3 &, const Vec3 &) = default;
    };

    inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
    inline Vec3 cross(Vec3 a, Vec3 b) { return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x}; }
    inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
    inline Vec3 normalized(Vec3 a) { return (1.0 / norm(a)) * a; }

    inline constexpr double earth_radius = 6378137.0;      // m
    inline constexpr double default_altitude = 3.6e7;      // m
    inline constexpr double deg = std::numbers::pi / 180.0;

    // Flat scene plane tangent to the Earth at latitude `latitude_deg` on the scene meridian.
    // Scene axes: x = ground range (north, in the plane of the mean line of sight),
    // y = azimuth (east, along the geostationary arc), z = height.
    struct SceneFrame
    {
        double latitude_deg = 45.0;
        double extent_x = 5000.0, extent_y = 5000.0; // m, centred on the boresight aim point
        double reference_x = 100.0, reference_y = 100.0; // imaging patch centre, m

        Vec3 centre_ecef() const
        {
            const double l = latitude_deg * deg;
            return {earth_radius * std::cos(l), 0.0, earth_radius * std::sin(l)};
        }
        Vec3 north() const { const double l = latitude_deg * deg; return {-std::sin(l), 0.0, std::cos(l)}; }
        Vec3 east() const { return {0.0, 1.0, 0.0}; }
        Vec3 up() const { const double l = latitude_deg * deg; return {std::cos(l), 0.0, std::sin(l)}; }

        Vec3 to_ecef(Vec3 p) const { return centre_ecef() + p.x * north() + p.y * east() + p.z * up(); }
        Vec3 reference() const { return {reference_x, reference_y, 0.0}; }
        bool contains(Vec3 p) const { return std::abs(p.x) <= 0.5 * extent_x && std::abs(p.y) <= 0.5 * extent_y; }
    };

    enum class PlatformRole
    {
        master,
        slave
    };

    inline const char *to_string(PlatformRole r) { return r == PlatformRole::master ? "M" : "S"; }

    struct GeoPlatform
    {
        PlatformRole role = PlatformRole::master;
        double orbital_angle_deg = 0.0; // longitude along the arc relative to the scene meridian
        double altitude = default_altitude;
        Vec3 position;   // Earth-centred, m
        Vec3 boresight;  // unit, toward scene centre
        Vec3 frame_u;    // cross-boresight axis closest to the arc direction
        Vec3 frame_v;    // boresight x frame_u
    };

    inline GeoPlatform make_platform(PlatformRole role, double orbital_angle_deg, double altitude, const SceneFrame &scene)
    {
        GeoPlatform p;
        p.role = role;
        p.orbital_angle_deg = orbital_angle_deg;
        p.altitude = altitude;
        const double radius = earth_radius + altitude;
        const double a = orbital_angle_deg * deg;
        p.position = {radius * std::cos(a), radius * std::sin(a), 0.0};
        p.boresight = normalized(scene.centre_ecef() - p.position);
        const Vec3 e = scene.east();
        p.frame_u = normalized(e - dot(e, p.boresight) * p.boresight);
        p.frame_v = cross(p.boresight, p.frame_u);
        return p;
    }

    struct PlatformPair
    {
        GeoPlatform master, slave;
        double baseline_deg = 0.0;
    };

    // Master at -baseline/2, slave at +baseline/2 about the scene meridian; both aim at the scene centre.
    inline PlatformPair platform_positions(double baseline_deg, const SceneFrame &scene, double altitude = default_altitude)
    {
        require(std::isfinite(baseline_deg) && baseline_deg > 0.0, "geometry.baseline_deg",
                "baseline must be > 0 (a zero baseline loses the interferometric effect)");
        require(baseline_deg < 180.0, "geometry.baseline_deg", "must be < 180");
        require(std::isfinite(altitude) && altitude > 0.0, "geometry.altitude_m", "must be > 0");
        require(std::abs(scene.latitude_deg) < 80.0, "geometry.scene_latitude_deg", "must lie in (-80, 80)");
        return {make_platform(PlatformRole::master, -0.5 * baseline_deg, altitude, scene),
                make_platform(PlatformRole::slave, 0.5 * baseline_deg, altitude, scene), baseline_deg};
    }

    // Empty when the baseline sits in the 10-25 degree sweet spot.
    inline std::string baseline_advisory(double baseline_deg)
    {
        if (baseline_deg < 2.0 || baseline_deg > 25.0)
            return "outside the tested 2-25 deg envelope";
        if (baseline_deg < 10.0)
            return "below optimal range (10-25 deg)";
        return {};
    }

    inline GeoPlatform translated(GeoPlatform p, Vec3 shift)
    {
        p.position = p.position + shift;
        return p;
    }

    struct LookAngles
    {
        double range = 0.0; // m
        double theta = 0.0; // rad off boresight
        double phi = 0.0;   // rad, azimuth about boresight from frame_u toward frame_v
    };

    inline LookAngles look_geometry(const GeoPlatform &platform, Vec3 target_ecef)
    {
        const Vec3 t = target_ecef - platform.position;
        LookAngles la;
        la.range = norm(t);
        const double along = dot(t, platform.boresight);
        const double cu = dot(t, platform.frame_u), cv = dot(t, platform.frame_v);
        la.theta = std::atan2(std::hypot(cu, cv), along);
        la.phi = std::atan2(cv, cu);
        return la;
    }

    inline LookAngles look_geometry(const GeoPlatform &platform, const SceneFrame &scene, Vec3 target)
    {
        require(scene.contains(target), "scene.targets", "target lies outside the scene extent");
        return look_geometry(platform, scene.to_ecef(target));
    }

    // |p - P| - |ref - P| evaluated without cancellation.
    inline double range_offset(Vec3 platform, Vec3 p, Vec3 ref)
    {
        const double rp = norm(p - platform), rr = norm(ref - platform);
        return dot(p - ref, p + ref - 2.0 * platform) / (rp + rr);
    }

    // Height of a scatterer along the mean line of sight: minus half the change of the
    // two-way range sum when the scatterer is lifted from the ground plane to its height.
    // This is the coordinate resolved by stepped-frequency tomography.
    inline double los_elevation(const PlatformPair &pp, const SceneFrame &scene, Vec3 target)
    {
        const Vec3 lifted = scene.to_ecef(target);
        const Vec3 foot = scene.to_ecef({target.x, target.y, 0.0});
        return -0.5 * (range_offset(pp.master.position, lifted, foot) + range_offset(pp.slave.position, lifted, foot));
    }

    // Physical height whose line-of-sight elevation equals `elevation` (Newton on los_elevation).
    inline double height_for_elevation(const PlatformPair &pp, const SceneFrame &scene, double x, double y, double elevation)
    {
        double z = elevation;
        for (int it = 0; it < 8; ++it)
        {
            const double s = los_elevation(pp, scene, {x, y, z});
            const double ds = (los_elevation(pp, scene, {x, y, z + 1e-3}) - los_elevation(pp, scene, {x, y, z - 1e-3})) / 2e-3;
            z -= (s - elevation) / ds;
        }
        return z;
    }
} // namespace oamgeo
