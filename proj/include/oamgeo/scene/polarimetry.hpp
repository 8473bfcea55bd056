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
#include <string_view>

#include "../core/complex_grid.hpp"
#include "../core/errors.hpp"
#include "geometry.hpp"

namespace oamgeo
{
    enum class PolChannel
    {
        HH,
        HV,
        VH,
        VV
    };

    inline constexpr std::array<PolChannel, 4> all_channels{PolChannel::HH, PolChannel::HV, PolChannel::VH, PolChannel::VV};

    inline std::string_view to_string(PolChannel c)
    {
        switch (c)
        {
        case PolChannel::HH: return "HH";
        case PolChannel::HV: return "HV";
        case PolChannel::VH: return "VH";
        default: return "VV";
        }
    }

    // Monostatic 2x2 backscatter matrix [HH HV; VH VV].
    struct ScatteringMatrix
    {
        cplx hh{1.0, 0.0}, hv{}, vh{}, vv{1.0, 0.0};

        cplx operator[](PolChannel c) const
        {
            switch (c)
            {
            case PolChannel::HH: return hh;
            case PolChannel::HV: return hv;
            case PolChannel::VH: return vh;
            default: return vv;
            }
        }

        bool reciprocal(double tol = 1e-12) const { return std::abs(hv - vh) <= tol * (1.0 + std::abs(hv)); }
        double span() const { return std::norm(hh) + std::norm(vv) + std::norm(hv) + std::norm(vh); }

        static ScatteringMatrix trihedral(cplx a = 1.0) { return {a, 0.0, 0.0, a}; }
        static ScatteringMatrix dihedral(cplx a = 1.0) { return {a, 0.0, 0.0, -a}; }
    };

    struct Scatterer
    {
        Vec3 position; // scene frame, m
        ScatteringMatrix s;
    };

    inline Scatterer make_scatterer(Vec3 position, ScatteringMatrix s)
    {
        for (cplx v : {s.hh, s.hv, s.vh, s.vv})
            require(std::isfinite(v.real()) && std::isfinite(v.imag()), "scene.targets", "scattering matrix must be finite");
        require(std::isfinite(position.x) && std::isfinite(position.y) && std::isfinite(position.z), "scene.targets",
                "position must be finite");
        require(s.reciprocal(), "scene.targets", "scattering matrix must be reciprocal (HV == VH)");
        return {position, s};
    }

    // (HH+VV)/sqrt2 odd bounce, (HH-VV)/sqrt2 even bounce, sqrt2 HV volume.
    inline std::array<cplx, 3> pauli_channels(const ScatteringMatrix &s)
    {
        require(s.reciprocal(), "scattering_matrix", "Pauli basis needs a reciprocal matrix");
        const double r2 = std::numbers::sqrt2;
        return {(s.hh + s.vv) / r2, (s.hh - s.vv) / r2, r2 * s.hv};
    }

    // Pauli combination of already-focused channel values.
    inline std::array<cplx, 3> pauli_from_channels(cplx hh, cplx hv, cplx vh, cplx vv)
    {
        const double r2 = std::numbers::sqrt2;
        return {(hh + vv) / r2, (hh - vv) / r2, (hv + vh) / r2};
    }
} // namespace oamgeo
