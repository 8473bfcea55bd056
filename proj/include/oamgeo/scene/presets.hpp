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

#include <cstdint>
#include <string>
#include <vector>

#include "../core/random.hpp"
#include "geometry.hpp"
#include "polarimetry.hpp"

namespace oamgeo
{
    // Built-in scene layouts. Coordinates are offsets from the imaging reference point and were
    // chosen to fit the default imaging patch; they are not survey data.
    namespace presets
    {
        // 5 x 5 trihedrals on a 1 m lattice.
        inline std::vector<Scatterer> grid25(const SceneFrame &scene)
        {
            std::vector<Scatterer> out;
            for (int a = -2; a <= 2; ++a)
                for (int b = -2; b <= 2; ++b)
                    out.push_back({{scene.reference_x + a, scene.reference_y + b, 0.0}, ScatteringMatrix::trihedral()});
            return out;
        }

        inline constexpr double case1_heights[] = {0.0, 2.0, 4.0}; // m

        // Three trihedrals stacked in height over the reference point.
        inline std::vector<Scatterer> case1(const SceneFrame &scene)
        {
            std::vector<Scatterer> out;
            for (double z : case1_heights)
                out.push_back({{scene.reference_x, scene.reference_y, z}, ScatteringMatrix::trihedral()});
            return out;
        }

        struct Case2Regions
        {
            Vec3 ground{-1.5, -1.0, 0.0}; // region centres relative to the reference point
            Vec3 foliage{1.5, -0.5, 4.0};
            Vec3 building{0.0, 1.5, 0.0};
        };

        // Flat ground (surface scattering), a foliage clump (volume) and a wall-ground corner
        // (double bounce: dihedrals at the base and at 4 m).
        inline std::vector<Scatterer> case2(const SceneFrame &scene, std::uint64_t seed)
        {
            CounterRng rng(seed, 0xca5e2);
            const Case2Regions reg;
            const double x0 = scene.reference_x, y0 = scene.reference_y;
            auto phase = [&] { return std::polar(1.0, rng.uniform(-std::numbers::pi, std::numbers::pi)); };
            std::vector<Scatterer> out;
            for (int i = 0; i < 150; ++i)
            {
                const Vec3 p{x0 + reg.ground.x + rng.uniform(-0.5, 0.5), y0 + reg.ground.y + rng.uniform(-0.5, 0.5), 0.0};
                const cplx a = phase() * rng.uniform(0.5, 1.0);
                const cplx hv = 0.05 * cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
                ScatteringMatrix s{a * (1.0 + 0.05 * rng.uniform(-1, 1)), a * hv, a * hv, a * (1.0 + 0.05 * rng.uniform(-1, 1))};
                out.push_back({p, s});
            }
            for (int i = 0; i < 100; ++i)
            {
                const Vec3 p{x0 + reg.foliage.x + rng.uniform(-0.3, 0.3), y0 + reg.foliage.y + rng.uniform(-0.3, 0.3),
                             rng.uniform(3.0, 5.0)};
                const cplx hv = phase();
                out.push_back({p, {0.1 * rng.uniform() * phase(), hv, hv, 0.1 * rng.uniform() * phase()}});
            }
            for (double z : {0.0, 4.0})
                out.push_back({{x0 + reg.building.x, y0 + reg.building.y, z}, ScatteringMatrix::dihedral()});
            return out;
        }

        inline bool known(const std::string &name) { return name == "grid25" || name == "case1" || name == "case2"; }

        inline std::vector<Scatterer> make(const std::string &name, const SceneFrame &scene, std::uint64_t seed)
        {
            if (name == "grid25")
                return grid25(scene);
            if (name == "case1")
                return case1(scene);
            if (name == "case2")
                return case2(scene, seed);
            throw ValidationError("scene.preset", "unknown preset '" + name + "' (grid25 | case1 | case2)");
        }
    } // namespace presets
} // namespace oamgeo
