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

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "../core/bessel.hpp"
#include "../core/complex_grid.hpp"
#include "../core/errors.hpp"
#include "../core/random.hpp"
#include "../scene/geometry.hpp"
#include "../scene/polarimetry.hpp"
#include "../waveform/schedule.hpp"

namespace oamgeo
{
    // Everything the forward model needs besides the scatterers.
    struct ImagingSetup
    {
        SceneFrame scene;
        PlatformPair platforms;
        OamSweep sweep;
        double carrier = 9.6e9;       // Hz
        double aperture_radius = 0.0; // m, Bessel beam radius of both antennas
        int mode = 1;                 // OAM order l
        int phase_multiplier = 2;     // two-way doubling of the OAM phase

        double carrier_wavenumber() const { return 2.0 * std::numbers::pi * carrier / speed_of_light; }
        Vec3 reference_ecef() const { return scene.to_ecef(scene.reference()); }
    };

    enum class EchoBlock
    {
        MM,
        MS,
        SM,
        SS
    };

    inline const char *to_string(EchoBlock b)
    {
        switch (b)
        {
        case EchoBlock::MM: return "MM";
        case EchoBlock::MS: return "MS";
        case EchoBlock::SM: return "SM";
        default: return "SS";
        }
    }

    // OAM phase per unit modulation depth impressed by `platform` on the ground point below `target`:
    // l times the antenna-frame azimuth plus the carrier helix advance k_c * (range offset), both taken
    // relative to the imaging reference point. Heights do not enter; they are left to tomography.
    inline double oam_phase(const ImagingSetup &s, const GeoPlatform &platform, Vec3 target)
    {
        const Vec3 foot = s.scene.to_ecef({target.x, target.y, 0.0});
        const Vec3 ref = s.reference_ecef();
        const double dphi = wrap_to_pi(look_geometry(platform, foot).phi - look_geometry(platform, ref).phi);
        return s.mode * dphi + s.carrier_wavenumber() * range_offset(platform.position, foot, ref);
    }

    // Same quantity expressed in metres; the focused image axes are in these units.
    inline double oam_coordinate(const ImagingSetup &s, const GeoPlatform &platform, Vec3 target)
    {
        return oam_phase(s, platform, target) / s.carrier_wavenumber();
    }

    struct TargetLook
    {
        double oam_phase = 0.0;     // rad per unit xi
        double range_offset = 0.0;  // true slant range minus reference slant range, m
        double range = 0.0;         // m
        double theta = 0.0;         // rad off boresight
    };

    inline TargetLook target_look(const ImagingSetup &s, const GeoPlatform &platform, Vec3 target)
    {
        const Vec3 p = s.scene.to_ecef(target);
        const LookAngles la = look_geometry(platform, p);
        if (la.theta < 1e-12)
            throw ValidationError("scene.targets", "target lies in the boresight null of platform " +
                                                       std::string(to_string(platform.role)));
        return {oam_phase(s, platform, target), range_offset(platform.position, p, s.reference_ecef()), la.range, la.theta};
    }

    struct EchoMatrix
    {
        ComplexGrid data; // master step i x slave step j
        PolChannel channel = PolChannel::HH;
        EchoBlock block = EchoBlock::MS;
        std::size_t frequency_step = 0;
        double frequency = 0.0;   // Hz
        double noise_sigma = 0.0; // standard deviation of the complex noise, per sample
    };

    struct EchoOptions
    {
        EchoBlock block = EchoBlock::MS;
        std::optional<double> snr_db;
        std::uint64_t seed = 0;
    };

    // Raw interferometric echo at one chirp frequency:
    //   E(i, j) = sum_q w_q exp(j m xi_i Phi_q^row) exp(-j m xi_j Phi_q^col) exp(-j k (dr_q^row + dr_q^col))
    // with w_q = s_q J1^2(k a sin theta^row) J1^2(k a sin theta^col) / (r^row r^col)^2. The row platform
    // transmits, the column platform receives (M and S respectively for the MS block). Range phases are
    // referenced to the imaging reference point.
    inline EchoMatrix synthesize_echo(const ImagingSetup &s, std::span<const Scatterer> scene, double frequency,
                                      std::size_t frequency_step, PolChannel channel, const EchoOptions &opt = {})
    {
        require(!scene.empty(), "scene.targets", "scene must contain at least one scatterer");
        require(s.sweep.size() >= 2, "oam.steps", "must be >= 2");
        require(std::isfinite(frequency) && frequency > 0.0, "chirp", "frequency must be > 0");
        require(s.aperture_radius > 0.0, "array.aperture_radius_m", "must be > 0");
        const bool row_master = opt.block == EchoBlock::MM || opt.block == EchoBlock::MS;
        const bool col_master = opt.block == EchoBlock::MM || opt.block == EchoBlock::SM;
        const GeoPlatform &prow = row_master ? s.platforms.master : s.platforms.slave;
        const GeoPlatform &pcol = col_master ? s.platforms.master : s.platforms.slave;

        const std::size_t k = s.sweep.size();
        const double kf = 2.0 * std::numbers::pi * frequency / speed_of_light;
        const double m = s.phase_multiplier;
        EchoMatrix e{ComplexGrid(k, k), channel, opt.block, frequency_step, frequency, 0.0};
        std::vector<cplx> a(k), b(k);
        for (const auto &q : scene)
        {
            const cplx sigma = q.s[channel];
            if (sigma == cplx{})
                continue;
            const TargetLook lr = target_look(s, prow, q.position);
            const TargetLook lc = target_look(s, pcol, q.position);
            const double jr = bessel_j(1, kf * s.aperture_radius * std::sin(lr.theta));
            const double jc = bessel_j(1, kf * s.aperture_radius * std::sin(lc.theta));
            const double w = jr * jr * jc * jc / std::pow(lr.range * lc.range, 2);
            const cplx g = sigma * std::polar(w, -kf * (lr.range_offset + lc.range_offset));
            for (std::size_t i = 0; i < k; ++i)
            {
                a[i] = g * std::polar(1.0, m * s.sweep.xi[i] * lr.oam_phase);
                b[i] = std::polar(1.0, -m * s.sweep.xi[i] * lc.oam_phase);
            }
            for (std::size_t i = 0; i < k; ++i)
            {
                auto row = e.data.row(i);
                for (std::size_t j = 0; j < k; ++j)
                    row[j] += a[i] * b[j];
            }
        }

        if (opt.snr_db)
        {
            require(std::isfinite(*opt.snr_db), "snr_db", "must be finite");
            const double signal = e.data.energy() / double(e.data.size());
            if (signal > 0.0)
            {
                const double var = signal / std::pow(10.0, *opt.snr_db / 10.0);
                e.noise_sigma = std::sqrt(var);
                CounterRng rng(opt.seed, stream_key(frequency_step, 4 * std::uint64_t(channel) + std::uint64_t(opt.block)));
                for (auto &v : e.data.data())
                    v += rng.complex_normal(var);
            }
        }
        return e;
    }

    // Echo of a unit scatterer at the reference point, used as the matched-filter reference.
    inline EchoMatrix reference_echo(const ImagingSetup &s, double frequency, EchoBlock block = EchoBlock::MS)
    {
        const Scatterer unit{s.scene.reference(), ScatteringMatrix::trihedral()};
        return synthesize_echo(s, std::span(&unit, 1), frequency, 0, PolChannel::HH, {block, std::nullopt, 0});
    }

    // Phase-only matched filter: echo times exp(-j arg reference).
    inline ComplexGrid matched_filter(const ComplexGrid &echo, const ComplexGrid &reference)
    {
        require(echo.same_shape(reference), "matched_filter", "echo and reference dimensions differ");
        ComplexGrid out = echo;
        auto o = out.data();
        auto r = reference.data();
        for (std::size_t i = 0; i < o.size(); ++i)
        {
            const double mag = std::abs(r[i]);
            if (mag > 0.0)
                o[i] *= std::conj(r[i]) / mag;
        }
        return out;
    }
} // namespace oamgeo
