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

#include <algorithm>
#include <optional>
#include <vector>

#include "../core/peak.hpp"
#include "../tomo/mca.hpp"

namespace oamgeo
{
    // Channels in which at least one scatterer has a non-zero response.
    inline std::vector<PolChannel> active_channels(std::span<const Scatterer> targets)
    {
        std::vector<PolChannel> out;
        for (PolChannel c : all_channels)
            if (std::any_of(targets.begin(), targets.end(), [&](const Scatterer &t) { return t.s[c] != cplx{}; }))
                out.push_back(c);
        return out;
    }

    struct PointPsf
    {
        double width_row = 0.0, width_col = 0.0; // m, oam-coordinate units
        std::optional<double> pslr_db;
        double offset_row = 0.0, offset_col = 0.0; // peak position minus expected, m
    };

    // Focused response of a lone trihedral at `target` (defaults to the reference point).
    inline PointPsf point_psf(const ImagingSetup &s, const FocusOptions &opt = {}, std::optional<Vec3> target = {})
    {
        const Scatterer t{target.value_or(s.scene.reference()), ScatteringMatrix::trihedral()};
        const SlcImage img = focus_echo(synthesize_echo(s, std::span(&t, 1), s.carrier, 0, PolChannel::HH), s, opt);
        const PeakReport pk = measure_peak(img.data);
        const auto [pr, pc] = block_platforms(s, img.block);
        PointPsf out;
        out.width_row = pk.width_rows * img.spacing;
        out.width_col = pk.width_cols * img.spacing;
        out.pslr_db = pk.pslr_db;
        out.offset_row = img.rho_row(double(pk.row)) - oam_coordinate(s, pr, t.position);
        out.offset_col = img.rho_col(double(pk.col)) - oam_coordinate(s, pc, t.position);
        return out;
    }

    struct LocatedPeak
    {
        Vec3 expected;
        double found_x = 0.0, found_y = 0.0;
        double error = 0.0;      // m, ground distance
        double peak_db = 0.0;    // 20 log10 |peak|
        double width_x = 0.0, width_y = 0.0; // m, -3 dB widths along the ground axes
        bool local_max = false;  // strict maximum of its 3 x 3 neighbourhood
    };

    // Searches a (2 radius + 1)^2 pixel window of the ground image around each target footprint.
    inline std::vector<LocatedPeak> locate_targets(const GroundImage &g, std::span<const Scatterer> targets, double radius = 0.45)
    {
        std::vector<LocatedPeak> out;
        const auto rp = static_cast<long>(std::floor(radius / g.spacing));
        const long n = static_cast<long>(g.data.rows());
        for (const auto &t : targets)
        {
            LocatedPeak lp;
            lp.expected = t.position;
            const long r0 = std::lround((t.position.x - g.x0) / g.spacing), c0 = std::lround((t.position.y - g.y0) / g.spacing);
            const long rlo = std::max(0L, r0 - rp), rhi = std::min(n - 1, r0 + rp);
            const long clo = std::max(0L, c0 - rp), chi = std::min(n - 1, c0 + rp);
            if (rlo > rhi || clo > chi)
            {
                lp.error = std::numeric_limits<double>::infinity();
                out.push_back(lp);
                continue;
            }
            ComplexGrid win(std::size_t(rhi - rlo + 1), std::size_t(chi - clo + 1));
            for (long r = rlo; r <= rhi; ++r)
                for (long c = clo; c <= chi; ++c)
                    win(std::size_t(r - rlo), std::size_t(c - clo)) = g.data(std::size_t(r), std::size_t(c));
            if (win.energy() == 0.0)
            {
                lp.error = std::numeric_limits<double>::infinity();
                out.push_back(lp);
                continue;
            }
            const PeakReport pk = measure_peak(win);
            const long pr = rlo + long(pk.row), pc = clo + long(pk.col);
            lp.found_x = g.x(double(pr));
            lp.found_y = g.y(double(pc));
            lp.error = std::hypot(lp.found_x - t.position.x, lp.found_y - t.position.y);
            lp.peak_db = pk.peak_mag_db;
            lp.width_x = pk.width_rows * g.spacing;
            lp.width_y = pk.width_cols * g.spacing;
            lp.local_max = pr > 0 && pc > 0 && pr + 1 < n && pc + 1 < n;
            for (long dr = -1; dr <= 1 && lp.local_max; ++dr)
                for (long dc = -1; dc <= 1; ++dc)
                    if ((dr || dc) && std::norm(g.data(std::size_t(pr + dr), std::size_t(pc + dc))) >=
                                          std::norm(g.data(std::size_t(pr), std::size_t(pc))))
                        lp.local_max = false;
            out.push_back(lp);
        }
        return out;
    }

    struct StackOptions
    {
        FocusOptions focus;
        GroundOptions ground;
        std::optional<double> snr_db;
        std::uint64_t seed = 0;
        unsigned threads = 1;
    };

    // Synthesizes, focuses and remaps one image per chirp frequency for each requested channel, then
    // flattens. Work is spread over (channel, frequency) pairs; results do not depend on the thread count.
    inline std::vector<McaStack> tomo_stacks(const ImagingSetup &s, const ChirpPlan &chirp, std::span<const Scatterer> targets,
                                             std::span<const PolChannel> channels, const StackOptions &opt = {})
    {
        require(chirp.size() >= 2, "chirp.steps", "tomography needs >= 2 frequency steps");
        const std::size_t kf = chirp.size();
        std::vector<McaStack> stacks(channels.size());
        for (auto &st : stacks)
        {
            st.images.resize(kf);
            st.frequencies = chirp.frequencies;
            st.coregistered = true;
        }
        parallel_for(channels.size() * kf, opt.threads, [&](std::size_t task) {
            const std::size_t c = task / kf, k = task % kf;
            const EchoMatrix e = synthesize_echo(s, targets, chirp.frequencies[k], k, channels[c],
                                                 {EchoBlock::MS, opt.snr_db, opt.seed});
            stacks[c].images[k] = ground_remap(focus_echo(e, s, opt.focus), s, opt.ground);
        });
        for (auto &st : stacks)
            st = flatten(std::move(st), s);
        return stacks;
    }

    // Height profile at the ground cell under (x, y) from unit trihedrals stacked at the given
    // line-of-sight elevations.
    inline TomoProfile elevation_probe(const ImagingSetup &s, const ChirpPlan &chirp, std::span<const double> elevations,
                                       std::span<const double> z_grid, const StackOptions &opt = {})
    {
        const double x = s.scene.reference_x, y = s.scene.reference_y;
        std::vector<Scatterer> targets;
        for (double e : elevations)
            targets.push_back({{x, y, height_for_elevation(s.platforms, s.scene, x, y, e)}, ScatteringMatrix::trihedral()});
        const PolChannel hh = PolChannel::HH;
        const auto stacks = tomo_stacks(s, chirp, targets, std::span(&hh, 1), opt);
        const auto [r, c] = stacks[0].images[0].pixel_of(x, y);
        return tomo_invert(steering_matrix(stacks[0].frequencies, z_grid), multilook_vector(stacks[0], r, c));
    }

    inline double height_psf_width(const ImagingSetup &s, const ChirpPlan &chirp, const StackOptions &opt = {})
    {
        const double d = tomo_resolution(chirp.bandwidth);
        const double e = 0.0;
        const auto z = linear_grid(-3.0 * d, 3.0 * d, d / 200.0);
        return profile_width(elevation_probe(s, chirp, std::span(&e, 1), z, opt));
    }

    inline bool pair_resolved(const ImagingSetup &s, const ChirpPlan &chirp, double separation, const StackOptions &opt = {})
    {
        const double d = tomo_resolution(chirp.bandwidth), m = std::max(d, separation);
        const double el[] = {0.0, separation};
        const auto z = linear_grid(-1.5 * m, separation + 1.5 * m, std::min(d, separation) / 100.0);
        return two_peaks_resolved(elevation_probe(s, chirp, el, z, opt), 0.0, separation);
    }
} // namespace oamgeo
