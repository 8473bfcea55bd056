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
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "../core/random.hpp"
#include "../imaging/focus.hpp"

namespace oamgeo
{
    // Ground-remapped images, one per chirp frequency, sorted by frequency.
    struct McaStack
    {
        std::vector<GroundImage> images;
        std::vector<double> frequencies;
        bool coregistered = false;
        bool flattened = false;

        std::size_t size() const { return images.size(); }
    };

    // Focuses and remaps each frequency step independently. All images share the carrier-referenced
    // OAM grid, so coregistration is the identity.
    inline McaStack mca_split(std::vector<EchoMatrix> echoes, const ChirpPlan &chirp, const ImagingSetup &s,
                              const FocusOptions &focus = {}, const GroundOptions &ground = {}, unsigned threads = 1)
    {
        require(!echoes.empty(), "chirp.steps", "no echoes supplied");
        require(echoes.size() == chirp.size(), "chirp.steps", "one echo per chirp frequency is required");
        std::sort(echoes.begin(), echoes.end(), [](const auto &a, const auto &b) { return a.frequency < b.frequency; });
        for (std::size_t i = 0; i < echoes.size(); ++i)
            require(std::abs(echoes[i].frequency - chirp.frequencies[i]) <= 1e-6 * chirp.frequencies[i], "chirp",
                    "echo frequencies do not match the chirp plan");
        McaStack st;
        st.images.resize(echoes.size());
        parallel_for(echoes.size(), threads, [&](std::size_t i) {
            st.images[i] = ground_remap(focus_echo(echoes[i], s, focus), s, ground);
        });
        for (const auto &e : echoes)
            st.frequencies.push_back(e.frequency);
        st.coregistered = true;
        return st;
    }

    // Two-way range offset of the ground point (x, y, 0) relative to the reference point.
    inline double footprint_range_sum(const ImagingSetup &s, double x, double y, EchoBlock block = EchoBlock::MS)
    {
        const auto [pr, pc] = block_platforms(s, block);
        const Vec3 foot = s.scene.to_ecef({x, y, 0.0}), ref = s.reference_ecef();
        return range_offset(pr.position, foot, ref) + range_offset(pc.position, foot, ref);
    }

    // Removes the ground-plane range phase of every pixel so that what remains is the phase of the
    // line-of-sight elevation alone.
    inline McaStack flatten(McaStack st, const ImagingSetup &s, EchoBlock block = EchoBlock::MS)
    {
        require(!st.flattened, "tomo", "stack is already flattened");
        for (std::size_t k = 0; k < st.size(); ++k)
        {
            auto &g = st.images[k];
            const double kf = 2.0 * std::numbers::pi * st.frequencies[k] / speed_of_light;
            for (std::size_t r = 0; r < g.data.rows(); ++r)
                for (std::size_t c = 0; c < g.data.cols(); ++c)
                    g.data(r, c) *= std::polar(1.0, kf * footprint_range_sum(s, g.x(double(r)), g.y(double(c)), block));
        }
        st.flattened = true;
        return st;
    }

    // Coherent L1 x L2 sum centred on (row, col), one value per frequency.
    inline std::vector<cplx> multilook_vector(const McaStack &st, std::size_t row, std::size_t col, std::size_t l1 = 1,
                                              std::size_t l2 = 1)
    {
        require(st.size() >= 1, "tomo", "empty stack");
        require(l1 >= 1 && l2 >= 1, "tomo.multilook", "window must be >= 1");
        const auto &g0 = st.images.front().data;
        require(row >= l1 / 2 && col >= l2 / 2 && row + (l1 - 1) / 2 < g0.rows() + 0 && col + (l2 - 1) / 2 < g0.cols(),
                "tomo.cells", "multilook window leaves the image");
        std::vector<cplx> y(st.size());
        for (std::size_t k = 0; k < st.size(); ++k)
        {
            cplx sum{};
            for (std::size_t r = row - l1 / 2; r < row - l1 / 2 + l1; ++r)
                for (std::size_t c = col - l2 / 2; c < col - l2 / 2 + l2; ++c)
                    sum += st.images[k].data(r, c);
            y[k] = sum;
        }
        return y;
    }

    struct SteeringMatrix
    {
        ComplexGrid entries; // K_f x F
        std::vector<double> z_grid;
        std::vector<double> frequencies;
    };

    // Entry (k, f) = exp(j 4 pi f_k z_f / c).
    inline SteeringMatrix steering_matrix(std::span<const double> frequencies, std::span<const double> z_grid)
    {
        require(frequencies.size() >= 2, "chirp.steps", "tomography needs >= 2 frequencies");
        require(!z_grid.empty(), "tomo.z_grid", "needs >= 1 height");
        SteeringMatrix a{ComplexGrid(frequencies.size(), z_grid.size()), {z_grid.begin(), z_grid.end()},
                         {frequencies.begin(), frequencies.end()}};
        for (std::size_t k = 0; k < frequencies.size(); ++k)
            for (std::size_t f = 0; f < z_grid.size(); ++f)
                a.entries(k, f) = std::polar(1.0, 4.0 * std::numbers::pi * frequencies[k] * z_grid[f] / speed_of_light);
        return a;
    }

    inline double height_ambiguity(const ChirpPlan &chirp) { return speed_of_light / (2.0 * chirp.step()); }

    // oversampling * K_f heights spanning one ambiguity interval, a quarter of it below ground.
    inline std::vector<double> default_height_grid(const ChirpPlan &chirp, std::size_t oversampling = 4)
    {
        require(oversampling >= 1, "tomo.height_oversampling", "must be >= 1");
        const double amb = height_ambiguity(chirp);
        const std::size_t f = oversampling * chirp.size();
        std::vector<double> z(f);
        for (std::size_t i = 0; i < f; ++i)
            z[i] = -0.25 * amb + amb * double(i) / double(f);
        return z;
    }

    inline std::vector<double> linear_grid(double lo, double hi, double step)
    {
        require(hi > lo && step > 0.0 && (hi - lo) / step < 1e6, "tomo.z_grid", "invalid height range");
        std::vector<double> z;
        for (std::size_t i = 0; lo + double(i) * step <= hi + 1e-12; ++i)
            z.push_back(lo + double(i) * step);
        return z;
    }

    struct TomoProfile
    {
        std::vector<double> z;
        std::vector<cplx> h;
        PolChannel channel = PolChannel::HH;

        double power(std::size_t i) const { return std::norm(h[i]); }
    };

    // Matched-filter beamforming in height: h = A^H y / K_f.
    inline TomoProfile tomo_invert(const SteeringMatrix &a, std::span<const cplx> y)
    {
        require(y.size() == a.entries.rows(), "tomo", "data vector length must equal the number of frequencies");
        TomoProfile p;
        p.z = a.z_grid;
        p.h.assign(a.z_grid.size(), cplx{});
        const double inv = 1.0 / double(y.size());
        for (std::size_t f = 0; f < a.z_grid.size(); ++f)
        {
            cplx sum{};
            for (std::size_t k = 0; k < y.size(); ++k)
                sum += std::conj(a.entries(k, f)) * y[k];
            p.h[f] = sum * inv;
        }
        return p;
    }

    inline double tomo_resolution(double bandwidth)
    {
        require(std::isfinite(bandwidth) && bandwidth > 0.0, "chirp.bandwidth_hz", "must be > 0");
        return speed_of_light / (2.0 * bandwidth);
    }

    // Real-aperture diffraction limit lambda R / (2 A).
    inline double classical_resolution(double wavelength, double range, double aperture)
    {
        require(wavelength > 0.0 && range > 0.0, "classical_resolution", "wavelength and range must be > 0");
        require(aperture > 0.0, "classical_resolution", "aperture must be > 0");
        return wavelength * range / (2.0 * aperture);
    }

    // Indices of local maxima of |h|^2 no weaker than floor_db below the strongest, strongest first.
    inline std::vector<std::size_t> profile_peaks(const TomoProfile &p, double floor_db = -20.0)
    {
        std::vector<std::size_t> idx;
        const std::size_t n = p.h.size();
        double best = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            best = std::max(best, p.power(i));
        if (!(best > 0.0))
            return idx;
        const double floor = best * std::pow(10.0, floor_db / 10.0);
        for (std::size_t i = 0; i < n; ++i)
        {
            const double v = p.power(i);
            const bool left = i == 0 || v > p.power(i - 1);
            const bool right = i + 1 == n || v >= p.power(i + 1);
            if (left && right && v >= floor)
                idx.push_back(i);
        }
        std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return p.power(a) > p.power(b); });
        return idx;
    }

    // Targets expected at heights za < zb are resolved when the profile has a local maximum on each side
    // of their midpoint (searched within half a separation beyond each target) and the deepest point
    // between those maxima is at least 3 dB below the weaker one.
    inline bool two_peaks_resolved(const TomoProfile &p, double za, double zb)
    {
        require(zb > za, "tomo", "expected heights must be increasing");
        const double d = zb - za, mid = 0.5 * (za + zb);
        auto argmax_in = [&](double lo, double hi) -> std::optional<std::size_t> {
            std::optional<std::size_t> best;
            for (std::size_t i = 0; i < p.z.size(); ++i)
                if (p.z[i] >= lo && p.z[i] <= hi && (!best || p.power(i) > p.power(*best)))
                    best = i;
            return best;
        };
        const auto a = argmax_in(za - 0.5 * d, mid), b = argmax_in(mid, zb + 0.5 * d);
        if (!a || !b || *a == 0 || *b + 1 >= p.h.size())
            return false;
        auto local_max = [&](std::size_t i) { return p.power(i) > p.power(i - 1) && p.power(i) >= p.power(i + 1); };
        if (!local_max(*a) || !local_max(*b))
            return false;
        double dip = p.power(*a);
        for (std::size_t i = *a; i <= *b; ++i)
            dip = std::min(dip, p.power(i));
        return dip <= 0.5 * std::min(p.power(*a), p.power(*b));
    }

    // -3 dB width of the strongest peak in metres (linear interpolation between samples).
    inline double profile_width(const TomoProfile &p)
    {
        const auto pk = profile_peaks(p, -200.0);
        if (pk.empty())
            throw DegenerateError("profile_width: profile is identically zero");
        const std::size_t m = pk.front();
        const double half = 0.5 * p.power(m);
        auto edge = [&](int step) {
            long i = long(m);
            while (true)
            {
                const long j = i + step;
                if (j < 0 || j >= long(p.h.size()))
                    throw DegenerateError("profile_width: peak not contained in the height grid");
                if (p.power(std::size_t(j)) < half)
                {
                    const double t = (p.power(std::size_t(i)) - half) / (p.power(std::size_t(i)) - p.power(std::size_t(j)));
                    return p.z[std::size_t(i)] + t * (p.z[std::size_t(j)] - p.z[std::size_t(i)]);
                }
                i = j;
            }
        };
        return edge(+1) - edge(-1);
    }
} // namespace oamgeo
