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
#include <optional>
#include <vector>

#include "complex_grid.hpp"
#include "errors.hpp"

namespace oamgeo
{
    // Point-target quality metrics of a focused response.
    struct PeakReport
    {
        std::size_t row = 0, col = 0;     // global maximum; ties go to the smallest (row, col)
        double peak_mag_db = 0.0;         // 20 log10 |peak|
        double width_rows = 0.0;          // -3 dB width along the column direction (samples)
        double width_cols = 0.0;          // -3 dB width along the row direction (samples)
        std::optional<double> pslr_db;    // empty when no sidelobe exists
        bool tie = false;                 // another sample shares the peak magnitude
    };

    namespace detail
    {
        // -3 dB width of a power profile through `peak`. Samples beyond the ends count as zero.
        inline double half_power_width(const std::vector<double> &p, std::size_t peak)
        {
            const double half = 0.5 * p[peak];
            auto crossing = [&](int step) {
                long i = static_cast<long>(peak);
                const long n = static_cast<long>(p.size());
                while (true)
                {
                    const long j = i + step;
                    const double pj = (j < 0 || j >= n) ? 0.0 : p[j];
                    if (pj < half)
                    {
                        const double t = (p[i] - half) / (p[i] - pj);
                        return static_cast<double>(i - static_cast<long>(peak)) + step * t;
                    }
                    i = j;
                }
            };
            return crossing(+1) - crossing(-1);
        }

        // Largest local maximum outside the mainlobe (mainlobe ends at the first minimum on each side).
        inline std::optional<double> max_sidelobe(const std::vector<double> &p, std::size_t peak)
        {
            const std::size_t n = p.size();
            std::size_t lo = peak, hi = peak;
            while (lo > 0 && p[lo - 1] <= p[lo])
                --lo;
            while (hi + 1 < n && p[hi + 1] <= p[hi])
                ++hi;
            std::optional<double> best;
            for (std::size_t i = 0; i < n; ++i)
            {
                if (i >= lo && i <= hi)
                    continue;
                const bool left_ok = i == 0 || p[i] >= p[i - 1];
                const bool right_ok = i + 1 == n || p[i] >= p[i + 1];
                const bool interior = i > 0 && i + 1 < n;
                if (left_ok && right_ok && interior && p[i] > 0.0)
                    best = std::max(best.value_or(0.0), p[i]);
            }
            return best;
        }
    } // namespace detail

    // Peak location, -3 dB widths on the power profile along both axes through the peak,
    // and PSLR from the two principal cuts. Throws DegenerateError on all-zero input.
    inline PeakReport measure_peak(const ComplexGrid &g)
    {
        if (g.empty())
            throw DegenerateError("measure_peak: empty grid");
        double best = -1.0;
        std::size_t best_idx = 0;
        const auto data = g.data();
        for (std::size_t i = 0; i < data.size(); ++i)
        {
            const double p = std::norm(data[i]);
            if (p > best)
            {
                best = p;
                best_idx = i;
            }
        }
        if (!(best > 0.0))
            throw DegenerateError("measure_peak: all samples are zero");

        PeakReport rep;
        rep.row = best_idx / g.cols();
        rep.col = best_idx % g.cols();
        rep.peak_mag_db = db10(best);
        for (std::size_t i = 0; i < data.size(); ++i)
            if (i != best_idx && std::abs(std::norm(data[i]) - best) <= 1e-12 * best)
                rep.tie = true;

        std::vector<double> along_row(g.cols()), along_col(g.rows());
        for (std::size_t c = 0; c < g.cols(); ++c)
            along_row[c] = std::norm(g(rep.row, c));
        for (std::size_t r = 0; r < g.rows(); ++r)
            along_col[r] = std::norm(g(r, rep.col));

        rep.width_cols = detail::half_power_width(along_row, rep.col);
        rep.width_rows = detail::half_power_width(along_col, rep.row);

        auto s1 = detail::max_sidelobe(along_row, rep.col);
        auto s2 = detail::max_sidelobe(along_col, rep.row);
        if (s1 || s2)
            rep.pslr_db = db10(std::max(s1.value_or(0.0), s2.value_or(0.0)) / best);
        return rep;
    }

    inline PeakReport measure_peak(std::span<const cplx> profile)
    {
        return measure_peak(ComplexGrid(1, profile.size(), std::vector<cplx>(profile.begin(), profile.end())));
    }
} // namespace oamgeo
