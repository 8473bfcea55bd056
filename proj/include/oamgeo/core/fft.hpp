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
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "complex_grid.hpp"

namespace oamgeo
{
    enum class FftDirection
    {
        forward, // exp(-j 2 pi n m / N)
        inverse  // exp(+j 2 pi n m / N)
    };

    namespace detail
    {
        inline bool is_pow2(std::size_t n) { return n && !(n & (n - 1)); }

        // In-place iterative radix-2, no scaling.
        inline void fft_pow2(std::span<cplx> a, bool inverse)
        {
            const std::size_t n = a.size();
            for (std::size_t i = 1, j = 0; i < n; ++i)
            {
                std::size_t bit = n >> 1;
                for (; j & bit; bit >>= 1)
                    j ^= bit;
                j ^= bit;
                if (i < j)
                    std::swap(a[i], a[j]);
            }
            const double sgn = inverse ? 1.0 : -1.0;
            for (std::size_t len = 2; len <= n; len <<= 1)
            {
                const std::size_t half = len / 2;
                // Twiddles evaluated directly (no recurrence) to keep round-off at ~1 ulp.
                std::vector<cplx> tw(half);
                for (std::size_t k = 0; k < half; ++k)
                    tw[k] = std::polar(1.0, sgn * 2.0 * std::numbers::pi * double(k) / double(len));
                for (std::size_t i = 0; i < n; i += len)
                    for (std::size_t k = 0; k < half; ++k)
                    {
                        const cplx u = a[i + k];
                        const cplx v = a[i + k + half] * tw[k];
                        a[i + k] = u + v;
                        a[i + k + half] = u - v;
                    }
            }
        }

        // Bluestein chirp-z for arbitrary lengths, no scaling.
        inline void fft_any(std::span<cplx> a, bool inverse)
        {
            const std::size_t n = a.size();
            if (n <= 1)
                return;
            if (is_pow2(n))
                return fft_pow2(a, inverse);

            std::size_t m = 1;
            while (m < 2 * n - 1)
                m <<= 1;
            const double sgn = inverse ? 1.0 : -1.0;
            std::vector<cplx> chirp(n);
            for (std::size_t k = 0; k < n; ++k)
            {
                // k^2 mod 2n keeps the angle argument small for long transforms
                const std::size_t k2 = (k * k) % (2 * n);
                chirp[k] = std::polar(1.0, sgn * std::numbers::pi * double(k2) / double(n));
            }
            std::vector<cplx> x(m), y(m);
            for (std::size_t k = 0; k < n; ++k)
                x[k] = a[k] * chirp[k];
            y[0] = std::conj(chirp[0]);
            for (std::size_t k = 1; k < n; ++k)
                y[k] = y[m - k] = std::conj(chirp[k]);
            fft_pow2(x, false);
            fft_pow2(y, false);
            for (std::size_t k = 0; k < m; ++k)
                x[k] *= y[k];
            fft_pow2(x, true);
            const double inv_m = 1.0 / double(m);
            for (std::size_t k = 0; k < n; ++k)
                a[k] = x[k] * inv_m * chirp[k];
        }
    } // namespace detail

    // Unitary 1D DFT (scale 1/sqrt(N)).
    inline std::vector<cplx> dft(std::span<const cplx> in, FftDirection dir)
    {
        std::vector<cplx> out(in.begin(), in.end());
        detail::fft_any(out, dir == FftDirection::inverse);
        const double s = out.empty() ? 1.0 : 1.0 / std::sqrt(double(out.size()));
        for (auto &v : out)
            v *= s;
        return out;
    }

    // Unitary 2D DFT, scale 1/sqrt(rows*cols). inverse(forward(x)) == x.
    inline ComplexGrid dft2(const ComplexGrid &grid, FftDirection dir)
    {
        const std::size_t rows = grid.rows(), cols = grid.cols();
        ComplexGrid out = grid;
        const bool inv = dir == FftDirection::inverse;
        for (std::size_t r = 0; r < rows; ++r)
            detail::fft_any(out.row(r), inv);
        std::vector<cplx> column(rows);
        for (std::size_t c = 0; c < cols; ++c)
        {
            for (std::size_t r = 0; r < rows; ++r)
                column[r] = out(r, c);
            detail::fft_any(column, inv);
            for (std::size_t r = 0; r < rows; ++r)
                out(r, c) = column[r];
        }
        out *= cplx(1.0 / std::sqrt(double(rows * cols)), 0.0);
        return out;
    }

    // Moves the zero-frequency bin to (rows/2, cols/2).
    inline ComplexGrid fftshift2(const ComplexGrid &g)
    {
        ComplexGrid out(g.rows(), g.cols());
        const std::size_t hr = g.rows() / 2, hc = g.cols() / 2;
        for (std::size_t r = 0; r < g.rows(); ++r)
            for (std::size_t c = 0; c < g.cols(); ++c)
                out((r + hr) % g.rows(), (c + hc) % g.cols()) = g(r, c);
        return out;
    }
} // namespace oamgeo
