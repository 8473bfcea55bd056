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
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "../core/fft.hpp"
#include "echo.hpp"

namespace oamgeo
{
    enum class Window
    {
        none,
        hann
    };

    struct FocusOptions
    {
        std::size_t zero_pad = 8;
        Window window = Window::none;
    };

    // Focused single-look complex image over the OAM coordinates of the row and column platforms.
    // Pixel (r, c) sits at rho_row = (r - N/2) * spacing and rho_col = -(c - N/2) * spacing, in metres
    // of the oam_coordinate() of the respective platform.
    struct SlcImage
    {
        ComplexGrid data;
        double spacing = 0.0; // m per bin, both axes
        PolChannel channel = PolChannel::HH;
        EchoBlock block = EchoBlock::MS;
        std::size_t frequency_step = 0;
        double frequency = 0.0;

        double rho_row(double r) const { return (r - double(data.rows() / 2)) * spacing; }
        double rho_col(double c) const { return -(c - double(data.cols() / 2)) * spacing; }
        double row_of(double rho) const { return rho / spacing + double(data.rows() / 2); }
        double col_of(double rho) const { return -rho / spacing + double(data.cols() / 2); }
    };

    inline std::vector<double> window_taper(Window w, std::size_t n)
    {
        std::vector<double> t(n, 1.0);
        if (w == Window::hann)
            for (std::size_t i = 0; i < n; ++i)
            {
                const double s = std::sin(std::numbers::pi * (double(i) + 0.5) / double(n));
                t[i] = s * s;
            }
        return t;
    }

    // Bin spacing of the padded transform in oam-coordinate metres.
    inline double focus_bin_spacing(const ImagingSetup &s, std::size_t n)
    {
        const double lambda = speed_of_light / s.carrier;
        return lambda / (double(n) * s.phase_multiplier * s.sweep.step());
    }

    // Window, zero-pad to zero_pad * K, unitary 2D forward DFT, centre the zero bin.
    inline SlcImage focus_2d(const ComplexGrid &filtered, const ImagingSetup &s, const FocusOptions &opt = {})
    {
        const std::size_t k = filtered.rows();
        require(k >= 2 && filtered.cols() == k, "focus", "echo must be square with K >= 2");
        require(k == s.sweep.size(), "focus", "echo size must match the OAM sweep");
        require(opt.zero_pad >= 1 && opt.zero_pad <= 64, "imaging.zero_pad", "must lie in [1, 64]");
        const std::size_t n = k * opt.zero_pad;
        const auto taper = window_taper(opt.window, k);
        ComplexGrid padded(n, n);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                padded(i, j) = filtered(i, j) * (taper[i] * taper[j]);
        SlcImage img;
        img.data = fftshift2(dft2(padded, FftDirection::forward));
        img.spacing = focus_bin_spacing(s, n);
        return img;
    }

    inline SlcImage focus_echo(const EchoMatrix &echo, const ImagingSetup &s, const FocusOptions &opt = {})
    {
        const EchoMatrix ref = reference_echo(s, echo.frequency, echo.block);
        SlcImage img = focus_2d(matched_filter(echo.data, ref.data), s, opt);
        img.channel = echo.channel;
        img.block = echo.block;
        img.frequency_step = echo.frequency_step;
        img.frequency = echo.frequency;
        return img;
    }

    // -3 dB width of the focused point response in oam-coordinate metres (rectangular window).
    inline double psf_width_theory(const ImagingSetup &s)
    {
        const double lambda = speed_of_light / s.carrier;
        return 0.886 * lambda / (double(s.sweep.size()) * s.phase_multiplier * s.sweep.step());
    }

    // OAM bandwidth expressed in Hz: the xi span scaled by the carrier.
    inline double oam_bandwidth_hz(const ImagingSetup &s) { return s.sweep.span() * s.carrier; }

    // Rayleigh distances c / (2 B) along the two image axes; independent of the sensor range.
    inline std::pair<double, double> resolution_range_azimuth(double bx, double by)
    {
        require(std::isfinite(bx) && bx > 0.0, "bandwidth_x", "must be > 0");
        require(std::isfinite(by) && by > 0.0, "bandwidth_y", "must be > 0");
        return {speed_of_light / (2.0 * bx), speed_of_light / (2.0 * by)};
    }

    using Mat2 = std::array<std::array<double, 2>, 2>;

    inline double condition_number(const Mat2 &j)
    {
        const double f2 = j[0][0] * j[0][0] + j[0][1] * j[0][1] + j[1][0] * j[1][0] + j[1][1] * j[1][1];
        const double det = std::abs(j[0][0] * j[1][1] - j[0][1] * j[1][0]);
        const double disc = std::sqrt(std::max(0.0, f2 * f2 - 4.0 * det * det));
        const double smax = std::sqrt(0.5 * (f2 + disc));
        const double smin = det / smax; // smax * smin = |det|, avoids cancellation
        return smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
    }

    inline std::pair<const GeoPlatform &, const GeoPlatform &> block_platforms(const ImagingSetup &s, EchoBlock b)
    {
        const auto &m = s.platforms.master;
        const auto &sl = s.platforms.slave;
        switch (b)
        {
        case EchoBlock::MM: return {m, m};
        case EchoBlock::MS: return {m, sl};
        case EchoBlock::SM: return {sl, m};
        default: return {sl, sl};
        }
    }

    // d(rho_row, rho_col) / d(x, y) at the reference point, by central differences.
    inline Mat2 remap_jacobian(const ImagingSetup &s, EchoBlock block = EchoBlock::MS)
    {
        const auto [pr, pc] = block_platforms(s, block);
        const Vec3 r0 = s.scene.reference();
        constexpr double h = 0.5;
        Mat2 j{};
        for (int axis = 0; axis < 2; ++axis)
        {
            Vec3 a = r0, b = r0;
            (axis == 0 ? a.x : a.y) += h;
            (axis == 0 ? b.x : b.y) -= h;
            j[0][axis] = (oam_coordinate(s, pr, a) - oam_coordinate(s, pr, b)) / (2 * h);
            j[1][axis] = (oam_coordinate(s, pc, a) - oam_coordinate(s, pc, b)) / (2 * h);
        }
        return j;
    }

    struct GroundOptions
    {
        double spacing = 0.1; // m
        double extent = 8.0;  // m, square patch centred on the reference point
    };

    // Image resampled onto the scene ground plane. Pixel (r, c) sits at x = x0 + r * spacing,
    // y = y0 + c * spacing.
    struct GroundImage
    {
        ComplexGrid data;
        double x0 = 0.0, y0 = 0.0, spacing = 0.0;
        Mat2 jacobian{};
        double condition = 0.0;
        std::string warning;
        PolChannel channel = PolChannel::HH;
        std::size_t frequency_step = 0;
        double frequency = 0.0;

        double x(double r) const { return x0 + r * spacing; }
        double y(double c) const { return y0 + c * spacing; }
        std::pair<std::size_t, std::size_t> pixel_of(double xs, double ys) const
        {
            return {static_cast<std::size_t>(std::lround((xs - x0) / spacing)),
                    static_cast<std::size_t>(std::lround((ys - y0) / spacing))};
        }
    };

    inline cplx bilinear(const ComplexGrid &g, double r, double c)
    {
        if (!(r >= 0.0 && c >= 0.0 && r <= double(g.rows() - 1) && c <= double(g.cols() - 1)))
            return {};
        const auto r0 = std::min(static_cast<std::size_t>(r), g.rows() - 2);
        const auto c0 = std::min(static_cast<std::size_t>(c), g.cols() - 2);
        const double tr = r - double(r0), tc = c - double(c0);
        return (1 - tr) * ((1 - tc) * g(r0, c0) + tc * g(r0, c0 + 1)) + tr * ((1 - tc) * g(r0 + 1, c0) + tc * g(r0 + 1, c0 + 1));
    }

    // Maps each ground pixel through the linearized geometry into the focused image and interpolates.
    inline GroundImage ground_remap(const SlcImage &img, const ImagingSetup &s, const GroundOptions &opt = {})
    {
        require(std::isfinite(opt.spacing) && opt.spacing > 0.0, "imaging.ground_spacing_m", "must be > 0");
        require(std::isfinite(opt.extent) && opt.extent >= opt.spacing, "imaging.ground_extent_m", "must be >= spacing");
        require(opt.extent / opt.spacing <= 4096.0, "imaging.ground_extent_m", "ground grid too large");
        GroundImage g;
        g.jacobian = remap_jacobian(s, img.block);
        g.condition = condition_number(g.jacobian);
        if (!std::isfinite(g.condition) || g.condition > 1e12)
            throw DegenerateError("ground_remap: singular geometry, interferometric effect lost");
        if (s.platforms.baseline_deg < 2.0)
            g.warning = "baseline below 2 deg: strong geometric distortion (condition " + std::to_string(g.condition) + ")";
        const auto n = static_cast<std::size_t>(std::llround(opt.extent / opt.spacing)) + 1;
        g.spacing = opt.spacing;
        g.x0 = s.scene.reference_x - 0.5 * double(n - 1) * opt.spacing;
        g.y0 = s.scene.reference_y - 0.5 * double(n - 1) * opt.spacing;
        g.channel = img.channel;
        g.frequency_step = img.frequency_step;
        g.frequency = img.frequency;
        g.data = ComplexGrid(n, n);
        const auto &j = g.jacobian;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
            {
                const double dx = g.x(double(r)) - s.scene.reference_x, dy = g.y(double(c)) - s.scene.reference_y;
                const double rr = j[0][0] * dx + j[0][1] * dy, rc = j[1][0] * dx + j[1][1] * dy;
                g.data(r, c) = bilinear(img.data, img.row_of(rr), img.col_of(rc));
            }
        return g;
    }
} // namespace oamgeo
