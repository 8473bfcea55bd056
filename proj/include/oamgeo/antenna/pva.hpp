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
#include <functional>
#include <numbers>
#include <ostream>
#include <span>
#include <vector>

#include "../core/bessel.hpp"
#include "../core/complex_grid.hpp"
#include "../core/errors.hpp"

namespace oamgeo
{
    // Planar vortex antenna: an N x M grid of isotropic radiators in the antenna y-z plane,
    // raised `element_height` above an infinite conducting reflector. Boresight is +x.
    // Element (n, m) sits at y = (m - (M-1)/2) d, z = (n - (N-1)/2) d.
    struct PvaArray
    {
        std::size_t n_rows = 16;        // N, along z
        std::size_t n_cols = 16;        // M, along y
        double spacing = 0.0;           // m
        double element_height = 0.015;  // m above reflector
        double aperture_radius = 0.0;   // m, radius used by the Bessel beam model
        double wavelength = 0.0;        // m
        std::vector<double> phase_offsets; // rad, row-major [n * M + m], each in [-pi, pi)

        std::size_t element_count() const { return n_rows * n_cols; }
        double element_y(std::size_t m) const { return (double(m) - 0.5 * double(n_cols - 1)) * spacing; }
        double element_z(std::size_t n) const { return (double(n) - 0.5 * double(n_rows - 1)) * spacing; }
        double half_width_y() const { return 0.5 * double(n_cols - 1) * spacing; }
        double half_width_z() const { return 0.5 * double(n_rows - 1) * spacing; }

        // Root-mean-square element distance from the array centre: the radius of the ring whose
        // vortex pattern J_l(k a sin(theta)) has the same small-angle slope and curvature as the grid.
        double rms_radius() const
        {
            double s = 0.0;
            for (std::size_t n = 0; n < n_rows; ++n)
                for (std::size_t m = 0; m < n_cols; ++m)
                    s += element_y(m) * element_y(m) + element_z(n) * element_z(n);
            return std::sqrt(s / double(element_count()));
        }
    };

    // Builds a validated array with zero phase offsets. A non-positive aperture radius selects rms_radius().
    inline PvaArray make_pva(std::size_t rows, std::size_t cols, double spacing, double wavelength,
                             double element_height = 0.015, double aperture_radius = 0.0)
    {
        require(rows >= 2, "array.rows", "must be >= 2");
        require(cols >= 2, "array.cols", "must be >= 2");
        require(spacing > 0.0 && std::isfinite(spacing), "array.spacing", "must be > 0");
        require(wavelength > 0.0 && std::isfinite(wavelength), "carrier_hz", "wavelength must be > 0");
        require(element_height > 0.0 && std::isfinite(element_height), "array.element_height_m", "must be > 0");
        require(aperture_radius >= 0.0 && std::isfinite(aperture_radius), "array.aperture_radius_m", "must be >= 0");
        PvaArray a;
        a.n_rows = rows;
        a.n_cols = cols;
        a.spacing = spacing;
        a.wavelength = wavelength;
        a.element_height = element_height;
        a.phase_offsets.assign(rows * cols, 0.0);
        a.aperture_radius = aperture_radius > 0.0 ? aperture_radius : a.rms_radius();
        return a;
    }

    namespace detail
    {
        inline std::vector<double> vortex_phases(const PvaArray &array, int mode, double depth, double yc, double zc)
        {
            std::vector<double> phases(array.element_count());
            for (std::size_t n = 0; n < array.n_rows; ++n)
                for (std::size_t m = 0; m < array.n_cols; ++m)
                {
                    const double psi = std::atan2(array.element_y(m) - yc, array.element_z(n) - zc);
                    phases[n * array.n_cols + m] = wrap_to_pi(depth * mode * psi);
                }
            return phases;
        }
    } // namespace detail

    // Vortex phase ramp wound about the geometric centre: wrap(depth * mode * atan2(y, z)).
    inline std::vector<double> symmetric_vortex_phases(const PvaArray &array, int mode, double depth)
    {
        require(mode == 1, "array.mode", "only the single OAM mode l = 1 is modelled");
        require(depth > 0.0 && depth <= 1.0, "array.depth", "modulation depth must lie in (0, 1]");
        return detail::vortex_phases(array, mode, depth, 0.0, 0.0);
    }

    // Same ramp wound about a centroid displaced by (shift_y, shift_z) metres.
    inline std::vector<double> asymmetric_vortex_phases(const PvaArray &array, int mode, double shift_y, double shift_z,
                                                        double depth = 1.0)
    {
        require(mode == 1, "array.mode", "only the single OAM mode l = 1 is modelled");
        require(depth > 0.0 && depth <= 1.0, "array.depth", "modulation depth must lie in (0, 1]");
        require(std::abs(shift_y) <= array.half_width_y() && std::abs(shift_z) <= array.half_width_z(),
                "array.shift", "OAM centroid must stay inside the panel");
        return detail::vortex_phases(array, mode, depth, shift_y, shift_z);
    }

    // Unit vector for polar angle theta off boresight (+x) and azimuth phi measured from +y toward +z.
    inline double direction_dot(const PvaArray &array, std::size_t n, std::size_t m, double theta, double phi)
    {
        return std::sin(theta) * (array.element_y(m) * std::cos(phi) + array.element_z(n) * std::sin(phi));
    }

    // Normalized element sum (1/NM) sum exp(-j k r.r_nm) exp(j phi_nm), no reflector.
    inline cplx array_factor(const PvaArray &array, double k, double theta, double phi)
    {
        const double st = std::sin(theta), cp = std::cos(phi), sp = std::sin(phi);
        cplx sum{};
        for (std::size_t n = 0; n < array.n_rows; ++n)
        {
            const double zn = array.element_z(n);
            for (std::size_t m = 0; m < array.n_cols; ++m)
            {
                const double proj = st * (array.element_y(m) * cp + zn * sp);
                sum += std::polar(1.0, array.phase_offsets[n * array.n_cols + m] - k * proj);
            }
        }
        return sum / double(array.element_count());
    }

    // Image-theory factor of an element at height h over an infinite conductor.
    inline double reflector_factor(double k, double element_height, double theta)
    {
        return 2.0 * std::sin(k * element_height * std::cos(theta));
    }

    inline bool grating_lobe_risk(const PvaArray &array, double k) { return std::abs(k * array.spacing) >= 2.0 * std::numbers::pi; }

    inline cplx far_field_exact(const PvaArray &array, double k, double theta, double phi)
    {
        return array_factor(array, k, theta, phi) * reflector_factor(k, array.element_height, theta);
    }

    // Closed-form vortex beam: NM j^-l exp(-j l phi) J_l(k a sin theta). Range phase excluded.
    inline cplx far_field_bessel(int mode, double radius, double k, double theta, double phi, double nm)
    {
        require(mode == 1, "array.mode", "only the single OAM mode l = 1 is modelled");
        const cplx j_pow = std::pow(cplx(0.0, 1.0), -mode);
        return nm * j_pow * std::polar(1.0, -mode * phi) * bessel_j(mode, k * radius * std::sin(theta));
    }

    // U = (NM)^2 J_1^2(k a sin theta).
    inline double radiation_intensity(int mode, double radius, double k, double theta, double nm)
    {
        require(mode == 1, "array.mode", "only the single OAM mode l = 1 is modelled");
        const double j1 = bessel_j(1, k * radius * std::sin(theta));
        return nm * nm * j1 * j1;
    }

    // Angle of the first maximum of |J_1(k a sin theta)|.
    inline double mainlobe_angle(double radius, double k)
    {
        constexpr double j1_first_max = 1.8411837813406593;
        return std::asin(std::min(1.0, j1_first_max / (k * radius)));
    }

    struct AngularGrid
    {
        std::vector<double> theta; // rad, ascending
        std::vector<double> phi;   // rad, ascending, covering [0, 2 pi) uniformly

        static AngularGrid uniform(double theta_max, double step)
        {
            AngularGrid g;
            const auto nt = static_cast<std::size_t>(std::llround(theta_max / step));
            for (std::size_t i = 0; i <= nt; ++i)
                g.theta.push_back(theta_max * double(i) / double(nt));
            const auto np = static_cast<std::size_t>(std::llround(2.0 * std::numbers::pi / step));
            for (std::size_t i = 0; i < np; ++i)
                g.phi.push_back(2.0 * std::numbers::pi * double(i) / double(np));
            return g;
        }

        static AngularGrid hemisphere(double step) { return uniform(0.5 * std::numbers::pi, step); }
        static AngularGrid sphere(double step) { return uniform(std::numbers::pi, step); }
    };

    struct GainPattern
    {
        AngularGrid grid;
        ComplexGrid field;          // theta rows x phi cols
        std::vector<double> gain;   // linear, same layout
        double peak_gain_dbi = 0.0; // directivity
        double peak_theta = 0.0, peak_phi = 0.0;

        double gain_dbi(std::size_t it, std::size_t ip) const { return db10(gain[it * grid.phi.size() + ip]); }
    };

    // gain = 4 pi |E|^2 / integral |E|^2 dOmega over the grid's solid angle (trapezoid in theta,
    // rectangle rule on the periodic phi axis). Regions outside the grid radiate nothing.
    inline GainPattern directivity_pattern(const std::function<cplx(double, double)> &field, const AngularGrid &grid)
    {
        require(grid.theta.size() >= 2 && grid.phi.size() >= 2, "pattern.grid", "needs >= 2 samples per axis");
        GainPattern p;
        p.grid = grid;
        const std::size_t nt = grid.theta.size(), np = grid.phi.size();
        p.field = ComplexGrid(nt, np);
        for (std::size_t it = 0; it < nt; ++it)
            for (std::size_t ip = 0; ip < np; ++ip)
                p.field(it, ip) = field(grid.theta[it], grid.phi[ip]);

        const double dphi = 2.0 * std::numbers::pi / double(np);
        double total = 0.0;
        for (std::size_t it = 0; it < nt; ++it)
        {
            double ring = 0.0;
            for (std::size_t ip = 0; ip < np; ++ip)
                ring += std::norm(p.field(it, ip));
            double dtheta = 0.0;
            if (it > 0)
                dtheta += 0.5 * (grid.theta[it] - grid.theta[it - 1]);
            if (it + 1 < nt)
                dtheta += 0.5 * (grid.theta[it + 1] - grid.theta[it]);
            total += ring * dphi * dtheta * std::sin(grid.theta[it]);
        }
        if (!(total > 0.0))
            throw DegenerateError("gain_pattern: radiated field is identically zero");

        p.gain.resize(nt * np);
        double best = -1.0;
        for (std::size_t it = 0; it < nt; ++it)
            for (std::size_t ip = 0; ip < np; ++ip)
            {
                const double g = 4.0 * std::numbers::pi * std::norm(p.field(it, ip)) / total;
                p.gain[it * np + ip] = g;
                if (g > best)
                {
                    best = g;
                    p.peak_theta = grid.theta[it];
                    p.peak_phi = grid.phi[ip];
                }
            }
        p.peak_gain_dbi = db10(best);
        return p;
    }

    inline GainPattern gain_pattern(const PvaArray &array, double k, const AngularGrid &grid)
    {
        require(!grid.theta.empty() && grid.theta.back() <= 0.5 * std::numbers::pi + 1e-12, "pattern.grid",
                "reflector-backed array radiates into the forward hemisphere only");
        return directivity_pattern([&](double t, double p) { return far_field_exact(array, k, t, p); }, grid);
    }

    // Relative L2 error between the element-sum array factor and the closed-form Bessel beam
    // over theta in [0, theta_max] on the given azimuth cuts. One complex scale factor, fitted by
    // least squares, absorbs the global normalization and the constant j^-l phase.
    inline double bessel_model_error(const PvaArray &array, double k, double theta_max, std::size_t n_theta,
                                     std::span<const double> phis, int mode = 1)
    {
        std::vector<cplx> exact, model;
        for (double phi : phis)
            for (std::size_t i = 0; i <= n_theta; ++i)
            {
                const double theta = theta_max * double(i) / double(n_theta);
                exact.push_back(array_factor(array, k, theta, phi));
                model.push_back(far_field_bessel(mode, array.aperture_radius, k, theta, phi, double(array.element_count())));
            }
        cplx num{};
        double den = 0.0;
        for (std::size_t i = 0; i < exact.size(); ++i)
        {
            num += std::conj(model[i]) * exact[i];
            den += std::norm(model[i]);
        }
        if (!(den > 0.0))
            throw DegenerateError("bessel_model_error: model is identically zero");
        const cplx scale = num / den;
        double err = 0.0, ref = 0.0;
        for (std::size_t i = 0; i < exact.size(); ++i)
        {
            err += std::norm(exact[i] - scale * model[i]);
            ref += std::norm(scale * model[i]);
        }
        return std::sqrt(err / ref);
    }

    inline void write_pattern_csv(std::ostream &os, const GainPattern &p)
    {
        os << "theta_deg,phi_deg,gain_dbi,field_re,field_im\n";
        os.precision(10);
        for (std::size_t it = 0; it < p.grid.theta.size(); ++it)
            for (std::size_t ip = 0; ip < p.grid.phi.size(); ++ip)
            {
                const cplx e = p.field(it, ip);
                const double g = p.gain[it * p.grid.phi.size() + ip];
                os << p.grid.theta[it] * 180.0 / std::numbers::pi << ',' << p.grid.phi[ip] * 180.0 / std::numbers::pi << ','
                   << (g > 0.0 ? db10(g) : -400.0) << ',' << e.real() << ',' << e.imag() << '\n';
            }
    }
} // namespace oamgeo
