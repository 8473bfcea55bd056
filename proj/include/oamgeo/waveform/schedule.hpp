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
#include <cstddef>
#include <numbers>
#include <ostream>
#include <vector>

#include "../core/complex_grid.hpp"
#include "../core/errors.hpp"
#include "../scene/geometry.hpp"

namespace oamgeo
{
    // Stepped OAM modulation: K helical-pitch states with depths xi_i, pitch_i = lambda / xi_i.
    struct OamSweep
    {
        std::vector<double> xi;
        std::vector<double> pitch; // m
        double bandwidth = 0.3;    // fraction of a wavelength
        double wavelength = 0.0;

        std::size_t size() const { return xi.size(); }
        double step() const { return xi[1] - xi[0]; }
        double span() const { return xi.back() - xi.front(); }
    };

    // Full bandwidth 0.5 sweeps xi over [2/3, 1] (pitch 1.5 lambda down to lambda); narrower bands shrink the span
    // linearly and keep the top end at xi = 1.
    inline OamSweep build_oam_sweep(std::size_t k, double bandwidth, double wavelength)
    {
        require(k >= 2, "oam.steps", "must be >= 2");
        require(std::isfinite(bandwidth) && bandwidth > 0.0 && bandwidth <= 0.5, "oam.bandwidth", "must lie in (0, 0.5]");
        require(std::isfinite(wavelength) && wavelength > 0.0, "carrier_hz", "wavelength must be > 0");
        OamSweep s;
        s.bandwidth = bandwidth;
        s.wavelength = wavelength;
        const double span = (bandwidth / 0.5) / 3.0;
        const double d = span / double(k - 1);
        for (std::size_t i = 0; i < k; ++i)
        {
            const double xi = i + 1 == k ? 1.0 : 1.0 - span + double(i) * d;
            s.xi.push_back(xi);
            s.pitch.push_back(wavelength / xi);
        }
        return s;
    }

    struct ChirpPlan
    {
        double carrier = 9.6e9; // Hz
        double bandwidth = 500e6;
        std::vector<double> frequencies;

        std::size_t size() const { return frequencies.size(); }
        double step() const { return bandwidth / double(frequencies.size() - 1); }
    };

    inline ChirpPlan build_chirp_plan(double carrier, double bandwidth, std::size_t k)
    {
        require(std::isfinite(carrier) && carrier > 0.0, "carrier_hz", "must be > 0");
        require(std::isfinite(bandwidth) && bandwidth > 0.0, "chirp.bandwidth_hz", "must be > 0");
        require(bandwidth < 2.0 * carrier, "chirp.bandwidth_hz", "must stay below twice the carrier");
        require(k >= 2, "chirp.steps", "must be >= 2");
        ChirpPlan p{carrier, bandwidth, {}};
        const double f0 = carrier - 0.5 * bandwidth;
        for (std::size_t i = 0; i < k; ++i)
            p.frequencies.push_back(f0 + bandwidth * double(i) / double(k - 1));
        return p;
    }

    struct Epoch
    {
        std::size_t index = 0;
        PlatformRole transmitter = PlatformRole::master;
        std::size_t oam_step = 0;
        std::size_t frequency_step = 0;
        double sample_duration = 0.0; // s
        double t_start = 0.0;         // s from frame start
    };

    struct EpochSchedule
    {
        std::vector<Epoch> epochs;
        double round_trip = 0.0; // s

        double frame_duration() const
        {
            return epochs.empty() ? 0.0 : epochs.back().t_start + epochs.back().sample_duration + round_trip;
        }
    };

    // Ping-pong frame: M on even epochs, S on odd ones, 2(K-1) epochs. Each epoch holds one OAM state for tau
    // and then waits out the two-way propagation delay.
    inline EpochSchedule build_epoch_schedule(std::size_t k, double tau, double slant_range = default_altitude,
                                              std::size_t frequency_step = 0)
    {
        require(k >= 2, "oam.steps", "must be >= 2");
        require(std::isfinite(tau) && tau > 0.0, "tau", "sample duration must be > 0");
        require(std::isfinite(slant_range) && slant_range > 0.0, "slant_range", "must be > 0");
        EpochSchedule s;
        s.round_trip = 2.0 * slant_range / speed_of_light;
        for (std::size_t e = 0; e < 2 * (k - 1); ++e)
        {
            Epoch ep;
            ep.index = e;
            ep.transmitter = e % 2 == 0 ? PlatformRole::master : PlatformRole::slave;
            ep.oam_step = (e + 1) / 2;
            ep.frequency_step = frequency_step;
            ep.sample_duration = tau;
            ep.t_start = double(e) * (tau + s.round_trip);
            s.epochs.push_back(ep);
        }
        return s;
    }

    // Entry (i, j) = exp(j m 2pi (xi_i - xi_j)); m = 2 models two-way propagation.
    inline ComplexGrid transmission_matrix(const OamSweep &sweep, int multiplier = 2)
    {
        require(sweep.size() >= 2, "oam.steps", "must be >= 2");
        require(multiplier == 1 || multiplier == 2, "oam.phase_multiplier", "must be 1 or 2");
        const std::size_t k = sweep.size();
        ComplexGrid t(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                t(i, j) = i == j ? cplx{1.0, 0.0}
                                 : std::polar(1.0, multiplier * 2.0 * std::numbers::pi * (sweep.xi[i] - sweep.xi[j]));
        return t;
    }

    inline void write_schedule_csv(std::ostream &os, const EpochSchedule &s, const OamSweep &sweep, const ChirpPlan &chirp)
    {
        os << "epoch,tx,oam_step,xi,freq_hz,t_start_s\n";
        os.precision(12);
        for (const auto &e : s.epochs)
            os << e.index << ',' << to_string(e.transmitter) << ',' << e.oam_step << ',' << sweep.xi.at(e.oam_step) << ','
               << chirp.frequencies.at(e.frequency_step) << ',' << e.t_start << '\n';
    }
} // namespace oamgeo
