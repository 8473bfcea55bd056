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

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "oamgeo/waveform/schedule.hpp"

#ifdef OAMGEO_HAVE_EIGEN
#include <Eigen/Dense>
#endif

using namespace oamgeo;

namespace
{
    constexpr double lambda = 0.03122829;
}

TEST(OamSweep, FullSweepEndpoints)
{
    const auto s = build_oam_sweep(2, 0.5, lambda);
    EXPECT_NEAR(s.xi[0], 2.0 / 3.0, 1e-15);
    EXPECT_EQ(s.xi[1], 1.0);
    EXPECT_NEAR(s.pitch[0], 1.5 * lambda, 1e-15);
    EXPECT_NEAR(s.pitch[1], lambda, 1e-15);
}

TEST(OamSweep, UniformIncreasingSteps)
{
    for (std::size_t k : {2u, 3u, 32u, 128u, 1000u})
    {
        const auto s = build_oam_sweep(k, 0.3, lambda);
        ASSERT_EQ(s.size(), k);
        for (std::size_t i = 1; i < k; ++i)
        {
            EXPECT_GT(s.xi[i], s.xi[i - 1]);
            EXPECT_NEAR(s.xi[i] - s.xi[i - 1], s.step(), 1e-15);
            EXPECT_GT(s.pitch[i], 0.0);
        }
    }
}

TEST(OamSweep, SpanScalesWithBandwidth)
{
    const auto a = build_oam_sweep(16, 0.25, lambda), b = build_oam_sweep(16, 0.5, lambda);
    EXPECT_NEAR(a.span(), 0.5 * b.span(), 1e-15);
    EXPECT_THROW(build_oam_sweep(16, 0.0, lambda), ValidationError);
    EXPECT_THROW(build_oam_sweep(16, 0.6, lambda), ValidationError);
    EXPECT_THROW(build_oam_sweep(1, 0.3, lambda), ValidationError);
}

TEST(Chirp, UniformCombAroundCarrier)
{
    const auto c = build_chirp_plan(9.6e9, 500e6, 25);
    EXPECT_DOUBLE_EQ(c.frequencies.front(), 9.35e9);
    EXPECT_DOUBLE_EQ(c.frequencies.back(), 9.85e9);
    EXPECT_NEAR(c.step(), 500e6 / 24.0, 1e-6);
    for (std::size_t i = 1; i < c.size(); ++i)
        EXPECT_LT(std::abs(c.frequencies[i] - c.frequencies[i - 1] - c.step()), 4.0 * 0x1.0p-52 * c.frequencies[i]);
    const auto two = build_chirp_plan(9.6e9, 500e6, 2);
    EXPECT_EQ(two.frequencies, (std::vector<double>{9.35e9, 9.85e9}));
    EXPECT_THROW(build_chirp_plan(9.6e9, 0.0, 25), ValidationError);
    EXPECT_THROW(build_chirp_plan(9.6e9, 500e6, 1), ValidationError);
}

TEST(Schedule, PingPongAlternation)
{
    const auto s = build_epoch_schedule(3, 1e-3);
    ASSERT_EQ(s.epochs.size(), 4u);
    const PlatformRole expect[] = {PlatformRole::master, PlatformRole::slave, PlatformRole::master, PlatformRole::slave};
    for (std::size_t e = 0; e < 4; ++e)
        EXPECT_EQ(s.epochs[e].transmitter, expect[e]);
    for (std::size_t k : {2u, 5u, 64u})
    {
        const auto t = build_epoch_schedule(k, 1e-3);
        ASSERT_EQ(t.epochs.size(), 2 * (k - 1));
        for (std::size_t e = 1; e < t.epochs.size(); ++e)
        {
            EXPECT_NE(t.epochs[e].transmitter, t.epochs[e - 1].transmitter);
            EXPECT_GT(t.epochs[e].t_start, t.epochs[e - 1].t_start);
        }
        EXPECT_EQ(t.epochs.back().oam_step, k - 1);
    }
    EXPECT_THROW(build_epoch_schedule(3, 0.0), ValidationError);
}

TEST(Schedule, RoundTripAndFrameScale)
{
    const auto s = build_epoch_schedule(32, 1e-3);
    EXPECT_NEAR(s.round_trip, 0.24, 0.005);
    // order of magnitude of a ten-second frame
    EXPECT_GT(s.frame_duration(), 1.0);
    EXPECT_LT(s.frame_duration(), 100.0);
}

TEST(Schedule, CsvDump)
{
    const auto sweep = build_oam_sweep(3, 0.3, lambda);
    std::ostringstream os;
    write_schedule_csv(os, build_epoch_schedule(3, 1e-3), sweep, build_chirp_plan(9.6e9, 500e6, 25));
    const auto text = os.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "epoch,tx,oam_step,xi,freq_hz,t_start_s");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
}

TEST(Transmission, DiagonalHermitianAndTwoStepPhase)
{
    const auto t = transmission_matrix(build_oam_sweep(2, 0.5, lambda));
    EXPECT_EQ(t(0, 0), cplx(1.0, 0.0));
    EXPECT_EQ(t(1, 1), cplx(1.0, 0.0));
    EXPECT_NEAR(std::arg(t(0, 1)), wrap_to_pi(2.0 * 2.0 * std::numbers::pi * (2.0 / 3.0 - 1.0)), 1e-12);
    EXPECT_NEAR(std::abs(t(1, 0) - std::conj(t(0, 1))), 0.0, 1e-15);
    const auto big = transmission_matrix(build_oam_sweep(20, 0.3, lambda));
    for (std::size_t i = 0; i < 20; ++i)
        for (std::size_t j = 0; j < 20; ++j)
            EXPECT_NEAR(std::abs(big(i, j) - std::conj(big(j, i))), 0.0, 1e-15);
    EXPECT_NO_THROW(transmission_matrix(build_oam_sweep(4, 0.3, lambda), 1));
    EXPECT_THROW(transmission_matrix(build_oam_sweep(4, 0.3, lambda), 3), ValidationError);
}

TEST(Transmission, RankOne)
{
    const std::size_t k = 24;
    const auto t = transmission_matrix(build_oam_sweep(k, 0.3, lambda));
#ifdef OAMGEO_HAVE_EIGEN
    Eigen::MatrixXcd m(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            m(Eigen::Index(i), Eigen::Index(j)) = t(i, j);
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
    EXPECT_NEAR(sv(0), double(k), 1e-9);
    for (Eigen::Index i = 1; i < sv.size(); ++i)
        EXPECT_LT(sv(i), 1e-10);
#else
    // every 2 x 2 minor of a rank-one matrix vanishes
    for (std::size_t i = 1; i < k; ++i)
        for (std::size_t j = 1; j < k; ++j)
            EXPECT_LT(std::abs(t(0, 0) * t(i, j) - t(0, j) * t(i, 0)), 1e-12);
#endif
}
