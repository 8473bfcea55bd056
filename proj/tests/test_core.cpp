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
#include <random>

#include <gtest/gtest.h>

#include "oamgeo/core/bessel.hpp"
#include "oamgeo/core/fft.hpp"
#include "oamgeo/core/peak.hpp"
#include "oamgeo/core/random.hpp"

using namespace oamgeo;

namespace
{
    // Ascending series in long double, summed until the terms stop changing the result.
    double bessel_series(int n, double x)
    {
        long double term = 1.0L, sum = 0.0L;
        const long double h = 0.5L * x;
        for (int i = 1; i <= n; ++i)
            term *= h / i;
        for (int k = 0; k < 500; ++k)
        {
            sum += term;
            term *= -h * h / ((k + 1.0L) * (k + 1.0L + n));
            if (std::abs(term) < 1e-30L * std::abs(sum) && k > 5)
                break;
        }
        return static_cast<double>(sum);
    }

    std::vector<cplx> direct_dft(const std::vector<cplx> &x, double sign)
    {
        const std::size_t n = x.size();
        std::vector<cplx> out(n);
        for (std::size_t k = 0; k < n; ++k)
        {
            cplx s{};
            for (std::size_t i = 0; i < n; ++i)
                s += x[i] * std::polar(1.0, sign * 2.0 * std::numbers::pi * double((i * k) % n) / double(n));
            out[k] = s / std::sqrt(double(n));
        }
        return out;
    }

    ComplexGrid random_grid(std::size_t r, std::size_t c, unsigned seed)
    {
        std::mt19937_64 g(seed);
        std::normal_distribution<double> d;
        ComplexGrid out(r, c);
        for (auto &v : out.data())
            v = {d(g), d(g)};
        return out;
    }
} // namespace

TEST(Bessel, OriginValues)
{
    EXPECT_DOUBLE_EQ(bessel_j(0, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(bessel_j(1, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(bessel_j(7, 0.0), 0.0);
}

TEST(Bessel, FirstMaximumOfJ1)
{
    EXPECT_NEAR(bessel_j(1, 1.8412), bessel_series(1, 1.8412), 1e-14);
    // derivative changes sign across the maximum
    EXPECT_GT(bessel_j(1, 1.8412), bessel_j(1, 1.80));
    EXPECT_GT(bessel_j(1, 1.8412), bessel_j(1, 1.88));
}

TEST(Bessel, MatchesSeriesOracleBelowTwelve)
{
    for (int n = 0; n <= 10; ++n)
        for (double x = -11.9; x < 12.0; x += 0.173)
            ASSERT_NEAR(bessel_j(n, x), bessel_series(n, x), 1e-12) << "n=" << n << " x=" << x;
}

TEST(Bessel, MatchesStandardLibraryOverDomain)
{
    std::mt19937_64 g(3);
    std::uniform_real_distribution<double> u(0.0, 1e4);
    for (int i = 0; i < 3000; ++i)
    {
        const int n = i % 11;
        const double x = i < 1000 ? u(g) / 100.0 : u(g);
        ASSERT_NEAR(bessel_j(n, x), std::cyl_bessel_j(double(n), x), 1e-12) << "n=" << n << " x=" << x;
    }
}

TEST(Bessel, J1IsOdd)
{
    std::mt19937_64 g(11);
    std::uniform_real_distribution<double> u(-1e4, 1e4);
    for (int i = 0; i < 1000; ++i)
    {
        const double x = u(g);
        ASSERT_EQ(bessel_j(1, -x), -bessel_j(1, x));
    }
}

TEST(Bessel, DomainErrors)
{
    EXPECT_THROW(bessel_j(11, 1.0), std::domain_error);
    EXPECT_THROW(bessel_j(-1, 1.0), std::domain_error);
    EXPECT_THROW(bessel_j(1, 2e4), std::domain_error);
}

TEST(Fft, SingleSampleIsFixedPoint)
{
    ComplexGrid g(1, 1, {cplx(2.5, -1.0)});
    EXPECT_EQ(dft2(g, FftDirection::forward)(0, 0), cplx(2.5, -1.0));
}

TEST(Fft, ImpulseGivesConstant)
{
    ComplexGrid g(4, 4);
    g(0, 0) = 1.0;
    const auto f = dft2(g, FftDirection::forward);
    for (const auto &v : f.data())
        EXPECT_NEAR(std::abs(v - cplx(0.25, 0.0)), 0.0, 1e-15);
}

TEST(Fft, MatchesDirectSumForAnyLength)
{
    for (std::size_t n : {2u, 3u, 5u, 8u, 12u, 17u, 32u, 100u, 128u})
    {
        std::mt19937_64 g(n);
        std::normal_distribution<double> d;
        std::vector<cplx> x(n);
        for (auto &v : x)
            v = {d(g), d(g)};
        const auto fast = dft(x, FftDirection::forward);
        const auto slow = direct_dft(x, -1.0);
        const auto fi = dft(x, FftDirection::inverse);
        const auto si = direct_dft(x, +1.0);
        for (std::size_t k = 0; k < n; ++k)
        {
            ASSERT_NEAR(std::abs(fast[k] - slow[k]), 0.0, 1e-11) << "n=" << n;
            ASSERT_NEAR(std::abs(fi[k] - si[k]), 0.0, 1e-11) << "n=" << n;
        }
    }
}

TEST(Fft, RoundTripIsIdentity)
{
    for (auto [r, c] : {std::pair{8u, 8u}, std::pair{6u, 10u}, std::pair{64u, 33u}})
    {
        const auto g = random_grid(r, c, r * 31 + c);
        const auto back = dft2(dft2(g, FftDirection::forward), FftDirection::inverse);
        double err = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            err = std::max(err, std::abs(back.data()[i] - g.data()[i]));
        EXPECT_LT(err, 1e-12 * std::sqrt(g.energy() / double(g.size())) * 10);
    }
}

TEST(Fft, ParsevalProperty)
{
    std::mt19937 pick(5);
    std::uniform_int_distribution<std::size_t> dim(1, 256);
    for (int trial = 0; trial < 12; ++trial)
    {
        const std::size_t r = trial == 0 ? 256 : dim(pick), c = trial == 0 ? 256 : dim(pick);
        const auto g = random_grid(r, c, unsigned(trial));
        const double e0 = g.energy(), e1 = dft2(g, FftDirection::forward).energy();
        EXPECT_NEAR(e1 / e0, 1.0, 1e-10) << r << "x" << c;
    }
}

TEST(Fft, ShiftCentresZeroFrequency)
{
    ComplexGrid g(4, 6);
    g(0, 0) = 1.0;
    const auto s = fftshift2(g);
    EXPECT_EQ(s(2, 3), cplx(1.0, 0.0));
    EXPECT_DOUBLE_EQ(s.energy(), 1.0);
}

TEST(Peak, SincWidthMatchesOracle)
{
    // Dirichlet kernel of a K-tone band, sampled 8x finer than Nyquist.
    const std::size_t k = 32, pad = 8, n = k * pad;
    std::vector<cplx> tones(n);
    for (std::size_t i = 0; i < k; ++i)
        tones[i] = 1.0;
    auto spec = dft(tones, FftDirection::forward);
    std::rotate(spec.begin(), spec.begin() + std::ptrdiff_t(n / 2), spec.end());
    const PeakReport p = measure_peak(spec);
    // dense numeric -3 dB point of |sin(pi K u) / (K sin(pi u))|^2
    double lo = 0.0, hi = 1.0 / double(k);
    for (int it = 0; it < 200; ++it)
    {
        const double m = 0.5 * (lo + hi);
        const double v = std::sin(std::numbers::pi * k * m) / (k * std::sin(std::numbers::pi * m));
        (v * v > 0.5 ? lo : hi) = m;
    }
    const double oracle = 2.0 * lo * double(n);
    EXPECT_NEAR(p.width_cols, oracle, 0.02 * oracle);
    EXPECT_NEAR(p.width_cols, 0.886 * pad, 0.02 * 0.886 * pad);
    ASSERT_TRUE(p.pslr_db.has_value());
    // sampled sidelobe apex, from the closed-form kernel on the same bins
    double side = 0.0;
    for (std::size_t m = n / k + 1; m < n / 2; ++m)
    {
        const double u = double(m) / double(n);
        const double v = std::sin(std::numbers::pi * k * u) / (k * std::sin(std::numbers::pi * u));
        side = std::max(side, v * v);
    }
    EXPECT_NEAR(*p.pslr_db, 10.0 * std::log10(side), 1e-9);
    EXPECT_NEAR(*p.pslr_db, -13.26, 0.2);
}

TEST(Peak, ImpulseHasNoSidelobe)
{
    ComplexGrid g(5, 5);
    g(2, 3) = cplx(0.0, 2.0);
    const auto p = measure_peak(g);
    EXPECT_EQ(p.row, 2u);
    EXPECT_EQ(p.col, 3u);
    EXPECT_LE(p.width_rows, 1.0);
    EXPECT_LE(p.width_cols, 1.0);
    EXPECT_GT(p.width_cols, 0.0);
    EXPECT_FALSE(p.pslr_db.has_value());
    EXPECT_NEAR(p.peak_mag_db, 20.0 * std::log10(2.0), 1e-12);
}

TEST(Peak, TieGoesToLowestIndex)
{
    ComplexGrid g(3, 4);
    g(2, 1) = 1.0;
    g(0, 3) = cplx(0.0, -1.0);
    const auto p = measure_peak(g);
    EXPECT_TRUE(p.tie);
    EXPECT_EQ(p.row, 0u);
    EXPECT_EQ(p.col, 3u);
}

TEST(Peak, AllZeroIsDegenerate)
{
    EXPECT_THROW(measure_peak(ComplexGrid(3, 3)), DegenerateError);
}

TEST(Peak, InvariantUnderGlobalPhase)
{
    const auto g = random_grid(16, 16, 9);
    const auto p0 = measure_peak(g);
    for (double a : {0.3, 1.7, -2.9})
    {
        ComplexGrid r = g;
        r *= std::polar(1.0, a);
        const auto p = measure_peak(r);
        EXPECT_EQ(p.row, p0.row);
        EXPECT_EQ(p.col, p0.col);
        EXPECT_NEAR(p.width_rows, p0.width_rows, 1e-9);
        EXPECT_NEAR(p.width_cols, p0.width_cols, 1e-9);
        EXPECT_NEAR(p.pslr_db.value_or(0), p0.pslr_db.value_or(0), 1e-9);
    }
}

TEST(Grid, InvariantsAndArithmetic)
{
    EXPECT_THROW(ComplexGrid(2, 2, std::vector<cplx>(3)), std::invalid_argument);
    ComplexGrid a(2, 3), b(2, 3);
    a(1, 2) = 1.0;
    b(1, 2) = cplx(0.0, 1.0);
    EXPECT_EQ((a + b)(1, 2), cplx(1.0, 1.0));
    EXPECT_THROW(a += ComplexGrid(3, 2), std::invalid_argument);
    a(0, 0) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_FALSE(a.all_finite());
    EXPECT_TRUE(b.all_finite());
}

TEST(Random, StreamsAreReproducibleAndDistinct)
{
    CounterRng a(7, 1), b(7, 1), c(7, 2), d(8, 1);
    for (int i = 0; i < 100; ++i)
    {
        const auto x = a.next_u64();
        EXPECT_EQ(x, b.next_u64());
        EXPECT_NE(x, c.next_u64());
        EXPECT_NE(x, d.next_u64());
    }
}

TEST(Random, ComplexNormalMoments)
{
    CounterRng r(42, 0);
    const int n = 200000;
    cplx mean{};
    double power = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const cplx z = r.complex_normal(2.0);
        mean += z;
        power += std::norm(z);
    }
    EXPECT_NEAR(std::abs(mean) / n, 0.0, 0.01);
    EXPECT_NEAR(power / n, 2.0, 0.02);
}

TEST(Random, ParallelForCoversEveryIndexOnce)
{
    for (unsigned threads : {1u, 3u, 8u})
    {
        std::vector<int> hits(1000, 0);
        parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i] += 1; });
        EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    }
    EXPECT_THROW(parallel_for(10, 4, [](std::size_t i) {
                     if (i == 7)
                         throw std::runtime_error("boom");
                 }),
                 std::runtime_error);
}
