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
#include <algorithm>
#include <cstdint>
#include <exception>
#include <numbers>
#include <thread>
#include <vector>

#include "complex_grid.hpp"

namespace oamgeo
{
    // SplitMix64 finalizer; also used to derive independent per-task stream keys.
    inline constexpr std::uint64_t mix64(std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Counter-based generator: output n of stream (seed, key) is mix64(stream ^ mix64(n)).
    // Results depend only on (seed, key, draw index), never on thread scheduling, and
    // the normal sampler is implemented here so values are identical across standard libraries.
    class CounterRng
    {
    public:
        CounterRng(std::uint64_t seed, std::uint64_t key) : stream_(mix64(seed ^ mix64(key + 0x632be59bd9b4e019ULL))) {}

        std::uint64_t next_u64() { return mix64(stream_ ^ mix64(counter_++)); }

        // Uniform in (0, 1).
        double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

        double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

        // Standard normal via Box-Muller (both outputs used).
        double normal()
        {
            if (has_spare_)
            {
                has_spare_ = false;
                return spare_;
            }
            const double u1 = uniform(), u2 = uniform();
            const double r = std::sqrt(-2.0 * std::log(u1));
            const double a = 2.0 * std::numbers::pi * u2;
            spare_ = r * std::sin(a);
            has_spare_ = true;
            return r * std::cos(a);
        }

        // Circular complex Gaussian with E|z|^2 = variance.
        cplx complex_normal(double variance)
        {
            const double s = std::sqrt(0.5 * variance);
            const double re = normal();
            const double im = normal();
            return {s * re, s * im};
        }

    private:
        std::uint64_t stream_;
        std::uint64_t counter_ = 0;
        double spare_ = 0.0;
        bool has_spare_ = false;
    };

    inline std::uint64_t stream_key(std::uint64_t a, std::uint64_t b) { return mix64(a * 0x100000001b3ULL ^ mix64(b)); }

    // Runs fn(i) for i in [0, n) on up to `threads` workers. Each index must own its output.
    template <typename Fn>
    void parallel_for(std::size_t n, unsigned threads, Fn &&fn)
    {
        threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
        if (threads <= 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }
        std::vector<std::jthread> pool;
        std::vector<std::exception_ptr> errors(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                try
                {
                    for (std::size_t i = t; i < n; i += threads)
                        fn(i);
                }
                catch (...)
                {
                    errors[t] = std::current_exception();
                }
            });
        pool.clear();
        for (auto &e : errors)
            if (e)
                std::rethrow_exception(e);
    }
} // namespace oamgeo
