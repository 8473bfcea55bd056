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
#include <string>

#include "errors.hpp"

namespace oamgeo
{
    inline constexpr int bessel_max_order = 10;
    inline constexpr double bessel_max_argument = 1e4;

    namespace detail
    {
        // Ascending series sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!). Used for |x| < 12,
        // where the largest term stays below ~5e3 and cancellation costs < 1e-12.
        inline double bessel_j_series(int n, double x)
        {
            const double half = 0.5 * x;
            double term = 1.0;
            for (int i = 1; i <= n; ++i)
                term *= half / i;
            const double q = -half * half;
            double sum = term;
            for (int k = 1; k < 200; ++k)
            {
                term *= q / (static_cast<double>(k) * (k + n));
                sum += term;
                if (std::abs(term) < 1e-18 * std::abs(sum) && std::abs(term) < 1e-300 + 1e-18)
                    break;
            }
            return sum;
        }

        // Miller backward recurrence normalized with J0 + 2 sum J_2k = 1.
        // Start index lies well beyond the turning point so J_start is below double precision.
        inline double bessel_j_miller(int n, double x)
        {
            const double ax = std::abs(x);
            int start = static_cast<int>(std::max<double>(n, ax) + 30.0 + 12.0 * std::cbrt(ax));
            start += start % 2;

            double j_next = 0.0, j_curr = 1e-300, result = 0.0, norm = 0.0;
            const double two_over_x = 2.0 / ax;
            for (int m = start; m > 0; --m)
            {
                const double j_prev = m * two_over_x * j_curr - j_next; // J_{m-1}
                j_next = j_curr;
                j_curr = j_prev;
                if (std::abs(j_curr) > 1e250)
                {
                    j_curr *= 1e-250;
                    j_next *= 1e-250;
                    result *= 1e-250;
                    norm *= 1e-250;
                }
                if (m - 1 == n)
                    result = j_curr;
                if ((m - 1) % 2 == 0 && m - 1 > 0)
                    norm += 2.0 * j_curr;
            }
            norm += j_curr; // J0
            return result / norm;
        }
    } // namespace detail

    // Bessel function of the first kind J_order(x) for order 0..10, |x| <= 1e4.
    // Absolute error below 1e-12 on that domain.
    inline double bessel_j(int order, double x)
    {
        if (order < 0 || order > bessel_max_order)
            throw std::domain_error("bessel_j: unsupported order " + std::to_string(order));
        if (!(std::abs(x) <= bessel_max_argument))
            throw std::domain_error("bessel_j: |x| exceeds 1e4");

        const double sign = (x < 0.0 && order % 2 == 1) ? -1.0 : 1.0;
        const double ax = std::abs(x);
        if (ax == 0.0)
            return order == 0 ? 1.0 : 0.0;
        if (ax < 12.0)
            return sign * detail::bessel_j_series(order, ax);
        return sign * detail::bessel_j_miller(order, ax);
    }
} // namespace oamgeo
