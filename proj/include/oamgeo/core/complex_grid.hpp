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
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace oamgeo
{
    using cplx = std::complex<double>;

    inline constexpr double speed_of_light = 299792458.0; // m/s

    // Row-major complex matrix. Houses echoes, transmission matrices and focused images.
    class ComplexGrid
    {
    public:
        ComplexGrid() = default;
        ComplexGrid(std::size_t rows, std::size_t cols, cplx fill = {})
            : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
        ComplexGrid(std::size_t rows, std::size_t cols, std::vector<cplx> data)
            : rows_(rows), cols_(cols), data_(std::move(data))
        {
            if (data_.size() != rows_ * cols_)
                throw std::invalid_argument("ComplexGrid: data length must equal rows * cols");
        }

        std::size_t rows() const noexcept { return rows_; }
        std::size_t cols() const noexcept { return cols_; }
        std::size_t size() const noexcept { return data_.size(); }
        bool empty() const noexcept { return data_.empty(); }

        cplx &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
        const cplx &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

        std::span<cplx> data() noexcept { return data_; }
        std::span<const cplx> data() const noexcept { return data_; }
        std::span<cplx> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
        std::span<const cplx> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

        bool all_finite() const
        {
            for (const auto &v : data_)
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                    return false;
            return true;
        }

        double energy() const
        {
            double e = 0.0;
            for (const auto &v : data_)
                e += std::norm(v);
            return e;
        }

        ComplexGrid &operator+=(const ComplexGrid &o)
        {
            check_same_shape(o);
            for (std::size_t i = 0; i < data_.size(); ++i)
                data_[i] += o.data_[i];
            return *this;
        }

        ComplexGrid &operator*=(cplx s)
        {
            for (auto &v : data_)
                v *= s;
            return *this;
        }

        bool same_shape(const ComplexGrid &o) const noexcept { return rows_ == o.rows_ && cols_ == o.cols_; }

        friend bool operator==(const ComplexGrid &, const ComplexGrid &) = default;

    private:
        void check_same_shape(const ComplexGrid &o) const
        {
            if (!same_shape(o))
                throw std::invalid_argument("ComplexGrid: shape mismatch");
        }

        std::size_t rows_ = 0, cols_ = 0;
        std::vector<cplx> data_;
    };

    inline ComplexGrid operator+(ComplexGrid a, const ComplexGrid &b) { return a += b; }

    inline double wrap_to_pi(double phase)
    {
        constexpr double two_pi = 2.0 * M_PI;
        double w = std::fmod(phase + M_PI, two_pi);
        if (w < 0.0)
            w += two_pi;
        return w - M_PI; // [-pi, pi)
    }

    inline double db10(double power) { return 10.0 * std::log10(power); }
} // namespace oamgeo
