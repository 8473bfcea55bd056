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
#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

#include "../core/complex_grid.hpp"
#include "../core/errors.hpp"

namespace oamgeo
{
    // OAMG grid file: "OAMG", u16 version, u32 rows, u32 cols, then rows*cols (re, im) float64 pairs,
    // all little-endian regardless of host byte order.
    inline constexpr std::uint16_t oamg_version = 1;

    namespace detail
    {
        template <typename T>
        void put_le(std::vector<unsigned char> &buf, T v)
        {
            for (std::size_t i = 0; i < sizeof(T); ++i)
                buf.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
        }

        template <typename T>
        T get_le(const std::vector<unsigned char> &buf, std::size_t &pos)
        {
            if (pos + sizeof(T) > buf.size())
                throw ValidationError("oamg", "truncated file");
            T v = 0;
            for (std::size_t i = 0; i < sizeof(T); ++i)
                v |= static_cast<T>(T(buf[pos + i]) << (8 * i));
            pos += sizeof(T);
            return v;
        }
    } // namespace detail

    inline std::vector<unsigned char> encode_oamg(const ComplexGrid &g)
    {
        std::vector<unsigned char> buf{'O', 'A', 'M', 'G'};
        buf.reserve(14 + 16 * g.size());
        detail::put_le<std::uint16_t>(buf, oamg_version);
        detail::put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(g.rows()));
        detail::put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(g.cols()));
        for (const cplx &v : g.data())
        {
            detail::put_le(buf, std::bit_cast<std::uint64_t>(v.real()));
            detail::put_le(buf, std::bit_cast<std::uint64_t>(v.imag()));
        }
        return buf;
    }

    inline ComplexGrid decode_oamg(const std::vector<unsigned char> &buf)
    {
        if (buf.size() < 14 || buf[0] != 'O' || buf[1] != 'A' || buf[2] != 'M' || buf[3] != 'G')
            throw ValidationError("oamg", "bad magic");
        std::size_t pos = 4;
        if (detail::get_le<std::uint16_t>(buf, pos) != oamg_version)
            throw ValidationError("oamg", "unsupported version");
        const std::size_t rows = detail::get_le<std::uint32_t>(buf, pos);
        const std::size_t cols = detail::get_le<std::uint32_t>(buf, pos);
        if (buf.size() != 14 + 16 * rows * cols)
            throw ValidationError("oamg", "payload size does not match the header");
        ComplexGrid g(rows, cols);
        for (auto &v : g.data())
        {
            const double re = std::bit_cast<double>(detail::get_le<std::uint64_t>(buf, pos));
            const double im = std::bit_cast<double>(detail::get_le<std::uint64_t>(buf, pos));
            v = {re, im};
        }
        return g;
    }

    inline void write_bytes(const std::filesystem::path &path, const std::vector<unsigned char> &buf)
    {
        std::ofstream os(path, std::ios::binary);
        if (!os)
            throw std::runtime_error("cannot open " + path.string() + " for writing");
        os.write(reinterpret_cast<const char *>(buf.data()), static_cast<std::streamsize>(buf.size()));
    }

    inline std::vector<unsigned char> read_bytes(const std::filesystem::path &path)
    {
        std::ifstream is(path, std::ios::binary);
        if (!is)
            throw std::runtime_error("cannot open " + path.string());
        return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
    }

    inline void write_oamg(const std::filesystem::path &path, const ComplexGrid &g) { write_bytes(path, encode_oamg(g)); }
    inline ComplexGrid read_oamg(const std::filesystem::path &path) { return decode_oamg(read_bytes(path)); }

    // 16-bit binary PGM (P5, big-endian samples) of |g| scaled linearly to the grid maximum.
    inline std::vector<unsigned char> encode_pgm(const ComplexGrid &g)
    {
        double peak = 0.0;
        for (const cplx &v : g.data())
            peak = std::max(peak, std::abs(v));
        const std::string header = "P5\n" + std::to_string(g.cols()) + " " + std::to_string(g.rows()) + "\n65535\n";
        std::vector<unsigned char> buf(header.begin(), header.end());
        for (const cplx &v : g.data())
        {
            const auto s = peak > 0.0 ? static_cast<std::uint16_t>(std::lround(65535.0 * std::abs(v) / peak)) : std::uint16_t(0);
            buf.push_back(static_cast<unsigned char>(s >> 8));
            buf.push_back(static_cast<unsigned char>(s & 0xff));
        }
        return buf;
    }

    inline constexpr std::uint64_t fnv1a64(const unsigned char *p, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ULL)
    {
        for (std::size_t i = 0; i < n; ++i)
            h = (h ^ p[i]) * 0x100000001b3ULL;
        return h;
    }

    inline std::uint64_t fnv1a64(const std::vector<unsigned char> &buf) { return fnv1a64(buf.data(), buf.size()); }

    inline std::uint64_t fnv1a64(const std::string &s)
    {
        return fnv1a64(reinterpret_cast<const unsigned char *>(s.data()), s.size());
    }

    inline std::string hex64(std::uint64_t v)
    {
        static constexpr char digits[] = "0123456789abcdef";
        std::string s(16, '0');
        for (int i = 15; i >= 0; --i, v >>= 4)
            s[std::size_t(i)] = digits[v & 0xf];
        return s;
    }
} // namespace oamgeo
