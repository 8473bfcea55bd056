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

#include <stdexcept>
#include <string>

namespace oamgeo
{
    // A precondition on user-supplied input failed. `field()` names the offending
    // parameter so front ends can report it (CLI exit code 2).
    class ValidationError : public std::invalid_argument
    {
    public:
        ValidationError(std::string field, const std::string &what)
            : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

        const std::string &field() const noexcept { return field_; }

    private:
        std::string field_;
    };

    // The computation is well-formed but numerically degenerate (all-zero data,
    // singular geometry). CLI exit code 3.
    class DegenerateError : public std::domain_error
    {
    public:
        explicit DegenerateError(const std::string &what) : std::domain_error(what) {}
    };

    inline void require(bool ok, const std::string &field, const std::string &what)
    {
        if (!ok)
            throw ValidationError(field, what);
    }
} // namespace oamgeo
