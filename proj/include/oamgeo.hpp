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

#include "oamgeo/antenna/pva.hpp"
#include "oamgeo/core/bessel.hpp"
#include "oamgeo/core/complex_grid.hpp"
#include "oamgeo/core/errors.hpp"
#include "oamgeo/core/fft.hpp"
#include "oamgeo/core/peak.hpp"
#include "oamgeo/core/random.hpp"
#include "oamgeo/imaging/echo.hpp"
#include "oamgeo/imaging/focus.hpp"
#include "oamgeo/io/oamg.hpp"
#include "oamgeo/io/scenario.hpp"
#include "oamgeo/pipeline/commands.hpp"
#include "oamgeo/pipeline/experiments.hpp"
#include "oamgeo/scene/geometry.hpp"
#include "oamgeo/scene/polarimetry.hpp"
#include "oamgeo/scene/presets.hpp"
#include "oamgeo/tomo/mca.hpp"
#include "oamgeo/waveform/schedule.hpp"
