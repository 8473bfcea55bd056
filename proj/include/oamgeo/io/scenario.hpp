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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "../antenna/pva.hpp"
#include "../imaging/focus.hpp"
#include "../scene/presets.hpp"
#include "../tomo/mca.hpp"
#include "oamg.hpp"

namespace oamgeo
{
    inline constexpr int scenario_schema_version = 1;

    struct ArraySpec
    {
        std::size_t rows = 16, cols = 16;
        double spacing_wavelengths = 0.5;
        double element_height_m = 0.015;
        double aperture_radius_m = 0.0; // 0 selects the RMS element radius
        double depth = 1.0;
        double shift_y_elements = 2.0; // asymmetric strategy centroid shift, in element spacings
        double shift_z_elements = 0.0;
    };

    struct GeometrySpec
    {
        double baseline_deg = 25.0;
        double altitude_m = default_altitude;
        double scene_latitude_deg = 45.0;
        double reference_x_m = 100.0, reference_y_m = 100.0;
        double scene_extent_m = 5000.0;
    };

    struct OamSpec
    {
        std::size_t steps = 128;
        double bandwidth = 0.3;
        int phase_multiplier = 2;
    };

    struct ChirpSpec
    {
        std::size_t steps = 25;
        double bandwidth_hz = 500e6;
    };

    struct ImagingSpec
    {
        std::size_t zero_pad = 8;
        Window window = Window::none;
        double ground_spacing_m = 0.1;
        double ground_extent_m = 8.0;
        EchoBlock block = EchoBlock::MS;
        bool diagnostic_blocks = true; // also write the MM, SM, SS raw blocks of the first channel
    };

    struct TomoCell
    {
        std::string label;
        double x = 0.0, y = 0.0; // scene coordinates, m
    };

    struct TomoSpec
    {
        std::size_t multilook = 1;
        std::size_t height_oversampling = 4;
        std::vector<TomoCell> cells; // empty: derived from the scene
        std::vector<double> ladder_mhz{20, 60, 150, 250, 400, 500};
        double ladder_separation_m = 1.0;
        bool export_volume = false;
    };

    struct PatternSpec
    {
        double step_deg = 1.0;
    };

    struct Scenario
    {
        int schema_version = scenario_schema_version;
        double carrier_hz = 9.6e9;
        ArraySpec array;
        GeometrySpec geometry;
        OamSpec oam;
        ChirpSpec chirp;
        std::string preset; // empty when explicit targets are given
        std::vector<Scatterer> targets;
        ImagingSpec imaging;
        TomoSpec tomo;
        PatternSpec pattern;
        std::optional<double> snr_db;
        std::uint64_t seed = 0;
        std::string output_dir = "out";
    };

    namespace detail
    {
        using nlohmann::json;

        // Reads keys from one JSON object, rejecting type mismatches and unknown keys with the full key path.
        class ObjectReader
        {
        public:
            ObjectReader(const json &j, std::string path) : j_(j), path_(std::move(path))
            {
                if (!j_.is_object())
                    throw ValidationError(path_.empty() ? "scenario" : path_, "expected an object");
            }

            std::string field(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }
            bool has(const std::string &key) const { return j_.contains(key); }

            const json &raw(const std::string &key)
            {
                seen_.insert(key);
                return j_.at(key);
            }

            void number(const std::string &key, double &out)
            {
                if (!has(key))
                    return;
                const json &v = raw(key);
                if (!v.is_number())
                    throw ValidationError(field(key), "expected a number");
                out = v.get<double>();
                require(std::isfinite(out), field(key), "must be finite");
            }

            void count(const std::string &key, std::size_t &out)
            {
                if (!has(key))
                    return;
                const json &v = raw(key);
                if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
                    throw ValidationError(field(key), "expected a non-negative integer");
                out = v.get<std::size_t>();
            }

            void integer(const std::string &key, int &out)
            {
                if (!has(key))
                    return;
                const json &v = raw(key);
                if (!v.is_number_integer() || std::abs(v.get<std::int64_t>()) > 1000000)
                    throw ValidationError(field(key), "expected an integer");
                out = v.get<int>();
            }

            void text(const std::string &key, std::string &out)
            {
                if (!has(key))
                    return;
                const json &v = raw(key);
                if (!v.is_string())
                    throw ValidationError(field(key), "expected a string");
                out = v.get<std::string>();
            }

            void flag(const std::string &key, bool &out)
            {
                if (!has(key))
                    return;
                const json &v = raw(key);
                if (!v.is_boolean())
                    throw ValidationError(field(key), "expected true or false");
                out = v.get<bool>();
            }

            void finish() const
            {
                for (auto it = j_.begin(); it != j_.end(); ++it)
                    if (!seen_.contains(it.key()))
                        throw ValidationError(field(it.key()), "unknown key");
            }

        private:
            const json &j_;
            std::string path_;
            std::set<std::string> seen_;
        };

        inline cplx parse_complex(const json &v, const std::string &field)
        {
            if (v.is_number())
                return {v.get<double>(), 0.0};
            if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
                return {v[0].get<double>(), v[1].get<double>()};
            throw ValidationError(field, "expected a number or [re, im]");
        }
    } // namespace detail

    inline Window parse_window(const std::string &s, const std::string &field)
    {
        if (s == "none" || s == "rect")
            return Window::none;
        if (s == "hann")
            return Window::hann;
        throw ValidationError(field, "unknown window '" + s + "' (none | hann)");
    }

    inline EchoBlock parse_block(const std::string &s, const std::string &field)
    {
        for (EchoBlock b : {EchoBlock::MM, EchoBlock::MS, EchoBlock::SM, EchoBlock::SS})
            if (s == to_string(b))
                return b;
        throw ValidationError(field, "unknown block '" + s + "' (MM | MS | SM | SS)");
    }

    // Structural parse only; call validate_scenario() before using the result.
    inline Scenario parse_scenario(const nlohmann::json &j)
    {
        using detail::ObjectReader;
        Scenario sc;
        ObjectReader top(j, "");
        top.integer("schema_version", sc.schema_version);
        require(top.has("schema_version"), "schema_version", "missing");
        require(sc.schema_version == scenario_schema_version, "schema_version", "unsupported version");
        top.number("carrier_hz", sc.carrier_hz);

        if (top.has("array"))
        {
            ObjectReader r(top.raw("array"), "array");
            r.count("rows", sc.array.rows);
            r.count("cols", sc.array.cols);
            r.number("spacing_wavelengths", sc.array.spacing_wavelengths);
            r.number("element_height_m", sc.array.element_height_m);
            r.number("aperture_radius_m", sc.array.aperture_radius_m);
            r.number("depth", sc.array.depth);
            r.number("shift_y_elements", sc.array.shift_y_elements);
            r.number("shift_z_elements", sc.array.shift_z_elements);
            r.finish();
        }
        if (top.has("geometry"))
        {
            ObjectReader r(top.raw("geometry"), "geometry");
            r.number("baseline_deg", sc.geometry.baseline_deg);
            r.number("altitude_m", sc.geometry.altitude_m);
            r.number("scene_latitude_deg", sc.geometry.scene_latitude_deg);
            r.number("reference_x_m", sc.geometry.reference_x_m);
            r.number("reference_y_m", sc.geometry.reference_y_m);
            r.number("scene_extent_m", sc.geometry.scene_extent_m);
            r.finish();
        }
        if (top.has("oam"))
        {
            ObjectReader r(top.raw("oam"), "oam");
            r.count("steps", sc.oam.steps);
            r.number("bandwidth", sc.oam.bandwidth);
            r.integer("phase_multiplier", sc.oam.phase_multiplier);
            r.finish();
        }
        if (top.has("chirp"))
        {
            ObjectReader r(top.raw("chirp"), "chirp");
            r.count("steps", sc.chirp.steps);
            r.number("bandwidth_hz", sc.chirp.bandwidth_hz);
            r.finish();
        }
        if (top.has("scene"))
        {
            ObjectReader r(top.raw("scene"), "scene");
            r.text("preset", sc.preset);
            if (r.has("targets"))
            {
                const auto &arr = r.raw("targets");
                if (!arr.is_array())
                    throw ValidationError("scene.targets", "expected an array");
                for (std::size_t i = 0; i < arr.size(); ++i)
                {
                    const std::string path = "scene.targets[" + std::to_string(i) + "]";
                    ObjectReader t(arr[i], path);
                    Vec3 p;
                    t.number("x", p.x);
                    t.number("y", p.y);
                    t.number("z", p.z);
                    ScatteringMatrix s;
                    if (t.has("hh"))
                        s.hh = detail::parse_complex(t.raw("hh"), t.field("hh"));
                    if (t.has("hv"))
                        s.hv = detail::parse_complex(t.raw("hv"), t.field("hv"));
                    if (t.has("vh"))
                        s.vh = detail::parse_complex(t.raw("vh"), t.field("vh"));
                    if (t.has("vv"))
                        s.vv = detail::parse_complex(t.raw("vv"), t.field("vv"));
                    t.finish();
                    require(s.reciprocal(), path, "scattering matrix must be reciprocal (hv == vh)");
                    for (cplx v : {s.hh, s.hv, s.vv})
                        require(std::isfinite(v.real()) && std::isfinite(v.imag()), path, "scattering matrix must be finite");
                    sc.targets.push_back({p, s});
                }
            }
            r.finish();
        }
        if (top.has("imaging"))
        {
            ObjectReader r(top.raw("imaging"), "imaging");
            r.count("zero_pad", sc.imaging.zero_pad);
            std::string w = "none", b = "MS";
            r.text("window", w);
            r.text("block", b);
            sc.imaging.window = parse_window(w, "imaging.window");
            sc.imaging.block = parse_block(b, "imaging.block");
            r.number("ground_spacing_m", sc.imaging.ground_spacing_m);
            r.number("ground_extent_m", sc.imaging.ground_extent_m);
            r.flag("diagnostic_blocks", sc.imaging.diagnostic_blocks);
            r.finish();
        }
        if (top.has("tomo"))
        {
            ObjectReader r(top.raw("tomo"), "tomo");
            r.count("multilook", sc.tomo.multilook);
            r.count("height_oversampling", sc.tomo.height_oversampling);
            r.number("ladder_separation_m", sc.tomo.ladder_separation_m);
            r.flag("export_volume", sc.tomo.export_volume);
            if (r.has("ladder_mhz"))
            {
                const auto &arr = r.raw("ladder_mhz");
                if (!arr.is_array())
                    throw ValidationError("tomo.ladder_mhz", "expected an array of numbers");
                sc.tomo.ladder_mhz.clear();
                for (const auto &v : arr)
                {
                    if (!v.is_number())
                        throw ValidationError("tomo.ladder_mhz", "expected an array of numbers");
                    sc.tomo.ladder_mhz.push_back(v.get<double>());
                }
            }
            if (r.has("cells"))
            {
                const auto &arr = r.raw("cells");
                if (!arr.is_array())
                    throw ValidationError("tomo.cells", "expected an array");
                for (std::size_t i = 0; i < arr.size(); ++i)
                {
                    ObjectReader c(arr[i], "tomo.cells[" + std::to_string(i) + "]");
                    TomoCell cell;
                    cell.label = "cell" + std::to_string(i);
                    c.text("label", cell.label);
                    c.number("x", cell.x);
                    c.number("y", cell.y);
                    c.finish();
                    sc.tomo.cells.push_back(cell);
                }
            }
            r.finish();
        }
        if (top.has("pattern"))
        {
            ObjectReader r(top.raw("pattern"), "pattern");
            r.number("step_deg", sc.pattern.step_deg);
            r.finish();
        }
        if (top.has("snr_db") && !top.raw("snr_db").is_null())
        {
            double v = 0.0;
            top.number("snr_db", v);
            sc.snr_db = v;
        }
        if (top.has("seed"))
        {
            const auto &v = top.raw("seed");
            if (!v.is_number_unsigned())
                throw ValidationError("seed", "expected a non-negative integer");
            sc.seed = v.get<std::uint64_t>();
        }
        top.text("output_dir", sc.output_dir);
        top.finish();
        return sc;
    }

    inline nlohmann::json to_json(const Scenario &sc)
    {
        using nlohmann::json;
        auto cx = [](cplx v) { return json::array({v.real(), v.imag()}); };
        json targets = json::array();
        for (const auto &t : sc.targets)
            targets.push_back({{"x", t.position.x}, {"y", t.position.y}, {"z", t.position.z}, {"hh", cx(t.s.hh)},
                               {"hv", cx(t.s.hv)}, {"vh", cx(t.s.vh)}, {"vv", cx(t.s.vv)}});
        json cells = json::array();
        for (const auto &c : sc.tomo.cells)
            cells.push_back({{"label", c.label}, {"x", c.x}, {"y", c.y}});
        json j = {
            {"schema_version", sc.schema_version},
            {"carrier_hz", sc.carrier_hz},
            {"array",
             {{"rows", sc.array.rows}, {"cols", sc.array.cols}, {"spacing_wavelengths", sc.array.spacing_wavelengths},
              {"element_height_m", sc.array.element_height_m}, {"aperture_radius_m", sc.array.aperture_radius_m},
              {"depth", sc.array.depth}, {"shift_y_elements", sc.array.shift_y_elements},
              {"shift_z_elements", sc.array.shift_z_elements}}},
            {"geometry",
             {{"baseline_deg", sc.geometry.baseline_deg}, {"altitude_m", sc.geometry.altitude_m},
              {"scene_latitude_deg", sc.geometry.scene_latitude_deg}, {"reference_x_m", sc.geometry.reference_x_m},
              {"reference_y_m", sc.geometry.reference_y_m}, {"scene_extent_m", sc.geometry.scene_extent_m}}},
            {"oam", {{"steps", sc.oam.steps}, {"bandwidth", sc.oam.bandwidth}, {"phase_multiplier", sc.oam.phase_multiplier}}},
            {"chirp", {{"steps", sc.chirp.steps}, {"bandwidth_hz", sc.chirp.bandwidth_hz}}},
            {"scene", sc.preset.empty() ? json{{"targets", targets}} : json{{"preset", sc.preset}}},
            {"imaging",
             {{"zero_pad", sc.imaging.zero_pad}, {"window", sc.imaging.window == Window::hann ? "hann" : "none"},
              {"block", to_string(sc.imaging.block)}, {"ground_spacing_m", sc.imaging.ground_spacing_m},
              {"ground_extent_m", sc.imaging.ground_extent_m}, {"diagnostic_blocks", sc.imaging.diagnostic_blocks}}},
            {"tomo",
             {{"multilook", sc.tomo.multilook}, {"height_oversampling", sc.tomo.height_oversampling}, {"cells", cells},
              {"ladder_mhz", sc.tomo.ladder_mhz}, {"ladder_separation_m", sc.tomo.ladder_separation_m},
              {"export_volume", sc.tomo.export_volume}}},
            {"pattern", {{"step_deg", sc.pattern.step_deg}}},
            {"seed", sc.seed},
            {"output_dir", sc.output_dir},
        };
        j["snr_db"] = sc.snr_db ? json(*sc.snr_db) : json(nullptr);
        return j;
    }

    inline std::uint64_t scenario_hash(const Scenario &sc) { return fnv1a64(to_json(sc).dump()); }

    inline double wavelength(const Scenario &sc) { return speed_of_light / sc.carrier_hz; }

    inline SceneFrame make_scene_frame(const Scenario &sc)
    {
        SceneFrame f;
        f.latitude_deg = sc.geometry.scene_latitude_deg;
        f.extent_x = f.extent_y = sc.geometry.scene_extent_m;
        f.reference_x = sc.geometry.reference_x_m;
        f.reference_y = sc.geometry.reference_y_m;
        return f;
    }

    inline PvaArray make_array(const Scenario &sc)
    {
        const double lambda = wavelength(sc);
        return make_pva(sc.array.rows, sc.array.cols, sc.array.spacing_wavelengths * lambda, lambda, sc.array.element_height_m,
                        sc.array.aperture_radius_m);
    }

    inline ImagingSetup make_setup(const Scenario &sc)
    {
        ImagingSetup s;
        s.carrier = sc.carrier_hz;
        s.scene = make_scene_frame(sc);
        s.platforms = platform_positions(sc.geometry.baseline_deg, s.scene, sc.geometry.altitude_m);
        s.sweep = build_oam_sweep(sc.oam.steps, sc.oam.bandwidth, wavelength(sc));
        s.aperture_radius = make_array(sc).aperture_radius;
        s.phase_multiplier = sc.oam.phase_multiplier;
        return s;
    }

    inline ChirpPlan make_chirp(const Scenario &sc) { return build_chirp_plan(sc.carrier_hz, sc.chirp.bandwidth_hz, sc.chirp.steps); }

    inline std::vector<Scatterer> scene_targets(const Scenario &sc)
    {
        if (!sc.preset.empty())
            return presets::make(sc.preset, make_scene_frame(sc), sc.seed);
        return sc.targets;
    }

    inline FocusOptions focus_options(const Scenario &sc) { return {sc.imaging.zero_pad, sc.imaging.window}; }
    inline GroundOptions ground_options(const Scenario &sc) { return {sc.imaging.ground_spacing_m, sc.imaging.ground_extent_m}; }

    // Runs every module precondition against the scenario so that failures surface before any computation.
    inline void validate_scenario(const Scenario &sc)
    {
        require(sc.carrier_hz > 1e6 && sc.carrier_hz < 1e12, "carrier_hz", "must lie in (1 MHz, 1 THz)");
        require(sc.array.spacing_wavelengths > 0.0 && sc.array.spacing_wavelengths <= 4.0, "array.spacing_wavelengths",
                "must lie in (0, 4]");
        require(sc.array.rows <= 256 && sc.array.cols <= 256, "array.rows", "panel larger than 256 x 256 elements");
        const PvaArray arr = make_array(sc);
        symmetric_vortex_phases(arr, 1, sc.array.depth);
        asymmetric_vortex_phases(arr, 1, sc.array.shift_y_elements * arr.spacing, sc.array.shift_z_elements * arr.spacing,
                                 sc.array.depth);
        require(sc.pattern.step_deg >= 0.05 && sc.pattern.step_deg <= 10.0, "pattern.step_deg", "must lie in [0.05, 10]");

        require(sc.geometry.scene_extent_m > 0.0 && sc.geometry.scene_extent_m <= 1e5, "geometry.scene_extent_m",
                "must lie in (0, 100 km]");
        require(sc.oam.steps <= 4096, "oam.steps", "must be <= 4096");
        require(sc.oam.phase_multiplier == 1 || sc.oam.phase_multiplier == 2, "oam.phase_multiplier", "must be 1 or 2");
        const ImagingSetup s = make_setup(sc);
        require(s.scene.contains(s.scene.reference()), "geometry.reference_x_m", "reference point lies outside the scene");
        require(sc.chirp.steps <= 4096, "chirp.steps", "must be <= 4096");
        make_chirp(sc);
        require(sc.chirp.steps < 2 || sc.chirp.bandwidth_hz < sc.carrier_hz, "chirp.bandwidth_hz", "must be below the carrier");

        require(sc.imaging.zero_pad >= 1 && sc.imaging.zero_pad <= 64, "imaging.zero_pad", "must lie in [1, 64]");
        require(sc.imaging.zero_pad * sc.oam.steps <= 8192, "imaging.zero_pad", "padded grid larger than 8192");
        require(sc.imaging.ground_spacing_m > 0.0, "imaging.ground_spacing_m", "must be > 0");
        require(sc.imaging.ground_extent_m >= sc.imaging.ground_spacing_m &&
                    sc.imaging.ground_extent_m / sc.imaging.ground_spacing_m <= 4096.0,
                "imaging.ground_extent_m", "must cover 1 to 4096 ground cells");

        require(sc.preset.empty() || presets::known(sc.preset), "scene.preset", "unknown preset (grid25 | case1 | case2)");
        require(sc.preset.empty() || sc.targets.empty(), "scene", "give either a preset or targets, not both");
        const auto targets = scene_targets(sc);
        require(!targets.empty(), "scene.targets", "scene must contain at least one scatterer");
        require(targets.size() <= 100000, "scene.targets", "at most 100000 scatterers");
        for (std::size_t i = 0; i < targets.size(); ++i)
        {
            const std::string field = "scene.targets[" + std::to_string(i) + "]";
            const auto &t = targets[i];
            require(std::isfinite(t.position.x) && std::isfinite(t.position.y) && std::isfinite(t.position.z), field,
                    "position must be finite");
            require(s.scene.contains(t.position), field, "target lies outside the scene extent");
            require(std::abs(t.position.z) <= 1000.0, field, "height must lie within +-1000 m");
            for (const auto *p : {&s.platforms.master, &s.platforms.slave})
                require(look_geometry(*p, s.scene.to_ecef(t.position)).theta >= 1e-12, field,
                        "target lies in the boresight null (not observable)");
        }

        require(sc.tomo.multilook >= 1 && sc.tomo.multilook <= 101 && sc.tomo.multilook % 2 == 1, "tomo.multilook",
                "must be an odd window in [1, 101]");
        require(sc.tomo.height_oversampling >= 1 && sc.tomo.height_oversampling <= 64, "tomo.height_oversampling",
                "must lie in [1, 64]");
        require(sc.tomo.ladder_separation_m > 0.0, "tomo.ladder_separation_m", "must be > 0");
        for (double b : sc.tomo.ladder_mhz)
            require(std::isfinite(b) && b > 0.0 && b * 1e6 < sc.carrier_hz, "tomo.ladder_mhz", "bandwidths must lie in (0, carrier)");
        const double half = 0.5 * sc.imaging.ground_extent_m;
        for (const auto &c : sc.tomo.cells)
            require(std::abs(c.x - s.scene.reference_x) <= half && std::abs(c.y - s.scene.reference_y) <= half, "tomo.cells",
                    "cell '" + c.label + "' lies outside the ground patch");
        require(!sc.output_dir.empty(), "output_dir", "must not be empty");
    }

    inline Scenario load_scenario(const std::filesystem::path &path)
    {
        std::ifstream is(path);
        if (!is)
            throw ValidationError("scenario", "cannot open " + path.string());
        nlohmann::json j;
        try
        {
            j = nlohmann::json::parse(is);
        }
        catch (const nlohmann::json::exception &e)
        {
            throw ValidationError("scenario", std::string("malformed JSON: ") + e.what());
        }
        Scenario sc = parse_scenario(j);
        validate_scenario(sc);
        return sc;
    }
} // namespace oamgeo
