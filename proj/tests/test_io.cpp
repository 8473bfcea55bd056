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

#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "oamgeo/pipeline/commands.hpp"

using namespace oamgeo;
using nlohmann::json;

namespace
{
    ComplexGrid sample(std::size_t r, std::size_t c)
    {
        ComplexGrid g(r, c);
        CounterRng rng(1, 2);
        for (auto &v : g.data())
            v = rng.complex_normal(1.0);
        g(0, 0) = {-0.0, std::numeric_limits<double>::denorm_min()};
        return g;
    }

    json base_config()
    {
        return json::parse(R"({
            "schema_version": 1,
            "carrier_hz": 9.6e9,
            "array": {"rows": 16, "cols": 16, "depth": 1.0},
            "geometry": {"baseline_deg": 25},
            "oam": {"steps": 8, "bandwidth": 0.3},
            "chirp": {"steps": 3, "bandwidth_hz": 5e8},
            "scene": {"targets": [{"x": 100.4, "y": 99.8, "z": 0, "hh": 1, "vv": [1, 0]},
                                  {"x": 99.5, "y": 100.5, "z": 2, "hh": 1, "vv": -1}]},
            "imaging": {"zero_pad": 2, "ground_extent_m": 2.0},
            "tomo": {"ladder_mhz": [], "multilook": 1},
            "snr_db": 20,
            "seed": 5
        })");
    }

    std::filesystem::path tmpdir(const std::string &name)
    {
        auto p = std::filesystem::temp_directory_path() / ("oamgeo_test_" + name);
        std::filesystem::remove_all(p);
        return p;
    }

    std::string field_of(const json &j)
    {
        try
        {
            validate_scenario(parse_scenario(j));
        }
        catch (const ValidationError &e)
        {
            return e.field();
        }
        return {};
    }
} // namespace

TEST(Oamg, RoundTripIsBitExact)
{
    for (auto [r, c] : {std::pair{1u, 1u}, std::pair{3u, 7u}, std::pair{16u, 16u}})
    {
        const auto g = sample(r, c);
        const auto buf = encode_oamg(g);
        ASSERT_EQ(buf.size(), 14 + 16 * r * c);
        const auto back = decode_oamg(buf);
        ASSERT_EQ(back.rows(), r);
        ASSERT_EQ(back.cols(), c);
        EXPECT_EQ(encode_oamg(back), buf);
        EXPECT_TRUE(std::signbit(back(0, 0).real()));
    }
}

TEST(Oamg, LayoutIsLittleEndian)
{
    ComplexGrid g(1, 2);
    g(0, 0) = {1.0, 0.0};
    const auto buf = encode_oamg(g);
    EXPECT_EQ(std::string(buf.begin(), buf.begin() + 4), "OAMG");
    EXPECT_EQ(buf[4], 1);
    EXPECT_EQ(buf[5], 0);
    EXPECT_EQ(buf[6], 1); // rows
    EXPECT_EQ(buf[10], 2); // cols
    // 1.0 = 0x3ff0000000000000
    EXPECT_EQ(buf[14 + 7], 0x3f);
    EXPECT_EQ(buf[14 + 6], 0xf0);
}

TEST(Oamg, RejectsCorruptInput)
{
    auto buf = encode_oamg(sample(2, 2));
    auto bad = buf;
    bad[0] = 'X';
    EXPECT_THROW(decode_oamg(bad), ValidationError);
    bad = buf;
    bad[4] = 9;
    EXPECT_THROW(decode_oamg(bad), ValidationError);
    bad = buf;
    bad.pop_back();
    EXPECT_THROW(decode_oamg(bad), ValidationError);
    EXPECT_THROW(decode_oamg({'O', 'A'}), ValidationError);
}

TEST(Oamg, FileRoundTrip)
{
    const auto dir = tmpdir("oamg");
    std::filesystem::create_directories(dir);
    const auto g = sample(5, 4);
    write_oamg(dir / "g.oamg", g);
    EXPECT_EQ(read_oamg(dir / "g.oamg"), g);
    EXPECT_THROW(read_oamg(dir / "missing.oamg"), std::runtime_error);
}

TEST(Pgm, HeaderAndScaling)
{
    ComplexGrid g(2, 3);
    g(1, 2) = {0.0, 4.0};
    g(0, 0) = 2.0;
    const auto buf = encode_pgm(g);
    const std::string header = "P5\n3 2\n65535\n";
    ASSERT_EQ(buf.size(), header.size() + 12);
    EXPECT_EQ(std::string(buf.begin(), buf.begin() + long(header.size())), header);
    EXPECT_EQ(buf[header.size()], 0x80); // 0.5 -> 32768 big-endian
    EXPECT_EQ(buf[header.size() + 10], 0xff);
    EXPECT_EQ(buf[header.size() + 11], 0xff);
}

TEST(Fnv, KnownVectors)
{
    EXPECT_EQ(fnv1a64(std::string()), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64(std::string("a")), 0xaf63dc4c8601ec8cULL);
    EXPECT_EQ(fnv1a64(std::string("foobar")), 0x85944171f73967e8ULL);
    EXPECT_EQ(hex64(0xabcULL), "0000000000000abc");
}

TEST(Scenario, ParsesAndRoundTrips)
{
    const Scenario sc = parse_scenario(base_config());
    validate_scenario(sc);
    EXPECT_EQ(sc.oam.steps, 8u);
    ASSERT_EQ(sc.targets.size(), 2u);
    EXPECT_EQ(sc.targets[1].s.vv, cplx(-1.0, 0.0));
    EXPECT_EQ(sc.targets[0].s.hv, cplx{});
    ASSERT_TRUE(sc.snr_db);
    EXPECT_EQ(*sc.snr_db, 20.0);
    const Scenario again = parse_scenario(to_json(sc));
    EXPECT_EQ(to_json(again), to_json(sc));
    EXPECT_EQ(scenario_hash(again), scenario_hash(sc));
}

TEST(Scenario, DefaultsApply)
{
    const Scenario sc = parse_scenario(json{{"schema_version", 1}, {"scene", {{"preset", "case1"}}}});
    EXPECT_EQ(sc.oam.steps, 128u);
    EXPECT_EQ(sc.chirp.steps, 25u);
    EXPECT_EQ(sc.imaging.zero_pad, 8u);
    EXPECT_NO_THROW(validate_scenario(sc));
}

TEST(Scenario, ErrorsNameTheField)
{
    auto with = [](auto mutate) {
        json j = base_config();
        mutate(j);
        return field_of(j);
    };
    EXPECT_EQ(with([](json &j) { j.erase("schema_version"); }), "schema_version");
    EXPECT_EQ(with([](json &j) { j["schema_version"] = 2; }), "schema_version");
    EXPECT_EQ(with([](json &j) { j["oam"]["steps"] = 1; }), "oam.steps");
    EXPECT_EQ(with([](json &j) { j["oam"]["steps"] = "8"; }), "oam.steps");
    EXPECT_EQ(with([](json &j) { j["oam"]["colour"] = 1; }), "oam.colour");
    EXPECT_EQ(with([](json &j) { j["geometry"]["baseline_deg"] = 0; }), "geometry.baseline_deg");
    EXPECT_EQ(with([](json &j) { j["geometry"]["baseline_deg"] = 200; }), "geometry.baseline_deg");
    EXPECT_EQ(with([](json &j) { j["chirp"]["steps"] = 1; }), "chirp.steps");
    EXPECT_EQ(with([](json &j) { j["tomo"]["multilook"] = 2; }), "tomo.multilook");
    EXPECT_EQ(with([](json &j) { j["scene"]["targets"][1]["hv"] = 1; }), "scene.targets[1]");
    EXPECT_EQ(with([](json &j) { j["scene"]["targets"][0]["x"] = 1e7; }), "scene.targets[0]");
    EXPECT_EQ(with([](json &j) { j["scene"]["targets"][0]["hh"] = "one"; }), "scene.targets[0].hh");
    EXPECT_EQ(with([](json &j) { j["scene"]["targets"] = json::array(); }), "scene.targets");
    EXPECT_EQ(with([](json &j) { j["scene"]["preset"] = "city"; }), "scene.preset");
    EXPECT_EQ(with([](json &j) { j["imaging"]["window"] = "kaiser"; }), "imaging.window");
    EXPECT_EQ(with([](json &j) { j["imaging"]["block"] = "XY"; }), "imaging.block");
    EXPECT_EQ(with([](json &j) { j["seed"] = -1; }), "seed");
    EXPECT_EQ(with([](json &j) { j["array"]["depth"] = 0.0; }), "array.depth");
}

TEST(Scenario, FuzzedConfigsFailOnlyWithValidationErrors)
{
    // random structural mutations must either validate or raise a field-specific ValidationError
    const json base = base_config();
    const std::vector<json> junk{json(), json(-1), json(0), json(1e300), json(-1e-300), json("x"), json::array(),
                                 json::object(), json(true), json(7), json(0.5), json::array({1, 2})};
    std::vector<json::json_pointer> paths;
    const json flat = base.flatten();
    for (const auto &[k, v] : flat.items())
    {
        auto p = json::json_pointer(k);
        while (!p.empty())
        {
            paths.push_back(p);
            p = p.parent_pointer();
        }
    }
    std::mt19937_64 gen(11);
    int failures = 0;
    for (int trial = 0; trial < 1500; ++trial)
    {
        json j = base;
        const int edits = 1 + int(gen() % 3);
        for (int e = 0; e < edits; ++e)
        {
            const auto &p = paths[gen() % paths.size()];
            if (j.contains(p))
                j[p] = junk[gen() % junk.size()];
        }
        try
        {
            validate_scenario(parse_scenario(j));
        }
        catch (const ValidationError &e)
        {
            EXPECT_FALSE(e.field().empty()) << j.dump();
        }
        catch (const std::exception &e)
        {
            ADD_FAILURE() << e.what() << " for " << j.dump();
            ++failures;
        }
        if (failures > 5)
            break;
    }
}

TEST(Scenario, LoadReportsMalformedJson)
{
    const auto dir = tmpdir("load");
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "bad.json") << "{ \"schema_version\": 1,";
    EXPECT_THROW(load_scenario(dir / "bad.json"), ValidationError);
    EXPECT_THROW(load_scenario(dir / "absent.json"), ValidationError);
    std::ofstream(dir / "ok.json") << base_config().dump();
    EXPECT_NO_THROW(load_scenario(dir / "ok.json"));
}

TEST(Commands, OutputsIndependentOfThreadCount)
{
    Scenario sc = parse_scenario(base_config());
    std::vector<std::uint64_t> tomo_hash, image_hash;
    for (unsigned threads : {1u, 2u, 8u})
    {
        const auto dir = tmpdir("det" + std::to_string(threads));
        cmd_tomo(sc, {dir / "tomo", threads, false});
        cmd_image(sc, {dir / "image", threads, false});
        tomo_hash.push_back(fnv1a64(read_bytes(dir / "tomo" / "mca_HH.oamg")));
        image_hash.push_back(fnv1a64(read_bytes(dir / "image" / "ground_HH.oamg")));
        EXPECT_TRUE(std::filesystem::exists(dir / "tomo" / "manifest.json"));
        EXPECT_TRUE(std::filesystem::exists(dir / "image" / "schedule.csv"));
    }
    EXPECT_EQ(tomo_hash[0], tomo_hash[1]);
    EXPECT_EQ(tomo_hash[0], tomo_hash[2]);
    EXPECT_EQ(image_hash[0], image_hash[1]);
    EXPECT_EQ(image_hash[0], image_hash[2]);

    sc.seed = 6;
    const auto dir = tmpdir("det_seed");
    cmd_tomo(sc, {dir, 1, false});
    EXPECT_NE(fnv1a64(read_bytes(dir / "mca_HH.oamg")), tomo_hash[0]);
}

TEST(Commands, ManifestListsChecksums)
{
    const Scenario sc = parse_scenario(base_config());
    const auto dir = tmpdir("manifest");
    cmd_image(sc, {dir, 1, true});
    std::ifstream is(dir / "manifest.json");
    const json m = json::parse(is);
    EXPECT_EQ(m["command"], "image");
    EXPECT_EQ(m["seed"], 5);
    bool found = false;
    for (const auto &f : m["files"])
        if (f["name"] == "ground_HH.oamg")
        {
            found = true;
            EXPECT_EQ(f["fnv1a64"], hex64(fnv1a64(read_bytes(dir / "ground_HH.oamg"))));
        }
    EXPECT_TRUE(found);
    EXPECT_TRUE(std::filesystem::exists(dir / "ground_HH.pgm"));
}

TEST(Commands, SweepValidation)
{
    const Scenario sc = parse_scenario(base_config());
    EXPECT_THROW(parse_sweep_axis("altitude"), ValidationError);
    EXPECT_EQ(parse_sweep_axis("oam_bw"), SweepAxis::oam_bw);
    EXPECT_THROW(cmd_sweep(sc, SweepAxis::baseline, {10.0}, {tmpdir("sweep1"), 1, false}), ValidationError);
    const auto dir = tmpdir("sweep2");
    const auto rows = cmd_sweep(sc, SweepAxis::baseline, {5.0, 20.0}, {dir, 1, false});
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_GT(rows[0].metrics.at("condition_number"), rows[1].metrics.at("condition_number"));
    EXPECT_TRUE(std::filesystem::exists(dir / "sweep_baseline.csv"));
    EXPECT_TRUE(std::filesystem::exists(dir / "run_1" / "scenario.json"));
}

TEST(Commands, TomoRecoversStackedHeights)
{
    Scenario sc;
    sc.preset = "case1";
    sc.oam.steps = 16;
    sc.imaging.zero_pad = 4;
    sc.tomo.ladder_mhz.clear();
    const auto sum = cmd_tomo(sc, {tmpdir("case1"), 2, false});
    ASSERT_EQ(sum.cells.size(), 1u);
    const auto &c = sum.cells.front();
    ASSERT_GE(c.peak_height.size(), 3u);
    std::vector<double> h(c.peak_height.begin(), c.peak_height.begin() + 3);
    std::sort(h.begin(), h.end());
    const auto &expected = presets::case1_heights;
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_NEAR(h[i], expected[i], 0.1);
    // line-of-sight elevation is shorter than height for an oblique look
    EXPECT_LT(*std::max_element(c.peak_elevation.begin(), c.peak_elevation.end()), 0.9 * expected[2]);
}
