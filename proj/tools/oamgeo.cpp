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

#include <iostream>

#include "CLI11.hpp"

#include "oamgeo.hpp"

namespace
{
    struct Common
    {
        std::string scenario;
        std::string out;
        std::optional<std::uint64_t> seed;
        unsigned threads = 1;
        bool quicklook = false;
    };

    void add_common(CLI::App *cmd, Common &c)
    {
        cmd->add_option("--scenario", c.scenario, "scenario JSON file")->required();
        cmd->add_option("--out", c.out, "output directory (default: scenario output_dir)");
        cmd->add_option("--seed", c.seed, "override the scenario seed");
        cmd->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1u, 256u));
        cmd->add_flag("--quicklook", c.quicklook, "also write 16-bit PGM magnitude images");
    }

    std::pair<oamgeo::Scenario, oamgeo::RunOptions> prepare(const Common &c)
    {
        oamgeo::Scenario sc = oamgeo::load_scenario(c.scenario);
        if (c.seed)
            sc.seed = *c.seed;
        oamgeo::RunOptions ro{c.out.empty() ? std::filesystem::path(sc.output_dir) : std::filesystem::path(c.out), c.threads,
                              c.quicklook};
        return {sc, ro};
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"oamgeo: geostationary OAM interferometric radar imaging simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", oamgeo::tool_version);

    Common c;
    std::string axis;
    std::vector<double> values;
    auto *pattern = app.add_subcommand("pattern", "antenna gain patterns for both vortex strategies");
    auto *image = app.add_subcommand("image", "raw echo, focused and ground-remapped images");
    auto *tomo = app.add_subcommand("tomo", "multi-frequency tomography and Pauli composites");
    auto *sweep = app.add_subcommand("sweep", "parameter sweep with one metrics row per value");
    for (auto *cmd : {pattern, image, tomo, sweep})
        add_common(cmd, c);
    sweep->add_option("--axis", axis, "baseline | oam_bw | chirp_bw")->required();
    sweep->add_option("--values", values, "sweep values (deg, fraction of lambda, or MHz)")->required()->delimiter(',');

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try
    {
        auto [sc, ro] = prepare(c);
        if (*pattern)
        {
            for (const auto &r : oamgeo::cmd_pattern(sc, ro))
                std::cout << r.strategy << ": peak " << r.peak_gain_dbi << " dBi at theta " << r.peak_theta_deg << " deg\n";
        }
        else if (*image)
        {
            const auto s = oamgeo::cmd_image(sc, ro);
            if (!s.warning.empty())
                std::cerr << "warning: " << s.warning << '\n';
            if (const auto adv = oamgeo::baseline_advisory(sc.geometry.baseline_deg); !adv.empty())
                std::cerr << "note: baseline " << sc.geometry.baseline_deg << " deg is " << adv << '\n';
            std::cout << "targets " << s.peaks.size() << ", detected " << s.detected << ", max error " << s.max_error
                      << " m, condition " << s.condition << '\n';
        }
        else if (*tomo)
        {
            const auto s = oamgeo::cmd_tomo(sc, ro);
            for (const auto &cell : s.cells)
                std::cout << cell.cell.label << ": dominant p" << cell.dominant + 1 << " (+" << cell.margin_db << " dB)\n";
        }
        else
        {
            const auto rows = oamgeo::cmd_sweep(sc, oamgeo::parse_sweep_axis(axis), values, ro);
            std::cout << rows.size() << " runs written to " << ro.out.string() << '\n';
        }
    }
    catch (const oamgeo::ValidationError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    catch (const oamgeo::DegenerateError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
