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

#include <chrono>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "../io/oamg.hpp"
#include "../io/scenario.hpp"
#include "../waveform/schedule.hpp"
#include "experiments.hpp"

namespace oamgeo
{
    inline constexpr const char *tool_version = "0.1.0";

    struct RunOptions
    {
        std::filesystem::path out;
        unsigned threads = 1;
        bool quicklook = false;
    };

    // Output directory that records every file it writes, with checksums, into manifest.json.
    class OutputDir
    {
    public:
        OutputDir(std::filesystem::path root, std::string command, const Scenario &sc)
            : root_(std::move(root)), command_(std::move(command)), hash_(scenario_hash(sc)), seed_(sc.seed)
        {
            std::filesystem::create_directories(root_);
        }

        const std::filesystem::path &root() const { return root_; }

        void bytes(const std::string &name, const std::vector<unsigned char> &buf)
        {
            write_bytes(root_ / name, buf);
            files_.push_back({name, fnv1a64(buf), buf.size()});
        }

        void text(const std::string &name, const std::string &s) { bytes(name, {s.begin(), s.end()}); }

        void grid(const std::string &stem, const ComplexGrid &g, bool quicklook)
        {
            bytes(stem + ".oamg", encode_oamg(g));
            if (quicklook)
                bytes(stem + ".pgm", encode_pgm(g));
        }

        template <typename Fn>
        auto timed(const std::string &stage, Fn &&fn)
        {
            const auto t0 = std::chrono::steady_clock::now();
            struct Record
            {
                OutputDir *self;
                std::string stage;
                std::chrono::steady_clock::time_point t0;
                ~Record()
                {
                    self->timings_[stage] += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                }
            } rec{this, stage, t0};
            return fn();
        }

        void finish()
        {
            nlohmann::json files = nlohmann::json::array();
            for (const auto &f : files_)
                files.push_back({{"name", f.name}, {"fnv1a64", hex64(f.checksum)}, {"bytes", f.size}});
            const nlohmann::json m = {{"tool", "oamgeo"},    {"version", tool_version},      {"command", command_},
                                      {"scenario_hash", hex64(hash_)}, {"seed", seed_}, {"timings_s", timings_},
                                      {"files", files}};
            std::ofstream(root_ / "manifest.json") << m.dump(2) << '\n';
        }

    private:
        struct FileEntry
        {
            std::string name;
            std::uint64_t checksum;
            std::size_t size;
        };
        std::filesystem::path root_;
        std::string command_;
        std::uint64_t hash_;
        std::uint64_t seed_;
        std::map<std::string, double> timings_;
        std::vector<FileEntry> files_;
    };

    inline std::ostringstream csv_stream()
    {
        std::ostringstream os;
        os.precision(12);
        return os;
    }

    struct PatternSummary
    {
        std::string strategy;
        double peak_gain_dbi = 0.0, peak_theta_deg = 0.0, peak_phi_deg = 0.0;
        double boresight_ratio = 0.0; // |E(0)| / max |E|
    };

    // Gain patterns of the symmetric and asymmetric vortex strategies over the forward hemisphere.
    inline std::vector<PatternSummary> cmd_pattern(const Scenario &sc, const RunOptions &ro)
    {
        validate_scenario(sc);
        OutputDir out(ro.out, "pattern", sc);
        PvaArray base = make_array(sc);
        const double k = 2.0 * std::numbers::pi / base.wavelength;
        const auto grid = AngularGrid::hemisphere(sc.pattern.step_deg * deg);
        std::vector<PatternSummary> rows;
        for (const std::string strategy : {"symmetric", "asymmetric"})
        {
            PvaArray a = base;
            a.phase_offsets = strategy == "symmetric"
                                  ? symmetric_vortex_phases(a, 1, sc.array.depth)
                                  : asymmetric_vortex_phases(a, 1, sc.array.shift_y_elements * a.spacing,
                                                             sc.array.shift_z_elements * a.spacing, sc.array.depth);
            const GainPattern p = out.timed("pattern_" + strategy, [&] { return gain_pattern(a, k, grid); });
            auto os = csv_stream();
            write_pattern_csv(os, p);
            out.text("pattern_" + strategy + ".csv", os.str());
            out.grid("field_" + strategy, p.field, ro.quicklook);
            double peak = 0.0;
            for (const cplx &v : p.field.data())
                peak = std::max(peak, std::abs(v));
            rows.push_back({strategy, p.peak_gain_dbi, p.peak_theta / deg, p.peak_phi / deg,
                            std::abs(far_field_exact(a, k, 0.0, 0.0)) / peak});
        }
        auto os = csv_stream();
        os << "strategy,peak_gain_dbi,peak_theta_deg,peak_phi_deg,boresight_ratio\n";
        for (const auto &r : rows)
            os << r.strategy << ',' << r.peak_gain_dbi << ',' << r.peak_theta_deg << ',' << r.peak_phi_deg << ','
               << r.boresight_ratio << '\n';
        out.text("pattern_summary.csv", os.str());
        out.finish();
        return rows;
    }

    struct ImageSummary
    {
        double condition = 0.0;
        std::string warning;
        std::vector<LocatedPeak> peaks; // first active channel
        double max_error = 0.0;
        std::size_t detected = 0;       // local maxima within one ground cell of their target
    };

    inline ImageSummary cmd_image(const Scenario &sc, const RunOptions &ro)
    {
        validate_scenario(sc);
        OutputDir out(ro.out, "image", sc);
        const ImagingSetup s = make_setup(sc);
        const auto targets = scene_targets(sc);
        const auto channels = active_channels(targets);
        const FocusOptions fo = focus_options(sc);
        const GroundOptions go = ground_options(sc);

        std::vector<EchoMatrix> echoes(channels.size());
        std::vector<SlcImage> slcs(channels.size());
        std::vector<GroundImage> grounds(channels.size());
        out.timed("echo_focus_remap", [&] {
            parallel_for(channels.size(), ro.threads, [&](std::size_t i) {
                echoes[i] = synthesize_echo(s, targets, s.carrier, 0, channels[i], {sc.imaging.block, sc.snr_db, sc.seed});
                slcs[i] = focus_echo(echoes[i], s, fo);
                grounds[i] = ground_remap(slcs[i], s, go);
            });
            return 0;
        });

        auto sched = csv_stream();
        write_schedule_csv(sched, build_epoch_schedule(s.sweep.size(), 1e-3, s.platforms.master.altitude), s.sweep,
                           build_chirp_plan(s.carrier, sc.chirp.bandwidth_hz, std::max<std::size_t>(sc.chirp.steps, 2)));
        out.text("schedule.csv", sched.str());

        ImageSummary sum;
        auto peaks = csv_stream();
        peaks << "channel,target,x_m,y_m,z_m,found_x_m,found_y_m,error_m,peak_db,width_x_m,width_y_m,local_max\n";
        for (std::size_t i = 0; i < channels.size(); ++i)
        {
            const std::string ch(to_string(channels[i]));
            out.grid("raw_" + ch, echoes[i].data, false);
            out.grid("slc_" + ch, slcs[i].data, ro.quicklook);
            out.grid("ground_" + ch, grounds[i].data, ro.quicklook);
            const auto located = locate_targets(grounds[i], targets);
            for (std::size_t t = 0; t < located.size(); ++t)
            {
                const auto &p = located[t];
                peaks << ch << ',' << t << ',' << p.expected.x << ',' << p.expected.y << ',' << p.expected.z << ','
                      << p.found_x << ',' << p.found_y << ',' << p.error << ',' << p.peak_db << ',' << p.width_x << ','
                      << p.width_y << ',' << (p.local_max ? 1 : 0) << '\n';
            }
            if (i == 0)
            {
                sum.peaks = located;
                for (const auto &p : located)
                {
                    sum.max_error = std::max(sum.max_error, p.error);
                    if (p.local_max && p.error < go.spacing)
                        ++sum.detected;
                }
            }
        }
        out.text("peaks.csv", peaks.str());

        if (sc.imaging.diagnostic_blocks && !channels.empty())
            for (EchoBlock b : {EchoBlock::MM, EchoBlock::MS, EchoBlock::SM, EchoBlock::SS})
                if (b != sc.imaging.block)
                    out.grid(std::string("raw_") + std::string(to_string(channels[0])) + "_" + to_string(b),
                             synthesize_echo(s, targets, s.carrier, 0, channels[0], {b, sc.snr_db, sc.seed}).data, false);

        sum.condition = grounds.front().condition;
        sum.warning = grounds.front().warning;
        const auto [dx, dy] = resolution_range_azimuth(oam_bandwidth_hz(s), oam_bandwidth_hz(s));
        auto info = csv_stream();
        info << "baseline_deg,advisory,condition_number,j00,j01,j10,j11,psf_width_theory_m,bin_spacing_m,oam_bandwidth_hz,"
                "rayleigh_x_m,rayleigh_y_m\n";
        const auto &j = grounds.front().jacobian;
        info << sc.geometry.baseline_deg << ',' << baseline_advisory(sc.geometry.baseline_deg) << ',' << sum.condition << ','
             << j[0][0] << ',' << j[0][1] << ',' << j[1][0] << ',' << j[1][1] << ',' << psf_width_theory(s) << ','
             << slcs.front().spacing << ',' << oam_bandwidth_hz(s) << ',' << dx << ',' << dy << '\n';
        out.text("image_summary.csv", info.str());
        out.finish();
        return sum;
    }

    struct TomoCellResult
    {
        TomoCell cell;
        std::array<double, 3> pauli_db{}; // mean profile power per Pauli channel, dB
        int dominant = 0;                 // 0, 1, 2 for p1, p2, p3
        double margin_db = 0.0;           // dominant over the runner-up
        std::vector<double> peak_elevation; // first-channel peaks, line-of-sight elevation, strongest first
        std::vector<double> peak_height;    // the same peaks converted to height above the cell
    };

    struct TomoSummary
    {
        std::vector<TomoCellResult> cells;
        std::vector<double> z_grid;
    };

    // Cells probed when the scenario lists none: the case-2 regions, otherwise each distinct target footprint.
    inline std::vector<TomoCell> default_cells(const Scenario &sc, std::span<const Scatterer> targets)
    {
        const SceneFrame f = make_scene_frame(sc);
        std::vector<TomoCell> cells;
        if (sc.preset == "case2")
        {
            const presets::Case2Regions r;
            cells.push_back({"ground", f.reference_x + r.ground.x, f.reference_y + r.ground.y});
            cells.push_back({"foliage", f.reference_x + r.foliage.x, f.reference_y + r.foliage.y});
            cells.push_back({"building", f.reference_x + r.building.x, f.reference_y + r.building.y});
            return cells;
        }
        for (const auto &t : targets)
        {
            const bool dup = std::any_of(cells.begin(), cells.end(), [&](const TomoCell &c) {
                return std::abs(c.x - t.position.x) < 0.5 * sc.imaging.ground_spacing_m &&
                       std::abs(c.y - t.position.y) < 0.5 * sc.imaging.ground_spacing_m;
            });
            if (!dup && cells.size() < 64)
                cells.push_back({"cell" + std::to_string(cells.size()), t.position.x, t.position.y});
        }
        return cells;
    }

    // Pauli composites are averaged incoherently over this many pixels per side around each cell.
    inline constexpr std::size_t pauli_window = 5;

    inline TomoSummary cmd_tomo(const Scenario &sc, const RunOptions &ro)
    {
        validate_scenario(sc);
        require(sc.chirp.steps >= 2, "chirp.steps", "tomography needs >= 2 frequency steps");
        OutputDir out(ro.out, "tomo", sc);
        const ImagingSetup s = make_setup(sc);
        const ChirpPlan chirp = make_chirp(sc);
        const auto targets = scene_targets(sc);
        const auto channels = active_channels(targets);
        const StackOptions so{focus_options(sc), ground_options(sc), sc.snr_db, sc.seed, ro.threads};
        const auto stacks = out.timed("mca_stacks", [&] { return tomo_stacks(s, chirp, targets, channels, so); });

        for (std::size_t c = 0; c < channels.size(); ++c)
        {
            const auto &imgs = stacks[c].images;
            const std::size_t n = imgs.front().data.rows();
            ComplexGrid all(n * imgs.size(), n);
            for (std::size_t k = 0; k < imgs.size(); ++k)
                std::copy(imgs[k].data.data().begin(), imgs[k].data.data().end(), all.data().begin() + std::ptrdiff_t(k * n * n));
            out.grid(std::string("mca_") + std::string(to_string(channels[c])), all, false);
        }

        TomoSummary sum;
        sum.z_grid = default_height_grid(chirp, sc.tomo.height_oversampling);
        const SteeringMatrix a = steering_matrix(chirp.frequencies, sum.z_grid);
        const std::size_t l = sc.tomo.multilook;
        const GroundImage &g0 = stacks.front().images.front();
        const std::size_t n = g0.data.rows();

        auto profile_at = [&](std::size_t c, std::size_t r, std::size_t col) {
            return tomo_invert(a, multilook_vector(stacks[c], r, col, l, l));
        };
        auto channel_index = [&](PolChannel p) -> std::optional<std::size_t> {
            for (std::size_t i = 0; i < channels.size(); ++i)
                if (channels[i] == p)
                    return i;
            return std::nullopt;
        };

        auto prof = csv_stream(), pk = csv_stream(), pauli = csv_stream();
        prof << "cell,label,channel,elevation_m,power_db\n";
        pk << "cell,label,channel,rank,elevation_m,height_m,power_db\n";
        pauli << "cell,label,x_m,y_m,p1_db,p2_db,p3_db,dominant,margin_db\n";
        const auto cells = sc.tomo.cells.empty() ? default_cells(sc, targets) : sc.tomo.cells;
        const std::size_t margin = std::max(l, pauli_window) / 2;
        for (std::size_t ci = 0; ci < cells.size(); ++ci)
        {
            const auto &cell = cells[ci];
            auto [r, col] = g0.pixel_of(cell.x, cell.y);
            r = std::clamp(r, margin, n - 1 - margin);
            col = std::clamp(col, margin, n - 1 - margin);
            TomoCellResult res{cell, {}, 0, 0.0, {}, {}};
            for (std::size_t c = 0; c < channels.size(); ++c)
            {
                const std::string ch(to_string(channels[c]));
                const TomoProfile p = profile_at(c, r, col);
                for (std::size_t f = 0; f < p.z.size(); ++f)
                    prof << ci << ',' << cell.label << ',' << ch << ',' << p.z[f] << ',' << db10(std::max(p.power(f), 1e-300)) << '\n';
                const auto peaks = profile_peaks(p);
                for (std::size_t q = 0; q < std::min<std::size_t>(peaks.size(), 5); ++q)
                    pk << ci << ',' << cell.label << ',' << ch << ',' << q << ',' << p.z[peaks[q]] << ','
                       << height_for_elevation(s.platforms, s.scene, cell.x, cell.y, p.z[peaks[q]]) << ','
                       << db10(p.power(peaks[q])) << '\n';
                if (c == 0)
                    for (auto q : peaks)
                    {
                        res.peak_elevation.push_back(p.z[q]);
                        res.peak_height.push_back(height_for_elevation(s.platforms, s.scene, cell.x, cell.y, p.z[q]));
                    }
            }

            // incoherent average of per-pixel Pauli profiles
            std::array<double, 3> pw{};
            const long h = long(pauli_window / 2);
            for (long dr = -h; dr <= h; ++dr)
                for (long dc = -h; dc <= h; ++dc)
                {
                    std::array<TomoProfile, 4> hp;
                    for (PolChannel pc : all_channels)
                    {
                        const auto idx = channel_index(pc);
                        hp[std::size_t(pc)].h.assign(a.z_grid.size(), cplx{});
                        if (idx)
                            hp[std::size_t(pc)] = tomo_invert(a, multilook_vector(stacks[*idx], std::size_t(long(r) + dr),
                                                                                  std::size_t(long(col) + dc)));
                    }
                    for (std::size_t f = 0; f < a.z_grid.size(); ++f)
                    {
                        const auto p3 = pauli_from_channels(hp[0].h[f], hp[1].h[f], hp[2].h[f], hp[3].h[f]);
                        for (int i = 0; i < 3; ++i)
                            pw[std::size_t(i)] += std::norm(p3[std::size_t(i)]);
                    }
                }
            std::array<int, 3> order{0, 1, 2};
            std::sort(order.begin(), order.end(), [&](int x, int y) { return pw[std::size_t(x)] > pw[std::size_t(y)]; });
            for (int i = 0; i < 3; ++i)
                res.pauli_db[std::size_t(i)] = db10(std::max(pw[std::size_t(i)], 1e-300));
            res.dominant = order[0];
            res.margin_db = res.pauli_db[std::size_t(order[0])] - res.pauli_db[std::size_t(order[1])];
            pauli << ci << ',' << cell.label << ',' << cell.x << ',' << cell.y << ',' << res.pauli_db[0] << ',' << res.pauli_db[1]
                  << ',' << res.pauli_db[2] << ",p" << res.dominant + 1 << ',' << res.margin_db << '\n';
            sum.cells.push_back(res);
        }
        out.text("profiles.csv", prof.str());
        out.text("peaks.csv", pk.str());
        out.text("pauli.csv", pauli.str());

        if (sc.tomo.export_volume)
            for (std::size_t c = 0; c < channels.size(); ++c)
            {
                ComplexGrid vol(a.z_grid.size() * n, n);
                parallel_for(n, ro.threads, [&](std::size_t r) {
                    for (std::size_t col = 0; col < n; ++col)
                    {
                        const auto p = tomo_invert(a, multilook_vector(stacks[c], r, col));
                        for (std::size_t f = 0; f < p.h.size(); ++f)
                            vol(f * n + r, col) = p.h[f];
                    }
                });
                out.grid(std::string("volume_") + std::string(to_string(channels[c])), vol, false);
            }

        if (!sc.tomo.ladder_mhz.empty())
        {
            auto lad = csv_stream();
            lad << "bandwidth_mhz,rayleigh_m,width_m,separation_m,resolved\n";
            StackOptions lo = so;
            lo.snr_db.reset();
            out.timed("ladder", [&] {
                for (double b : sc.tomo.ladder_mhz)
                {
                    const ChirpPlan cp = build_chirp_plan(sc.carrier_hz, b * 1e6, sc.chirp.steps);
                    lad << b << ',' << tomo_resolution(cp.bandwidth) << ',' << height_psf_width(s, cp, lo) << ','
                        << sc.tomo.ladder_separation_m << ',' << (pair_resolved(s, cp, sc.tomo.ladder_separation_m, lo) ? 1 : 0)
                        << '\n';
                }
                return 0;
            });
            out.text("ladder.csv", lad.str());
        }
        out.finish();
        return sum;
    }

    enum class SweepAxis
    {
        baseline,
        oam_bw,
        chirp_bw
    };

    inline SweepAxis parse_sweep_axis(const std::string &s)
    {
        if (s == "baseline")
            return SweepAxis::baseline;
        if (s == "oam_bw")
            return SweepAxis::oam_bw;
        if (s == "chirp_bw")
            return SweepAxis::chirp_bw;
        throw ValidationError("--axis", "unknown sweep axis '" + s + "' (baseline | oam_bw | chirp_bw)");
    }

    struct SweepRow
    {
        double value = 0.0;
        std::map<std::string, double> metrics;
    };

    // One run per value, each in its own run_<i> subdirectory. Units: baseline in degrees, oam_bw as a
    // fraction of a wavelength, chirp_bw in MHz.
    inline std::vector<SweepRow> cmd_sweep(const Scenario &base, SweepAxis axis, const std::vector<double> &values,
                                           const RunOptions &ro)
    {
        require(values.size() >= 2, "--values", "a sweep needs at least two values");
        std::vector<Scenario> runs;
        for (double v : values)
        {
            Scenario sc = base;
            if (axis == SweepAxis::baseline)
                sc.geometry.baseline_deg = v;
            else if (axis == SweepAxis::oam_bw)
                sc.oam.bandwidth = v;
            else
                sc.chirp.bandwidth_hz = v * 1e6;
            validate_scenario(sc);
            runs.push_back(sc);
        }
        OutputDir out(ro.out, "sweep", base);
        std::vector<SweepRow> rows(runs.size());
        out.timed("runs", [&] {
            parallel_for(runs.size(), ro.threads, [&](std::size_t i) {
                const Scenario &sc = runs[i];
                const ImagingSetup s = make_setup(sc);
                SweepRow row{values[i], {}};
                if (axis == SweepAxis::baseline)
                {
                    const auto targets = scene_targets(sc);
                    const SlcImage img = focus_echo(
                        synthesize_echo(s, targets, s.carrier, 0, active_channels(targets).front(), {sc.imaging.block, {}, sc.seed}),
                        s, focus_options(sc));
                    const GroundImage g = ground_remap(img, s, ground_options(sc));
                    double worst = 0.0;
                    for (const auto &p : locate_targets(g, targets))
                        worst = std::max(worst, p.error);
                    row.metrics = {{"condition_number", g.condition}, {"max_peak_error_m", worst},
                                   {"below_optimal", baseline_advisory(sc.geometry.baseline_deg).empty() ? 0.0 : 1.0}};
                }
                else if (axis == SweepAxis::oam_bw)
                {
                    const PointPsf p = point_psf(s, focus_options(sc));
                    row.metrics = {{"psf_width_m", p.width_row}, {"psf_width_theory_m", psf_width_theory(s)},
                                   {"pslr_db", p.pslr_db.value_or(0.0)}};
                }
                else
                {
                    const ChirpPlan cp = make_chirp(sc);
                    const StackOptions so{focus_options(sc), ground_options(sc), {}, sc.seed, 1};
                    row.metrics = {{"rayleigh_m", tomo_resolution(cp.bandwidth)},
                                   {"height_width_m", height_psf_width(s, cp, so)},
                                   {"resolved", pair_resolved(s, cp, sc.tomo.ladder_separation_m, so) ? 1.0 : 0.0}};
                }
                rows[i] = row;
            });
            return 0;
        });
        const char *axis_name = axis == SweepAxis::baseline ? "baseline_deg" : axis == SweepAxis::oam_bw ? "oam_bw" : "chirp_bw_mhz";
        auto os = csv_stream();
        os << axis_name;
        for (const auto &[k, v] : rows.front().metrics)
            os << ',' << k;
        os << '\n';
        for (std::size_t i = 0; i < rows.size(); ++i)
        {
            os << rows[i].value;
            for (const auto &[k, v] : rows[i].metrics)
                os << ',' << v;
            os << '\n';
            const std::string sub = "run_" + std::to_string(i);
            std::filesystem::create_directories(out.root() / sub);
            out.text(sub + "/scenario.json", to_json(runs[i]).dump(2) + "\n");
        }
        out.text(std::string("sweep_") + (axis == SweepAxis::baseline ? "baseline" : axis == SweepAxis::oam_bw ? "oam_bw" : "chirp_bw") + ".csv",
                 os.str());
        out.finish();
        return rows;
    }
} // namespace oamgeo
