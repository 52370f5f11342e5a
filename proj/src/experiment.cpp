// SPDX-License-Identifier: Apache-2.0
//
// ra-multicast: rotatable-antenna multi-group multicast beamforming
// Copyright (C) 2026 The ra-multicast authors
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

#include "ramc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <mutex>
#include <random>
#include <thread>
#include <tuple>

#include "ramc/ao.hpp"

namespace ramc
{
    namespace
    {
        std::string theta_label(double theta_max_rad)
        {
            return "ra_optimized@theta_max_deg=" + format_value(theta_max_rad * 180.0 / pi);
        }

        SchemeResult beamforming_only(const SystemConfig &system, const ScenarioGeometry &geometry, std::uint64_t seed,
                                      const PointingMatrix &F)
        {
            const ChannelModel model(geometry, system);
            AoOptions options;
            options.optimize_pointing = false;
            options.pointing = F;
            const AoReport r = run_ao(model, system, seed, options);
            SchemeResult out;
            out.min_sinr_linear = r.final_min_sinr;
            out.iterations = r.iterations;
            out.failed = r.termination == Termination::subproblem_failure;
            if (out.failed)
                out.error = "beamforming subproblem failed";
            return out;
        }
    }

    const char *to_string(Scheme scheme)
    {
        switch (scheme)
        {
        case Scheme::ra_optimized:
            return "ra_optimized";
        case Scheme::fixed_directional:
            return "fixed_directional";
        case Scheme::random_orientation:
            return "random_orientation";
        case Scheme::isotropic:
            return "isotropic";
        }
        return "unknown";
    }

    std::optional<Scheme> parse_scheme(std::string_view name)
    {
        for (Scheme s : {Scheme::ra_optimized, Scheme::fixed_directional, Scheme::random_orientation, Scheme::isotropic})
            if (name == to_string(s))
                return s;
        return std::nullopt;
    }

    ScenarioGeometry build_scenario(const SystemConfig &system, const ScenarioLayout &layout)
    {
        return arc_user_layout(system, layout.radius_m, layout.height_m, layout.arc_angle_rad);
    }

    SchemeResult run_scheme(Scheme scheme, const SystemConfig &system, const ScenarioLayout &layout, std::uint64_t seed,
                            int random_realizations)
    {
        const auto start = std::chrono::steady_clock::now();
        SchemeResult out;
        try
        {
            const ScenarioGeometry geometry = build_scenario(system, layout);
            const int N = system.num_antennas;
            switch (scheme)
            {
            case Scheme::ra_optimized:
            {
                const AoReport r = run_ao(ChannelModel(geometry, system), system, seed);
                out.min_sinr_linear = r.final_min_sinr;
                out.iterations = r.iterations;
                out.failed = r.termination == Termination::subproblem_failure;
                if (out.failed)
                    out.error = "subproblem failure";
                break;
            }
            case Scheme::fixed_directional:
                out = beamforming_only(system, geometry, seed, fixed_pointing(N));
                break;
            case Scheme::isotropic:
            {
                SystemConfig iso = system;
                iso.directivity = 0.0;
                out = beamforming_only(iso, geometry, seed, fixed_pointing(N));
                break;
            }
            case Scheme::random_orientation:
            {
                double sum = 0.0;
                long iterations = 0;
                for (int r = 0; r < random_realizations; ++r)
                {
                    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                                      static_cast<std::uint32_t>(r), 0x52414eu};
                    std::mt19937_64 rng(seq);
                    std::uniform_real_distribution<double> zenith(0.0, system.max_zenith_rad), azimuth(0.0, 2.0 * pi);
                    PointingMatrix F(3, N);
                    for (int n = 0; n < N; ++n)
                    {
                        const double tz = zenith(rng);
                        F.col(n) = boresight_vector(tz, azimuth(rng));
                    }
                    const SchemeResult one = beamforming_only(system, geometry, seed, F);
                    if (one.failed)
                        return one;
                    sum += one.min_sinr_linear;
                    iterations += one.iterations;
                }
                out.min_sinr_linear = sum / random_realizations;
                out.iterations = static_cast<int>(std::lround(static_cast<double>(iterations) / random_realizations));
                break;
            }
            }
        }
        catch (const std::exception &e)
        {
            out = {};
            out.failed = true;
            out.error = e.what();
        }
        out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return out;
    }

    std::vector<std::uint64_t> seed_list(const ExperimentConfig &config)
    {
        std::vector<std::uint64_t> seeds;
        for (int i = 0; i < config.seeds; ++i)
            seeds.push_back(config.first_seed + static_cast<std::uint64_t>(i));
        return seeds;
    }

    std::vector<SweepTask> plan_sweep(SweepAxis axis, const ExperimentConfig &config, const std::vector<std::uint64_t> &seeds)
    {
        std::vector<SweepTask> tasks;
        auto add = [&](double value, const SystemConfig &sys, const ScenarioLayout &layout) {
            for (const auto &name : config.schemes)
            {
                const auto scheme = parse_scheme(name);
                if (!scheme)
                    throw std::invalid_argument("plan_sweep: unknown scheme '" + name + "'");
                std::vector<std::pair<std::string, SystemConfig>> variants;
                if (axis == SweepAxis::angle && *scheme == Scheme::ra_optimized)
                {
                    for (double theta : config.sweeps.theta_max_rad)
                    {
                        SystemConfig v = sys;
                        v.max_zenith_rad = theta;
                        variants.emplace_back(theta_label(theta), v);
                    }
                }
                else
                    variants.emplace_back(name, sys);
                for (const auto &[label, variant] : variants)
                    for (std::uint64_t seed : seeds)
                        tasks.push_back({value, label, *scheme, variant, layout, seed, config.random_realizations});
            }
        };

        switch (axis)
        {
        case SweepAxis::power:
            for (double dbm : config.sweeps.power_dbm)
            {
                SystemConfig sys = config.system;
                sys.transmit_power_w = dbm_to_watt(dbm);
                add(dbm, sys, config.layout);
            }
            break;
        case SweepAxis::angle:
            for (double arc : config.sweeps.arc_angle_rad)
            {
                ScenarioLayout layout = config.layout;
                layout.arc_angle_rad = arc;
                add(arc * 180.0 / pi, config.system, layout);
            }
            break;
        case SweepAxis::antennas:
            for (int n : config.sweeps.num_antennas)
            {
                SystemConfig sys = config.system;
                sys.num_antennas = n;
                sys.group_sizes = config.sweeps.antenna_group_sizes;
                add(n, sys, config.layout);
            }
            break;
        }
        return tasks;
    }

    int worker_count()
    {
        int n = static_cast<int>(std::thread::hardware_concurrency());
        if (n < 1)
            n = 1;
        if (const char *cap = std::getenv("RA_OPT_THREADS"))
        {
            char *end = nullptr;
            const long v = std::strtol(cap, &end, 10);
            if (end != cap && *end == '\0' && v > 0)
                n = std::min<long>(n, v);
        }
        return n;
    }

    std::vector<ResultRow> run_tasks(const std::vector<SweepTask> &tasks, int threads, const std::function<void(const ResultRow &)> &on_row)
    {
        std::vector<ResultRow> rows(tasks.size());
        std::atomic<std::size_t> next{0};
        std::mutex report;

        auto work = [&] {
            for (std::size_t i = next++; i < tasks.size(); i = next++)
            {
                const SweepTask &t = tasks[i];
                const SchemeResult r = run_scheme(t.scheme, t.system, t.layout, t.seed, t.random_realizations);
                rows[i] = {t.axis_value, t.label, t.seed, r.min_sinr_linear, r.iterations, r.wall_ms, r.failed};
                if (on_row)
                {
                    std::lock_guard lock(report);
                    on_row(rows[i]);
                }
            }
        };

        const int n = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
        if (n == 1)
            work();
        else
        {
            std::vector<std::jthread> pool;
            for (int i = 0; i < n; ++i)
                pool.emplace_back(work);
        }
        sort_rows(rows);
        return rows;
    }

    void sort_rows(std::vector<ResultRow> &rows)
    {
        std::stable_sort(rows.begin(), rows.end(), [](const ResultRow &a, const ResultRow &b) {
            return std::tie(a.axis_value, a.scheme, a.seed) < std::tie(b.axis_value, b.scheme, b.seed);
        });
    }

    std::vector<MeanRow> mean_rows(const std::vector<ResultRow> &rows)
    {
        std::map<std::pair<double, std::string>, MeanRow> groups;
        for (const auto &r : rows)
        {
            MeanRow &m = groups[{r.axis_value, r.scheme}];
            m.axis_value = r.axis_value;
            m.scheme = r.scheme;
            if (r.failed)
                ++m.failed;
            else
            {
                ++m.seeds;
                m.mean_min_sinr_linear += r.min_sinr_linear;
            }
        }
        std::vector<MeanRow> out;
        for (auto &[key, m] : groups)
        {
            if (m.seeds > 0)
                m.mean_min_sinr_linear /= m.seeds;
            out.push_back(m);
        }
        return out;
    }

    std::string format_value(double v)
    {
        if (std::isnan(v))
            return "nan";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.9g", v);
        return buf;
    }

    void write_csv(std::ostream &out, const std::vector<ResultRow> &rows)
    {
        out << csv_header << '\n';
        for (const auto &r : rows)
        {
            const double lin = r.failed ? std::nan("") : r.min_sinr_linear;
            out << format_value(r.axis_value) << ',' << r.scheme << ',' << r.seed << ',' << format_value(lin) << ','
                << format_value(r.failed ? lin : to_db(lin)) << ',' << r.iterations << ',' << format_value(r.wall_ms) << '\n';
        }
    }

    void write_mean_csv(std::ostream &out, const std::vector<MeanRow> &rows)
    {
        out << mean_csv_header << '\n';
        for (const auto &m : rows)
        {
            const double lin = m.seeds > 0 ? m.mean_min_sinr_linear : std::nan("");
            out << format_value(m.axis_value) << ',' << m.scheme << ',' << m.seeds << ',' << m.failed << ',' << format_value(lin) << ','
                << format_value(m.seeds > 0 ? to_db(lin) : lin) << '\n';
        }
    }

    std::string mean_csv_path(const std::string &csv_path)
    {
        std::filesystem::path p(csv_path);
        const std::string ext = p.has_extension() ? p.extension().string() : ".csv";
        p.replace_filename(p.stem().string() + "_mean" + ext);
        return p.string();
    }
}
