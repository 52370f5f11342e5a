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

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramc/ao.hpp"
#include "ramc/config_io.hpp"
#include "ramc/experiment.hpp"
#include "ramc/oracle.hpp"

using namespace ramc;

namespace
{
    constexpr int exit_ok = 0;
    constexpr int exit_failed = 1;
    constexpr int exit_usage = 2;

    struct UsageError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    struct Options
    {
        std::string config;
        std::optional<std::uint64_t> seed;
        std::optional<int> seeds;
        std::string out;
        std::vector<std::string> schemes;
        bool quiet = false;
    };

    ExperimentConfig load(const Options &o)
    {
        ExperimentConfig c = o.config.empty() ? ExperimentConfig::defaults() : load_experiment_config(o.config);
        if (o.seeds)
        {
            if (*o.seeds < 1)
                throw UsageError("--seeds: need at least one seed");
            c.seeds = *o.seeds;
        }
        if (o.seed)
            c.first_seed = *o.seed;
        if (!o.schemes.empty())
        {
            for (const auto &s : o.schemes)
                if (!parse_scheme(s))
                    throw UsageError("--scheme: unknown scheme '" + s + "'");
            c.schemes = o.schemes;
        }
        return c;
    }

    void write_history(const std::string &path, const AoReport &r)
    {
        std::ofstream out(path);
        if (!out)
            throw std::runtime_error("cannot write " + path);
        out << "iteration,min_sinr_linear,min_sinr_db\n";
        for (std::size_t i = 0; i < r.min_sinr_history.size(); ++i)
            out << i << ',' << format_value(r.min_sinr_history[i]) << ',' << format_value(r.min_sinr_history_db[i]) << '\n';
    }

    int solve(const Options &o)
    {
        const ExperimentConfig c = load(o);
        const Scheme scheme = o.schemes.empty() ? Scheme::ra_optimized : *parse_scheme(o.schemes.front());
        const std::uint64_t seed = c.first_seed;

        if (scheme != Scheme::ra_optimized)
        {
            const SchemeResult r = run_scheme(scheme, c.system, c.layout, seed, c.random_realizations);
            if (r.failed)
            {
                std::fprintf(stderr, "solve failed: %s\n", r.error.c_str());
                return exit_failed;
            }
            std::printf("scheme            %s\nseed              %llu\nmin-SINR          %.4f dB (%.9g)\niterations        %d\n", to_string(scheme),
                        static_cast<unsigned long long>(seed), to_db(r.min_sinr_linear), r.min_sinr_linear, r.iterations);
            return exit_ok;
        }

        const ChannelModel model(build_scenario(c.system, c.layout), c.system);
        const AoReport r = run_ao(model, c.system, seed);
        if (!o.quiet)
            for (std::size_t i = 0; i < r.min_sinr_history_db.size(); ++i)
                std::printf("iter %3zu  %9.4f dB\n", i, r.min_sinr_history_db[i]);
        std::printf("scheme            %s\nseed              %llu\nmin-SINR          %.4f dB (%.9g)\niterations        %d\n"
                    "termination       %s\npre-normalization %.4f dB\npost-normalization %.4f dB\ndoublings         %d\n"
                    "wall time         %.1f ms\n",
                    to_string(scheme), static_cast<unsigned long long>(seed), to_db(r.final_min_sinr), r.final_min_sinr, r.iterations,
                    to_string(r.termination), to_db(r.pre_normalization_min_sinr), to_db(r.post_normalization_min_sinr),
                    r.curvature_doublings, r.wall_ms);
        if (!o.out.empty())
            write_history(o.out, r);
        return r.termination == Termination::subproblem_failure ? exit_failed : exit_ok;
    }

    void write_results(const std::string &path, std::vector<ResultRow> rows)
    {
        sort_rows(rows);
        std::ofstream out(path);
        std::ofstream mean(mean_csv_path(path));
        if (!out || !mean)
            throw std::runtime_error("cannot write " + path);
        write_csv(out, rows);
        write_mean_csv(mean, mean_rows(rows));
    }

    int sweep(const Options &o, SweepAxis axis, const char *default_out)
    {
        const ExperimentConfig c = load(o);
        const std::string path = o.out.empty() ? default_out : o.out;
        const auto tasks = plan_sweep(axis, c, seed_list(c));
        const int threads = worker_count();
        if (!o.quiet)
            std::fprintf(stderr, "%zu runs on %d threads -> %s\n", tasks.size(), threads, path.c_str());

        std::vector<ResultRow> done;
        std::mutex guard;
        try
        {
            run_tasks(tasks, threads, [&](const ResultRow &row) {
                std::lock_guard lock(guard);
                done.push_back(row);
                if (!o.quiet)
                    std::fprintf(stderr, "[%zu/%zu] %s @ %s seed %llu: %s dB\n", done.size(), tasks.size(), row.scheme.c_str(),
                                 format_value(row.axis_value).c_str(), static_cast<unsigned long long>(row.seed),
                                 row.failed ? "failed" : format_value(to_db(row.min_sinr_linear)).c_str());
            });
        }
        catch (...)
        {
            write_results(path, done);
            throw;
        }
        write_results(path, done);

        int failed = 0;
        for (const auto &r : done)
            failed += r.failed ? 1 : 0;
        if (failed > 0)
            std::fprintf(stderr, "%d of %zu runs failed\n", failed, done.size());
        return failed > 0 ? exit_failed : exit_ok;
    }

    int validate(const Options &o)
    {
        const std::uint64_t seed = o.seed.value_or(0);
        const SuiteReport fd = finite_difference_suite(seed);
        const SuiteReport lip = lipschitz_sampling_suite(seed);
        std::vector<OracleResult> oracle;
        for (const TinyInstance &t : tiny_instances())
            oracle.push_back(grid_search_joint(t));

        std::cout << format_suite(fd) << format_suite(lip) << "grid oracle\n" << format_oracle_table(oracle);
        bool ok = fd.pass() && lip.pass();
        for (const auto &r : oracle)
            ok = ok && r.pass;
        std::cout << (ok ? "validation passed\n" : "validation FAILED\n");
        return ok ? exit_ok : exit_failed;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Max-min multicast beamforming with rotatable antennas"};
    app.require_subcommand(1);

    Options o;
    auto common = [&](CLI::App *sub, bool with_out) {
        sub->add_option("--config", o.config, "JSON configuration file")->check(CLI::ExistingFile);
        sub->add_option("--seed", o.seed, "seed (first seed for sweeps)");
        sub->add_option("--seeds", o.seeds, "number of seeds per sweep point");
        sub->add_option("--scheme", o.schemes, "scheme(s) to run");
        sub->add_flag("--quiet", o.quiet, "suppress progress output");
        if (with_out)
            sub->add_option("--out", o.out, "output CSV path");
    };

    CLI::App *solve_cmd = app.add_subcommand("solve", "run one scenario and print the report");
    CLI::App *power_cmd = app.add_subcommand("sweep-power", "transmit-power sweep");
    CLI::App *angle_cmd = app.add_subcommand("sweep-angle", "user-arc sweep with several rotation limits");
    CLI::App *antenna_cmd = app.add_subcommand("sweep-antennas", "array-size sweep");
    CLI::App *validate_cmd = app.add_subcommand("validate", "run the oracle validation suites");
    for (CLI::App *sub : {solve_cmd, power_cmd, angle_cmd, antenna_cmd})
        common(sub, true);
    validate_cmd->add_option("--seed", o.seed, "suite seed");
    validate_cmd->add_flag("--quiet", o.quiet, "accepted for symmetry");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try
    {
        if (*solve_cmd)
            return solve(o);
        if (*power_cmd)
            return sweep(o, SweepAxis::power, "fig3a.csv");
        if (*angle_cmd)
            return sweep(o, SweepAxis::angle, "fig3b.csv");
        if (*antenna_cmd)
            return sweep(o, SweepAxis::antennas, "fig3c.csv");
        return validate(o);
    }
    catch (const UsageError &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_usage;
    }
    catch (const ConfigError &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_usage;
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_failed;
    }
}
