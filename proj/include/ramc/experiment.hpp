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

#ifndef RAMC_EXPERIMENT_HPP
#define RAMC_EXPERIMENT_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ramc/config.hpp"
#include "ramc/config_io.hpp"
#include "ramc/geometry.hpp"

namespace ramc
{
    enum class Scheme
    {
        ra_optimized,       // joint beamforming and boresight optimisation
        fixed_directional,  // every boresight on +x, beamforming only
        random_orientation, // random feasible boresights, beamforming only, averaged
        isotropic           // p = 0 elements, beamforming only
    };

    const char *to_string(Scheme scheme);
    std::optional<Scheme> parse_scheme(std::string_view name);

    struct SchemeResult
    {
        double min_sinr_linear = 0.0;
        int iterations = 0;
        double wall_ms = 0.0;
        bool failed = false;
        std::string error;
    };

    ScenarioGeometry build_scenario(const SystemConfig &system, const ScenarioLayout &layout);

    // One scheme on one scenario and seed. The seed drives the random initial beamformer and,
    // for random_orientation, the boresight draws.
    SchemeResult run_scheme(Scheme scheme, const SystemConfig &system, const ScenarioLayout &layout, std::uint64_t seed,
                            int random_realizations = 100);

    enum class SweepAxis
    {
        power,   // axis value: P_t in dBm
        angle,   // axis value: arc angle in degrees
        antennas // axis value: N
    };

    struct SweepTask
    {
        double axis_value = 0.0;
        std::string label; // CSV scheme column, e.g. "ra_optimized@theta_max_deg=30"
        Scheme scheme = Scheme::ra_optimized;
        SystemConfig system;
        ScenarioLayout layout;
        std::uint64_t seed = 0;
        int random_realizations = 100;
    };

    struct ResultRow
    {
        double axis_value = 0.0;
        std::string scheme;
        std::uint64_t seed = 0;
        double min_sinr_linear = 0.0;
        int iterations = 0;
        double wall_ms = 0.0;
        bool failed = false;
    };

    struct MeanRow
    {
        double axis_value = 0.0;
        std::string scheme;
        int seeds = 0;  // successful seeds
        int failed = 0; // failed seeds, excluded from the mean
        double mean_min_sinr_linear = 0.0;
    };

    std::vector<std::uint64_t> seed_list(const ExperimentConfig &config);

    // Every grid point x scheme x seed of one sweep. In the angle sweep the optimised scheme is
    // repeated once per entry of the theta_max grid.
    std::vector<SweepTask> plan_sweep(SweepAxis axis, const ExperimentConfig &config, const std::vector<std::uint64_t> &seeds);

    // Worker count: hardware concurrency, capped by RA_OPT_THREADS when set to a positive integer.
    int worker_count();

    // Runs the tasks on a worker pool; rows come back sorted by (axis_value, scheme, seed).
    // Failures are recorded as failed rows. on_row is called once per finished task (serialised).
    std::vector<ResultRow> run_tasks(const std::vector<SweepTask> &tasks, int threads,
                                     const std::function<void(const ResultRow &)> &on_row = {});

    void sort_rows(std::vector<ResultRow> &rows);
    std::vector<MeanRow> mean_rows(const std::vector<ResultRow> &rows);

    inline constexpr std::string_view csv_header = "axis_value,scheme,seed,min_sinr_linear,min_sinr_db,iterations,wall_ms";
    inline constexpr std::string_view mean_csv_header = "axis_value,scheme,seeds,failed,mean_min_sinr_linear,mean_min_sinr_db";

    // %.9g, "nan" for failed rows.
    std::string format_value(double v);
    void write_csv(std::ostream &out, const std::vector<ResultRow> &rows);
    void write_mean_csv(std::ostream &out, const std::vector<MeanRow> &rows);

    // "results/fig3a.csv" -> "results/fig3a_mean.csv"
    std::string mean_csv_path(const std::string &csv_path);
}

#endif
