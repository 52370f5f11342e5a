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

#ifndef RAMC_CONFIG_IO_HPP
#define RAMC_CONFIG_IO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramc/config.hpp"
#include "ramc/types.hpp"

namespace ramc
{
    // Users on an arc of radius r around [0, 0, -h0], spanning arc_angle.
    struct ScenarioLayout
    {
        double radius_m = 50.0;
        double height_m = 10.0;
        double arc_angle_rad = 2.0 * pi / 3.0;
    };

    struct SweepGrids
    {
        std::vector<double> power_dbm;          // transmit-power sweep
        std::vector<double> arc_angle_rad;      // user-distribution sweep
        std::vector<double> theta_max_rad;      // rotation limits compared in the angle sweep
        std::vector<int> num_antennas;          // array-size sweep
        std::vector<int> antenna_group_sizes;   // groups used by the array-size sweep
    };

    struct ExperimentConfig
    {
        SystemConfig system = SystemConfig::defaults();
        ScenarioLayout layout;
        SweepGrids sweeps;
        int seeds = 20;
        std::uint64_t first_seed = 0;
        int random_realizations = 100;
        std::vector<std::string> schemes{"ra_optimized", "fixed_directional", "random_orientation", "isotropic"};

        // Throws std::invalid_argument on the first violated invariant.
        void validate() const;

        static ExperimentConfig defaults();
    };

    // Raised for unreadable, malformed or invalid configuration files. what() reads
    // "<source>:<line>: <message>".
    class ConfigError : public std::runtime_error
    {
    public:
        ConfigError(const std::string &source, int line, const std::string &message);
        int line() const { return line_; }

    private:
        int line_;
    };

    // JSON schema: see docs/config.md. Every key is optional; unknown keys are rejected.
    ExperimentConfig parse_experiment_config(const std::string &text, const std::string &source = "<config>");
    ExperimentConfig load_experiment_config(const std::string &path);
}

#endif
