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

#ifndef RAMC_ORACLE_HPP
#define RAMC_ORACLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ramc/channel.hpp"
#include "ramc/config.hpp"
#include "ramc/geometry.hpp"
#include "ramc/types.hpp"

namespace ramc
{
    struct TinyInstance
    {
        std::string name;
        SystemConfig config;
        ScenarioGeometry geometry;
    };

    // The three reference geometries: one link beyond the zenith limit, a mirrored user pair on one
    // antenna, and two antennas serving two users.
    std::vector<TinyInstance> tiny_instances();

    // Max-min SINR of a single multicast group (M = 1, K <= 2) at fixed channels, in closed form.
    double multicast_optimum(const ChannelMatrix &H, const SystemConfig &config);

    struct GridOptimum
    {
        double value = 0.0;
        PointingMatrix pointing;
        double resolution_bound = 0.0; // largest value change to an adjacent grid configuration
        std::size_t grid_points = 0;   // distinct boresights per antenna
    };

    // Exhaustive search over unit boresights on a zenith x azimuth grid (degrees), every antenna independently.
    GridOptimum grid_search(const TinyInstance &instance, double zenith_step_deg = 1.0, double azimuth_step_deg = 2.0);

    struct OracleResult
    {
        std::string instance;
        double oracle_value = 0.0;
        double optimizer_value = 0.0;
        double gap = 0.0; // (oracle - optimizer) / max(oracle, 1e-12)
        double resolution_bound = 0.0;
        double tolerance = 0.0;
        bool inclusion = false; // optimizer <= oracle + resolution_bound
        bool pass = false;      // |gap| <= tolerance and inclusion
    };

    OracleResult grid_search_joint(const TinyInstance &instance, double tolerance = 0.02, std::uint64_t seed = 0);

    struct SuiteCheck
    {
        std::string name;
        int samples = 0;
        double worst = 0.0; // worst error or bound ratio observed
        double tolerance = 0.0;
        bool pass = false;
        bool gating = true; // informational checks are reported but do not decide the suite
    };

    struct SuiteReport
    {
        std::string name;
        std::vector<SuiteCheck> checks;

        bool pass() const;
    };

    // Central differences on the signal and interference terms: gradients and Hessians over random
    // feasible instances with every incidence cosine at least 0.05, plus the p = 1 and clamped cases.
    SuiteReport finite_difference_suite(std::uint64_t seed, int instances = 100);

    // Sampled spectral norms of the Hessians against the curvature constants evaluated at the same pointing;
    // the block row sums behind the interference constant are reported alongside.
    SuiteReport lipschitz_sampling_suite(std::uint64_t seed, int samples = 100, double psi_floor = 1e-3);

    std::string format_oracle_table(const std::vector<OracleResult> &results);
    std::string format_suite(const SuiteReport &report);
}

#endif
