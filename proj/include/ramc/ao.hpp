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

#ifndef RAMC_AO_HPP
#define RAMC_AO_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "ramc/channel.hpp"
#include "ramc/config.hpp"
#include "ramc/conic.hpp"
#include "ramc/sca.hpp"
#include "ramc/types.hpp"

namespace ramc
{
    enum class Termination
    {
        threshold,
        max_iterations,
        subproblem_failure
    };

    const char *to_string(Termination reason);

    struct AoState
    {
        BeamformingMatrix W;
        PointingMatrix F;
        AuxiliaryVars Z;
    };

    // F0 defaults to every boresight on +x. W0 is i.i.d. circularly-symmetric complex Gaussian
    // rescaled to the full power budget; Z0 is the closed-form auxiliary update at (W0, F0).
    AoState initialize(const ChannelModel &model, const SystemConfig &config, std::uint64_t seed,
                       const std::optional<PointingMatrix> &F0 = std::nullopt);

    struct AoOptions
    {
        bool optimize_pointing = true;          // false: beamforming-only at the initial pointing
        std::optional<PointingMatrix> pointing; // initial (or fixed) pointing
        double psi_floor = default_psi_floor;
        SolverSettings solver;
    };

    struct AoReport
    {
        std::vector<double> min_sinr_history;    // entry 0 is the initial point, then one per iteration
        std::vector<double> min_sinr_history_db;
        std::vector<double> iteration_ms;
        AoState state;
        Termination termination = Termination::max_iterations;
        int iterations = 0;

        double pre_normalization_min_sinr = 0.0;
        double post_normalization_min_sinr = 0.0;
        double final_min_sinr = 0.0; // after the beamforming refresh at the normalised pointing

        int curvature_doublings = 0;   // total backtracking doublings over the run
        int failed_boresight_steps = 0; // steps that hit the doubling cap
        int rejected_steps = 0;         // solver outputs discarded because they lowered the min-SINR
        int failed_solves = 0;
        double wall_ms = 0.0;
    };

    AoReport run_ao(const ChannelModel &model, const SystemConfig &config, std::uint64_t seed, const AoOptions &options = {});

    // Unit-norm boresights; a (numerically) zero column falls back to +x.
    PointingMatrix normalize_pointing(const PointingMatrix &F);
}

#endif
