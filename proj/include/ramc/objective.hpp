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

#ifndef RAMC_OBJECTIVE_HPP
#define RAMC_OBJECTIVE_HPP

#include "ramc/channel.hpp"
#include "ramc/config.hpp"
#include "ramc/geometry.hpp"
#include "ramc/types.hpp"

namespace ramc
{
    // h_k^T w_j (transpose, not Hermitian).
    Complex beam_response(const ChannelMatrix &H, const BeamformingMatrix &W, int k, int j);

    // sum_{j != m(k)} |h_k^T w_j|^2 + sigma^2
    double interference_plus_noise(const BeamformingMatrix &W, const ChannelMatrix &H, const ScenarioGeometry &geometry,
                                   const SystemConfig &config, int k);

    double sinr(const BeamformingMatrix &W, const ChannelMatrix &H, const ScenarioGeometry &geometry, const SystemConfig &config, int k);

    double min_sinr(const BeamformingMatrix &W, const ChannelMatrix &H, const ScenarioGeometry &geometry, const SystemConfig &config);

    // Closed-form maximiser of the quadratic transform for user k.
    Complex optimal_z(const BeamformingMatrix &W, const ChannelMatrix &H, const ScenarioGeometry &geometry, const SystemConfig &config, int k);

    AuxiliaryVars optimal_z_all(const BeamformingMatrix &W, const ChannelMatrix &H, const ScenarioGeometry &geometry, const SystemConfig &config);

    // 2 Re{z^* h_k^T w_m} - |z|^2 (sum_{j != m} |h_k^T w_j|^2 + sigma^2)
    double surrogate_gamma_tilde(Complex z, const BeamformingMatrix &W, const ChannelMatrix &H, const ScenarioGeometry &geometry,
                                 const SystemConfig &config, int k);

    // sum_m ||w_m||^2
    inline double total_power(const BeamformingMatrix &W) { return W.squaredNorm(); }
}

#endif
