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

#include "ramc/objective.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ramc
{
    Complex beam_response(const ChannelMatrix &H, const BeamformingMatrix &W, int k, int j)
    {
        return transpose_inner(H.coefficients.row(k), W.col(j));
    }

    double interference_plus_noise(const BeamformingMatrix &W, const ChannelMatrix &H, const ScenarioGeometry &geometry,
                                   const SystemConfig &config, int k)
    {
        const int m = geometry.group_of(k);
        double total = config.noise_power_w;
        for (int j = 0; j < W.cols(); ++j)
            if (j != m)
                total += std::norm(beam_response(H, W, k, j));
        return total;
    }

    double sinr(const BeamformingMatrix &W, const ChannelMatrix &H, const ScenarioGeometry &geometry, const SystemConfig &config, int k)
    {
        if (W.rows() != H.num_antennas() || W.cols() != geometry.num_groups())
            throw std::invalid_argument("sinr: beamforming matrix has the wrong shape");
        const double signal = std::norm(beam_response(H, W, k, geometry.group_of(k)));
        return signal / interference_plus_noise(W, H, geometry, config, k);
    }

    double min_sinr(const BeamformingMatrix &W, const ChannelMatrix &H, const ScenarioGeometry &geometry, const SystemConfig &config)
    {
        double worst = std::numeric_limits<double>::infinity();
        for (int k = 0; k < geometry.num_users(); ++k)
            worst = std::min(worst, sinr(W, H, geometry, config, k));
        return worst;
    }

    Complex optimal_z(const BeamformingMatrix &W, const ChannelMatrix &H, const ScenarioGeometry &geometry, const SystemConfig &config, int k)
    {
        return beam_response(H, W, k, geometry.group_of(k)) / interference_plus_noise(W, H, geometry, config, k);
    }

    AuxiliaryVars optimal_z_all(const BeamformingMatrix &W, const ChannelMatrix &H, const ScenarioGeometry &geometry, const SystemConfig &config)
    {
        AuxiliaryVars Z(geometry.num_users());
        for (int k = 0; k < geometry.num_users(); ++k)
            Z(k) = optimal_z(W, H, geometry, config, k);
        return Z;
    }

    double surrogate_gamma_tilde(Complex z, const BeamformingMatrix &W, const ChannelMatrix &H, const ScenarioGeometry &geometry,
                                 const SystemConfig &config, int k)
    {
        const Complex signal = beam_response(H, W, k, geometry.group_of(k));
        return 2.0 * std::real(std::conj(z) * signal) - std::norm(z) * interference_plus_noise(W, H, geometry, config, k);
    }
}
