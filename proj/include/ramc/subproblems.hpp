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

#ifndef RAMC_SUBPROBLEMS_HPP
#define RAMC_SUBPROBLEMS_HPP

#include "ramc/channel.hpp"
#include "ramc/conic.hpp"
#include "ramc/config.hpp"
#include "ramc/geometry.hpp"
#include "ramc/sca.hpp"
#include "ramc/types.hpp"

namespace ramc
{
    // Beamforming step for fixed pointing and auxiliary variables:
    //   maximise t  s.t.  2Re{z_k^* h_k^T w_m} - |z_k|^2 (sum_{j != m} |h_k^T w_j|^2 + sigma^2) >= t,  ||vec(W)||^2 <= P_t
    //
    // Variables are solved in normalised units: slice "w" holds vec(W) / sqrt(P_t) with complex entry
    // (n, m) at offsets 2(m N + n) and 2(m N + n) + 1, and "t" holds t / T for a per-program scale T
    // (ConicProgram::epigraph_scale). Each user constraint is a rotated cone over the stacked
    // interference responses; with a single group it is a linear inequality.
    ConicProgram build_beamforming_program(const ChannelMatrix &H, const AuxiliaryVars &Z, const ScenarioGeometry &geometry,
                                           const SystemConfig &config);

    BeamformingMatrix decode_beamforming(const ConicProgram &program, const Eigen::VectorXd &x, int num_antennas, int num_groups);
    Eigen::VectorXd encode_beamforming(const ConicProgram &program, const BeamformingMatrix &W, double t);

    // Boresight step on the concave surrogates:
    //   maximise t  s.t.  phi_k(F) >= t,  ||f_n|| <= 1,  f_n . e_x >= cos(theta_max)
    //
    // Slice "f" holds vec(F) column-major (f_n at offsets 3n..3n+2), "t" holds t / T with
    // T = bundle.scale(). The proximal term of each user is one rotated cone on F - F_prev.
    ConicProgram build_boresight_program(const SurrogateBundle &bundle, const SystemConfig &config);

    PointingMatrix decode_pointing(const ConicProgram &program, const Eigen::VectorXd &x);
    Eigen::VectorXd encode_pointing(const ConicProgram &program, const PointingMatrix &F, double t);

    // Model-unit value of the epigraph variable.
    inline double decode_epigraph(const ConicProgram &program, const Eigen::VectorXd &x)
    {
        return x(program.epigraph_index) * program.epigraph_scale;
    }
}

#endif
