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

#ifndef RAMC_TYPES_HPP
#define RAMC_TYPES_HPP

#include <complex>

#include <Eigen/Dense>

namespace ramc
{
    using Complex = std::complex<double>;
    using Vec3 = Eigen::Vector3d;

    // Boresight unit vectors f_n, one column per antenna (3 x N).
    using PointingMatrix = Eigen::Matrix<double, 3, Eigen::Dynamic>;

    // Group precoders w_m, one column per multicast group (N x M).
    using BeamformingMatrix = Eigen::MatrixXcd;

    // Quadratic-transform auxiliaries z_k, one entry per user.
    using AuxiliaryVars = Eigen::VectorXcd;

    inline constexpr double speed_of_light = 299792458.0;
    inline constexpr double pi = 3.14159265358979323846;

    // All columns equal to e_x (the non-rotated array).
    inline PointingMatrix fixed_pointing(int num_antennas)
    {
        PointingMatrix F = PointingMatrix::Zero(3, num_antennas);
        F.row(0).setOnes();
        return F;
    }
}

#endif
