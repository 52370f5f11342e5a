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

#ifndef RAMC_GEOMETRY_HPP
#define RAMC_GEOMETRY_HPP

#include <vector>

#include "ramc/config.hpp"
#include "ramc/types.hpp"

namespace ramc
{
    // Antenna and user positions plus the per-link quantities derived from them.
    class ScenarioGeometry
    {
    public:
        ScenarioGeometry() = default;

        // Validates that group_of partitions the users into num_groups non-empty groups
        // and that no user coincides with an antenna.
        ScenarioGeometry(std::vector<Vec3> antennas, std::vector<Vec3> users, std::vector<int> group_of, int num_groups);

        int num_antennas() const { return static_cast<int>(antennas_.size()); }
        int num_users() const { return static_cast<int>(users_.size()); }
        int num_groups() const { return static_cast<int>(groups_.size()); }

        const std::vector<Vec3> &antennas() const { return antennas_; }
        const std::vector<Vec3> &users() const { return users_; }
        int group_of(int k) const { return group_of_[k]; }
        const std::vector<int> &group_members(int m) const { return groups_[m]; }

        double distance(int k, int n) const { return distance_(k, n); }
        const Vec3 &direction(int k, int n) const { return direction_[k * antennas_.size() + n]; }

    private:
        std::vector<Vec3> antennas_;
        std::vector<Vec3> users_;
        std::vector<int> group_of_;
        std::vector<std::vector<int>> groups_;
        Eigen::MatrixXd distance_;    // K x N
        std::vector<Vec3> direction_; // row-major (k, n), unit vectors from antenna n to user k
    };

    // Spherical-to-Cartesian boresight: zenith measured from +x, azimuth in the y-z plane from +y.
    Vec3 boresight_vector(double zenith, double azimuth);

    // N elements on the y-z plane, rows = floor(sqrt(N)), cols = ceil(N / rows), centroid at the origin.
    std::vector<Vec3> upa_positions(const SystemConfig &config);

    // Users equally spaced on an arc of radius r centred at [0, 0, -h0], spanning arc_angle around +x.
    // Groups are contiguous runs of users following config.group_sizes.
    ScenarioGeometry arc_user_layout(const SystemConfig &config, double radius, double height, double arc_angle);
}

#endif
