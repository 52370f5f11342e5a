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

#include "ramc/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace ramc
{
    ScenarioGeometry::ScenarioGeometry(std::vector<Vec3> antennas, std::vector<Vec3> users, std::vector<int> group_of, int num_groups)
        : antennas_(std::move(antennas)), users_(std::move(users)), group_of_(std::move(group_of))
    {
        if (antennas_.empty() || users_.empty())
            throw std::invalid_argument("ScenarioGeometry: need at least one antenna and one user");
        if (group_of_.size() != users_.size())
            throw std::invalid_argument("ScenarioGeometry: group_of must have one entry per user");
        if (num_groups < 1)
            throw std::invalid_argument("ScenarioGeometry: need at least one group");

        groups_.assign(num_groups, {});
        for (std::size_t k = 0; k < users_.size(); ++k)
        {
            const int m = group_of_[k];
            if (m < 0 || m >= num_groups)
                throw std::invalid_argument("ScenarioGeometry: group index out of range");
            groups_[m].push_back(static_cast<int>(k));
        }
        for (const auto &members : groups_)
            if (members.empty())
                throw std::invalid_argument("ScenarioGeometry: empty multicast group");

        const std::size_t K = users_.size(), N = antennas_.size();
        distance_.resize(K, N);
        direction_.resize(K * N);
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t n = 0; n < N; ++n)
            {
                const Vec3 delta = users_[k] - antennas_[n];
                const double d = delta.norm();
                if (!(d > 0.0))
                    throw std::invalid_argument("ScenarioGeometry: user coincides with an antenna");
                distance_(k, n) = d;
                direction_[k * N + n] = delta / d;
            }
    }

    Vec3 boresight_vector(double zenith, double azimuth)
    {
        const double s = std::sin(zenith);
        return {std::cos(zenith), s * std::cos(azimuth), s * std::sin(azimuth)};
    }

    std::vector<Vec3> upa_positions(const SystemConfig &config)
    {
        const int N = config.num_antennas;
        if (N < 1)
            throw std::invalid_argument("upa_positions: need at least one antenna");
        const int rows = static_cast<int>(std::floor(std::sqrt(static_cast<double>(N))));
        const int cols = (N + rows - 1) / rows;
        const double d = config.element_spacing();

        std::vector<Vec3> pos;
        pos.reserve(N);
        for (int i = 0; i < N; ++i)
        {
            const int row = i / cols, col = i % cols;
            pos.emplace_back(0.0, (col - 0.5 * (cols - 1)) * d, (row - 0.5 * (rows - 1)) * d);
        }

        // Incomplete last row leaves the grid off-centre; shift it back.
        if (rows * cols != N)
        {
            Vec3 centroid = Vec3::Zero();
            for (const auto &p : pos)
                centroid += p;
            centroid /= N;
            for (auto &p : pos)
                p -= centroid;
        }
        return pos;
    }

    ScenarioGeometry arc_user_layout(const SystemConfig &config, double radius, double height, double arc_angle)
    {
        if (!(arc_angle > 0.0) || arc_angle > pi)
            throw std::invalid_argument("arc_user_layout: arc angle must lie in (0, pi]");
        if (!(radius > 0.0) || !(height > 0.0))
            throw std::invalid_argument("arc_user_layout: radius and height must be positive");

        const int K = config.num_users();
        if (K < 1)
            throw std::invalid_argument("arc_user_layout: need at least one user");

        std::vector<Vec3> users;
        users.reserve(K);
        for (int k = 0; k < K; ++k)
        {
            const double alpha = K == 1 ? 0.0 : -0.5 * arc_angle + arc_angle * k / (K - 1);
            users.emplace_back(radius * std::cos(alpha), radius * std::sin(alpha), -height);
        }

        std::vector<int> group_of;
        group_of.reserve(K);
        for (int m = 0; m < config.num_groups(); ++m)
            group_of.insert(group_of.end(), config.group_sizes[m], m);

        return ScenarioGeometry(upa_positions(config), std::move(users), std::move(group_of), config.num_groups());
    }
}
