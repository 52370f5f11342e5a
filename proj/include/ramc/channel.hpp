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

#ifndef RAMC_CHANNEL_HPP
#define RAMC_CHANNEL_HPP

#include <utility>
#include <vector>

#include "ramc/config.hpp"
#include "ramc/geometry.hpp"
#include "ramc/types.hpp"

namespace ramc
{
    // Peak element gain G_0 = 2(2p + 1); the p == 0 isotropic element has G_0 = 1.
    double peak_gain(double p);

    // Cosine-power pattern G_0 cos^{2p}(eps) on the front half-space, zero behind.
    // p == 0 is the isotropic element with unit gain in every direction.
    double element_gain(double cos_incidence, double p);

    // max(psi, 0)^p, the boresight-dependent amplitude factor of a link (1 for p == 0).
    double directional_factor(double psi, double p);

    struct ChannelMatrix
    {
        Eigen::MatrixXcd coefficients;  // h_{k,n}, K x N
        Eigen::MatrixXcd static_factor; // beta_{k,n}, boresight independent
        // (user, antenna) links facing the element's rear half-space while p is non-integer.
        std::vector<std::pair<int, int>> rear_links;

        int num_users() const { return static_cast<int>(coefficients.rows()); }
        int num_antennas() const { return static_cast<int>(coefficients.cols()); }
    };

    // Boresight-independent part of the near-field LoS channel, precomputed once per scenario.
    class ChannelModel
    {
    public:
        ChannelModel(const ScenarioGeometry &geometry, const SystemConfig &config);

        ChannelMatrix evaluate(const PointingMatrix &F) const;

        const ScenarioGeometry &geometry() const { return geometry_; }
        double directivity() const { return p_; }
        const Eigen::MatrixXcd &static_factor() const { return beta_; }
        Complex beta(int k, int n) const { return beta_(k, n); }
        const Vec3 &direction(int k, int n) const { return geometry_.direction(k, n); }

        // psi_{k,n} = f_n . u_{k,n}
        double cos_incidence(const PointingMatrix &F, int k, int n) const { return F.col(n).dot(geometry_.direction(k, n)); }

    private:
        ScenarioGeometry geometry_;
        double p_;
        Eigen::MatrixXcd beta_;
    };

    ChannelMatrix channel_matrix(const ScenarioGeometry &geometry, const PointingMatrix &F, const SystemConfig &config);

    // sum_n a_n b_n without conjugation (the h^T w convention).
    inline Complex transpose_inner(const Eigen::Ref<const Eigen::RowVectorXcd> &h, const Eigen::Ref<const Eigen::VectorXcd> &w)
    {
        return (h * w)(0);
    }
}

#endif
