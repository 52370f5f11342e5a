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

#include "ramc/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace ramc
{
    double peak_gain(double p)
    {
        return p == 0.0 ? 1.0 : 2.0 * (2.0 * p + 1.0);
    }

    double element_gain(double cos_incidence, double p)
    {
        if (p == 0.0)
            return 1.0;
        return cos_incidence > 0.0 ? peak_gain(p) * std::pow(cos_incidence, 2.0 * p) : 0.0;
    }

    double directional_factor(double psi, double p)
    {
        if (p == 0.0)
            return 1.0;
        return psi > 0.0 ? std::pow(psi, p) : 0.0;
    }

    ChannelModel::ChannelModel(const ScenarioGeometry &geometry, const SystemConfig &config)
        : geometry_(geometry), p_(config.directivity)
    {
        const int K = geometry.num_users(), N = geometry.num_antennas();
        if (N != config.num_antennas)
            throw std::invalid_argument("ChannelModel: geometry and config disagree on the number of antennas");

        const double lambda = config.wavelength();
        const double g0 = peak_gain(p_);
        const double area = config.element_area();
        beta_.resize(K, N);
        for (int k = 0; k < K; ++k)
            for (int n = 0; n < N; ++n)
            {
                const double d = geometry.distance(k, n);
                const double amplitude = std::sqrt(area * g0 / (4.0 * pi * d * d));
                beta_(k, n) = std::polar(amplitude, -2.0 * pi * d / lambda);
            }
    }

    ChannelMatrix ChannelModel::evaluate(const PointingMatrix &F) const
    {
        const int K = geometry_.num_users(), N = geometry_.num_antennas();
        if (F.cols() != N)
            throw std::invalid_argument("ChannelModel: pointing matrix has the wrong number of columns");

        const bool integer_p = std::floor(p_) == p_;
        ChannelMatrix H;
        H.static_factor = beta_;
        H.coefficients.resize(K, N);
        for (int k = 0; k < K; ++k)
            for (int n = 0; n < N; ++n)
            {
                const double psi = cos_incidence(F, k, n);
                H.coefficients(k, n) = beta_(k, n) * directional_factor(psi, p_);
                if (!integer_p && psi <= 0.0)
                    H.rear_links.emplace_back(k, n);
            }
        return H;
    }

    ChannelMatrix channel_matrix(const ScenarioGeometry &geometry, const PointingMatrix &F, const SystemConfig &config)
    {
        return ChannelModel(geometry, config).evaluate(F);
    }
}
