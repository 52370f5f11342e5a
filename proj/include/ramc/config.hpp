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

#ifndef RAMC_CONFIG_HPP
#define RAMC_CONFIG_HPP

#include <optional>
#include <vector>

namespace ramc
{
    // Scalar system parameters. Powers are linear (W); dBm conversion happens at the I/O boundary.
    struct SystemConfig
    {
        double carrier_frequency_hz = 2.4e9;
        double noise_power_w = 0.0;          // sigma^2, identical for all users
        double transmit_power_w = 0.0;       // P_t
        double directivity = 5.0;            // p; p == 0 selects the isotropic element (G_0 = 1)
        double max_zenith_rad = 0.0;         // theta_max in (0, pi/2]
        int num_antennas = 4;                // N
        std::vector<int> group_sizes{2, 2};  // |G_m|, M = group_sizes.size()
        std::optional<double> element_area_m2;    // S, default lambda^2 / (4 pi)
        std::optional<double> element_spacing_m;  // d, default lambda / 2
        double convergence_threshold = 1e-3;
        int max_iterations = 30;

        double wavelength() const;
        double element_area() const;
        double element_spacing() const;
        int num_groups() const { return static_cast<int>(group_sizes.size()); }
        int num_users() const;

        // Throws std::invalid_argument naming the first violated invariant.
        void validate() const;

        // Default operating point: 2.4 GHz, sigma^2 = -94 dBm, P_t = 15 dBm, N = 4,
        // two groups of two users, p = 5, theta_max = pi/3.
        static SystemConfig defaults();
    };

    double dbm_to_watt(double dbm);
    double watt_to_dbm(double watt);
    double to_db(double linear);
}

#endif
