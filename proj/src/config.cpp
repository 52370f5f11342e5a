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

#include "ramc/config.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ramc/types.hpp"

namespace ramc
{
    double SystemConfig::wavelength() const
    {
        return speed_of_light / carrier_frequency_hz;
    }

    double SystemConfig::element_area() const
    {
        const double lambda = wavelength();
        return element_area_m2.value_or(lambda * lambda / (4.0 * pi));
    }

    double SystemConfig::element_spacing() const
    {
        return element_spacing_m.value_or(0.5 * wavelength());
    }

    int SystemConfig::num_users() const
    {
        return std::accumulate(group_sizes.begin(), group_sizes.end(), 0);
    }

    void SystemConfig::validate() const
    {
        auto require = [](bool ok, const char *what)
        {
            if (!ok)
                throw std::invalid_argument(std::string("SystemConfig: ") + what);
        };
        require(std::isfinite(carrier_frequency_hz) && carrier_frequency_hz > 0.0, "carrier frequency must be positive");
        require(std::isfinite(noise_power_w) && noise_power_w > 0.0, "noise power must be positive");
        require(std::isfinite(transmit_power_w) && transmit_power_w > 0.0, "transmit power must be positive");
        require(std::isfinite(directivity) && directivity >= 0.0, "directivity factor must be >= 0");
        require(max_zenith_rad > 0.0 && max_zenith_rad <= 0.5 * pi + 1e-15, "max zenith must lie in (0, pi/2]");
        require(num_antennas >= 1, "need at least one antenna");
        require(!group_sizes.empty(), "need at least one group");
        for (int size : group_sizes)
            require(size >= 1, "every group needs at least one user");
        require(element_area() > 0.0, "element area must be positive");
        require(element_spacing() > 0.0, "element spacing must be positive");
        require(convergence_threshold > 0.0, "convergence threshold must be positive");
        require(max_iterations >= 1, "max iterations must be >= 1");
    }

    SystemConfig SystemConfig::defaults()
    {
        SystemConfig c;
        c.carrier_frequency_hz = 2.4e9;
        c.noise_power_w = dbm_to_watt(-94.0);
        c.transmit_power_w = dbm_to_watt(15.0);
        c.directivity = 5.0;
        c.max_zenith_rad = pi / 3.0;
        c.num_antennas = 4;
        c.group_sizes = {2, 2};
        c.convergence_threshold = 1e-3;
        c.max_iterations = 30;
        return c;
    }

    double dbm_to_watt(double dbm)
    {
        return std::pow(10.0, (dbm - 30.0) / 10.0);
    }

    double watt_to_dbm(double watt)
    {
        return 10.0 * std::log10(watt) + 30.0;
    }

    double to_db(double linear)
    {
        return 10.0 * std::log10(linear);
    }
}
