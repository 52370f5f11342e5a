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

#ifndef RAMC_SRC_STANDARD_FORM_HPP
#define RAMC_SRC_STANDARD_FORM_HPP

#include <vector>

#include "ramc/conic.hpp"

namespace ramc::detail
{
    // minimise c'x  s.t.  G x + s = h,  s in R^l_+ x Q^{q_1} x ... x Q^{q_r}
    struct StandardForm
    {
        Eigen::MatrixXd G;
        Eigen::VectorXd h;
        Eigen::VectorXd c;
        int orthant = 0;
        std::vector<int> soc_dims;

        int rows() const { return static_cast<int>(h.size()); }
        int degree() const { return orthant + static_cast<int>(soc_dims.size()); }
    };

    // Linear rows first, then one Lorentz block per SOC / rotated cone, in constraint order.
    StandardForm lower(const ConicProgram &program);

    // Largest amount by which s leaves the cone (0 when s is inside).
    double cone_violation(const StandardForm &form, const Eigen::VectorXd &s);
}

#endif
