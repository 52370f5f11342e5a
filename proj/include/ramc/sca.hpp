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

#ifndef RAMC_SCA_HPP
#define RAMC_SCA_HPP

#include <vector>

#include "ramc/channel.hpp"
#include "ramc/config.hpp"
#include "ramc/types.hpp"

namespace ramc
{
    inline constexpr double default_psi_floor = 1e-3;

    // x_{k,j}(F) = sum_n beta_{k,n} w_{j,n} max(psi_{k,n}, 0)^p, identical to h_k(F)^T w_j.
    Complex beam_inner(const ChannelModel &model, const PointingMatrix &F, const Eigen::VectorXcd &w, int k);

    // Gradient of max(f.u, 0)^p with respect to f; zero on the clamped half-space.
    Vec3 grad_directional_factor(const Vec3 &f, const Vec3 &u, double p);

    // u_k(F) = 2 Re{z_k^* x_{k,m}(F)}
    double signal_term(const ChannelModel &model, const PointingMatrix &F, const BeamformingMatrix &W, const AuxiliaryVars &Z, int k);

    // a_{k,j}(F) = |x_{k,j}(F)|^2
    double interference_term(const ChannelModel &model, const PointingMatrix &F, const BeamformingMatrix &W, int k, int j);

    // Per-antenna gradient blocks, stacked column-major into a 3N vector (block n = entries 3n..3n+2).
    Eigen::VectorXd grad_u(const ChannelModel &model, const PointingMatrix &F, const BeamformingMatrix &W, const AuxiliaryVars &Z, int k);
    Eigen::VectorXd grad_a(const ChannelModel &model, const PointingMatrix &F, const BeamformingMatrix &W, int k, int j);

    // Analytic Hessians (3N x 3N). That of u_k is block diagonal.
    Eigen::MatrixXd hessian_u(const ChannelModel &model, const PointingMatrix &F, const BeamformingMatrix &W, const AuxiliaryVars &Z, int k);
    Eigen::MatrixXd hessian_a(const ChannelModel &model, const PointingMatrix &F, const BeamformingMatrix &W, int k, int j);

    // C_max p |p - 1| with C_max = max_n |c_{k,n} psi^{p-2}|.
    double lipschitz_signal(const ChannelModel &model, const PointingMatrix &F, const BeamformingMatrix &W, const AuxiliaryVars &Z, int k,
                            double psi_floor = default_psi_floor);

    // 2p(|p-1| + p) V_max sum_n |v_{k,j,n}| with V_max = max_n |v_{k,j,n}| psi^{2(p-1)}.
    double lipschitz_interference(const ChannelModel &model, const PointingMatrix &F, const BeamformingMatrix &W, int k, int j,
                                  double psi_floor = default_psi_floor);

    // max over block rows of sum_n ||H_{row,n}|| for the Hessian of a_{k,j}.
    double hessian_block_row_sum(const ChannelModel &model, const PointingMatrix &F, const BeamformingMatrix &W, int k, int j);

    // Concave minorant of the quadratic-transform value of one user around an expansion point:
    //   phi(F) = constant + g' vec(F - F0) - (Lambda / 2) ||F - F0||^2
    struct UserSurrogate
    {
        int user = 0;
        int group = 0;
        double z_abs2 = 0.0;
        double noise_offset = 0.0; // |z|^2 sigma^2

        double signal_value = 0.0;
        Eigen::VectorXd signal_grad;
        double signal_lipschitz = 0.0;

        std::vector<int> interferers;
        std::vector<double> interference_value;
        std::vector<Eigen::VectorXd> interference_grad;
        std::vector<double> interference_lipschitz;

        double constant() const;
        Eigen::VectorXd gradient() const;
        double curvature() const;

        double evaluate(const PointingMatrix &F, const PointingMatrix &expansion) const;
        double signal_lower(const PointingMatrix &F, const PointingMatrix &expansion) const;
        double interference_upper(const PointingMatrix &F, const PointingMatrix &expansion, std::size_t idx) const;
    };

    struct SurrogateBundle
    {
        PointingMatrix expansion_point;
        std::vector<UserSurrogate> users;
        double psi_floor = default_psi_floor;
        int doublings = 0;

        // Value scale used for normalising the boresight program and the acceptance slack.
        double scale() const;
        void double_curvature();
    };

    SurrogateBundle build_surrogates(const ChannelModel &model, const PointingMatrix &F_prev, const BeamformingMatrix &W,
                                     const AuxiliaryVars &Z, const SystemConfig &config, double psi_floor = default_psi_floor);

    struct BacktrackResult
    {
        bool accepted = false;
        bool step_failed = false;
        double worst_violation = 0.0; // max_k phi_k - gamma_tilde_k at the candidate
    };

    inline constexpr int max_curvature_doublings = 10;

    // Checks gamma_tilde_k(F_candidate) >= phi_k(F_candidate) - 1e-9 * scale for every user.
    // On violation the bundle's curvature constants are doubled (caller re-solves), and after
    // max_curvature_doublings the step is declared failed.
    BacktrackResult backtrack_curvature(SurrogateBundle &bundle, const PointingMatrix &F_candidate, const ChannelModel &model,
                                        const BeamformingMatrix &W, const AuxiliaryVars &Z, const SystemConfig &config);

    // Quadratic-transform value gamma_tilde_k evaluated through the boresight path.
    double gamma_tilde_at(const ChannelModel &model, const PointingMatrix &F, const BeamformingMatrix &W, const AuxiliaryVars &Z,
                          const SystemConfig &config, int k);
}

#endif
