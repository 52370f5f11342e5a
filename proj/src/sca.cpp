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

#include "ramc/sca.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ramc
{
    namespace
    {
        // psi^e for the Lipschitz constants: negative exponents see psi floored, the
        // clamped region contributes nothing otherwise.
        double floored_pow(double psi, double e, double floor)
        {
            if (e < 0.0)
                return std::pow(std::max(psi, floor), e);
            if (e == 0.0)
                return 1.0;
            return psi > 0.0 ? std::pow(psi, e) : 0.0;
        }

        // First and second derivative of max(psi, 0)^p; zero on the clamped side.
        double d1(double psi, double p) { return psi > 0.0 ? p * std::pow(psi, p - 1.0) : 0.0; }
        double d2(double psi, double p) { return psi > 0.0 ? p * (p - 1.0) * std::pow(psi, p - 2.0) : 0.0; }

        double signal_coefficient(const ChannelModel &model, const BeamformingMatrix &W, const AuxiliaryVars &Z, int k, int n)
        {
            const int m = model.geometry().group_of(k);
            return 2.0 * std::real(std::conj(Z(k)) * model.beta(k, n) * W(n, m));
        }

        void check_shapes(const ChannelModel &model, const PointingMatrix &F, const BeamformingMatrix &W)
        {
            const auto &g = model.geometry();
            if (F.cols() != g.num_antennas() || W.rows() != g.num_antennas() || W.cols() != g.num_groups())
                throw std::invalid_argument("sca: dimension mismatch between F, W and the scenario");
        }

        Eigen::Map<const Eigen::VectorXd> flat(const PointingMatrix &F) { return {F.data(), F.size()}; }
    }

    Complex beam_inner(const ChannelModel &model, const PointingMatrix &F, const Eigen::VectorXcd &w, int k)
    {
        Complex x{0.0, 0.0};
        for (int n = 0; n < F.cols(); ++n)
            x += model.beta(k, n) * w(n) * directional_factor(model.cos_incidence(F, k, n), model.directivity());
        return x;
    }

    Vec3 grad_directional_factor(const Vec3 &f, const Vec3 &u, double p)
    {
        return d1(f.dot(u), p) * u;
    }

    double signal_term(const ChannelModel &model, const PointingMatrix &F, const BeamformingMatrix &W, const AuxiliaryVars &Z, int k)
    {
        const int m = model.geometry().group_of(k);
        return 2.0 * std::real(std::conj(Z(k)) * beam_inner(model, F, W.col(m), k));
    }

    double interference_term(const ChannelModel &model, const PointingMatrix &F, const BeamformingMatrix &W, int k, int j)
    {
        return std::norm(beam_inner(model, F, W.col(j), k));
    }

    Eigen::VectorXd grad_u(const ChannelModel &model, const PointingMatrix &F, const BeamformingMatrix &W, const AuxiliaryVars &Z, int k)
    {
        check_shapes(model, F, W);
        const int N = static_cast<int>(F.cols());
        Eigen::VectorXd g = Eigen::VectorXd::Zero(3 * N);
        for (int n = 0; n < N; ++n)
        {
            const Vec3 &u = model.direction(k, n);
            g.segment<3>(3 * n) = signal_coefficient(model, W, Z, k, n) * grad_directional_factor(F.col(n), u, model.directivity());
        }
        return g;
    }

    Eigen::VectorXd grad_a(const ChannelModel &model, const PointingMatrix &F, const BeamformingMatrix &W, int k, int j)
    {
        check_shapes(model, F, W);
        const int N = static_cast<int>(F.cols());
        const Complex x = beam_inner(model, F, W.col(j), k);
        Eigen::VectorXd g = Eigen::VectorXd::Zero(3 * N);
        for (int n = 0; n < N; ++n)
        {
            const Vec3 &u = model.direction(k, n);
            const double coef = 2.0 * std::real(std::conj(x) * model.beta(k, n) * W(n, j));
            g.segment<3>(3 * n) = coef * grad_directional_factor(F.col(n), u, model.directivity());
        }
        return g;
    }

    Eigen::MatrixXd hessian_u(const ChannelModel &model, const PointingMatrix &F, const BeamformingMatrix &W, const AuxiliaryVars &Z, int k)
    {
        check_shapes(model, F, W);
        const int N = static_cast<int>(F.cols());
        const double p = model.directivity();
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(3 * N, 3 * N);
        for (int n = 0; n < N; ++n)
        {
            const Vec3 &u = model.direction(k, n);
            const double psi = F.col(n).dot(u);
            H.block<3, 3>(3 * n, 3 * n) = signal_coefficient(model, W, Z, k, n) * d2(psi, p) * (u * u.transpose());
        }
        return H;
    }

    Eigen::MatrixXd hessian_a(const ChannelModel &model, const PointingMatrix &F, const BeamformingMatrix &W, int k, int j)
    {
        check_shapes(model, F, W);
        const int N = static_cast<int>(F.cols());
        const double p = model.directivity();
        const Complex x = beam_inner(model, F, W.col(j), k);
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(3 * N, 3 * N);
        for (int a = 0; a < N; ++a)
        {
            const Vec3 &ua = model.direction(k, a);
            const double psi_a = F.col(a).dot(ua);
            const Complex va = model.beta(k, a) * W(a, j);
            for (int b = 0; b < N; ++b)
            {
                const Vec3 &ub = model.direction(k, b);
                const double psi_b = F.col(b).dot(ub);
                const Complex vb = model.beta(k, b) * W(b, j);
                double coef = 2.0 * std::real(std::conj(va) * vb) * d1(psi_a, p) * d1(psi_b, p);
                if (a == b)
                    coef += 2.0 * std::real(std::conj(x) * va) * d2(psi_a, p);
                H.block<3, 3>(3 * a, 3 * b) = coef * (ua * ub.transpose());
            }
        }
        return H;
    }

    double lipschitz_signal(const ChannelModel &model, const PointingMatrix &F, const BeamformingMatrix &W, const AuxiliaryVars &Z, int k,
                            double psi_floor)
    {
        check_shapes(model, F, W);
        const double p = model.directivity();
        if (p == 0.0 || p == 1.0)
            return 0.0;
        double c_max = 0.0;
        for (int n = 0; n < F.cols(); ++n)
        {
            const double psi = model.cos_incidence(F, k, n);
            c_max = std::max(c_max, std::abs(signal_coefficient(model, W, Z, k, n) * floored_pow(psi, p - 2.0, psi_floor)));
        }
        return c_max * p * std::abs(p - 1.0);
    }

    double lipschitz_interference(const ChannelModel &model, const PointingMatrix &F, const BeamformingMatrix &W, int k, int j,
                                  double psi_floor)
    {
        check_shapes(model, F, W);
        const double p = model.directivity();
        if (p == 0.0)
            return 0.0;
        double v_max = 0.0, v_sum = 0.0;
        for (int n = 0; n < F.cols(); ++n)
        {
            const double v = std::abs(model.beta(k, n) * W(n, j));
            const double psi = model.cos_incidence(F, k, n);
            v_max = std::max(v_max, v * floored_pow(psi, 2.0 * (p - 1.0), psi_floor));
            v_sum += v;
        }
        return 2.0 * p * (std::abs(p - 1.0) + p) * v_max * v_sum;
    }

    double hessian_block_row_sum(const ChannelModel &model, const PointingMatrix &F, const BeamformingMatrix &W, int k, int j)
    {
        const Eigen::MatrixXd H = hessian_a(model, F, W, k, j);
        const int N = static_cast<int>(F.cols());
        double worst = 0.0;
        for (int a = 0; a < N; ++a)
        {
            double row = 0.0;
            for (int b = 0; b < N; ++b)
            {
                // Every block is rank one (coef * u_a u_b^T), so the Frobenius norm is the spectral norm.
                row += H.block<3, 3>(3 * a, 3 * b).norm();
            }
            worst = std::max(worst, row);
        }
        return worst;
    }

    double UserSurrogate::constant() const
    {
        double q = 0.0;
        for (double a : interference_value)
            q += a;
        return signal_value - z_abs2 * q - noise_offset;
    }

    Eigen::VectorXd UserSurrogate::gradient() const
    {
        Eigen::VectorXd g = signal_grad;
        for (const auto &ga : interference_grad)
            g -= z_abs2 * ga;
        return g;
    }

    double UserSurrogate::curvature() const
    {
        double l = signal_lipschitz;
        for (double li : interference_lipschitz)
            l += z_abs2 * li;
        return l;
    }

    double UserSurrogate::evaluate(const PointingMatrix &F, const PointingMatrix &expansion) const
    {
        const Eigen::VectorXd d = flat(F) - flat(expansion);
        return constant() + gradient().dot(d) - 0.5 * curvature() * d.squaredNorm();
    }

    double UserSurrogate::signal_lower(const PointingMatrix &F, const PointingMatrix &expansion) const
    {
        const Eigen::VectorXd d = flat(F) - flat(expansion);
        return signal_value + signal_grad.dot(d) - 0.5 * signal_lipschitz * d.squaredNorm();
    }

    double UserSurrogate::interference_upper(const PointingMatrix &F, const PointingMatrix &expansion, std::size_t idx) const
    {
        const Eigen::VectorXd d = flat(F) - flat(expansion);
        return interference_value[idx] + interference_grad[idx].dot(d) + 0.5 * interference_lipschitz[idx] * d.squaredNorm();
    }

    double SurrogateBundle::scale() const
    {
        double s = 0.0;
        for (const auto &u : users)
            s = std::max({s, std::abs(u.constant()), u.noise_offset, std::abs(u.signal_value)});
        return s > 0.0 ? s : 1.0;
    }

    void SurrogateBundle::double_curvature()
    {
        for (auto &u : users)
        {
            u.signal_lipschitz *= 2.0;
            for (double &l : u.interference_lipschitz)
                l *= 2.0;
        }
        ++doublings;
    }

    SurrogateBundle build_surrogates(const ChannelModel &model, const PointingMatrix &F_prev, const BeamformingMatrix &W,
                                     const AuxiliaryVars &Z, const SystemConfig &config, double psi_floor)
    {
        check_shapes(model, F_prev, W);
        const auto &geometry = model.geometry();
        const int K = geometry.num_users(), M = geometry.num_groups();
        if (Z.size() != K)
            throw std::invalid_argument("build_surrogates: auxiliary vector has the wrong length");
        if (!F_prev.allFinite() || !W.allFinite() || !Z.allFinite())
            throw std::invalid_argument("build_surrogates: non-finite input");

        SurrogateBundle bundle;
        bundle.expansion_point = F_prev;
        bundle.psi_floor = psi_floor;
        bundle.users.reserve(K);
        for (int k = 0; k < K; ++k)
        {
            UserSurrogate s;
            s.user = k;
            s.group = geometry.group_of(k);
            s.z_abs2 = std::norm(Z(k));
            s.noise_offset = s.z_abs2 * config.noise_power_w;
            s.signal_value = signal_term(model, F_prev, W, Z, k);
            s.signal_grad = grad_u(model, F_prev, W, Z, k);
            s.signal_lipschitz = lipschitz_signal(model, F_prev, W, Z, k, psi_floor);
            for (int j = 0; j < M; ++j)
            {
                if (j == s.group)
                    continue;
                s.interferers.push_back(j);
                s.interference_value.push_back(interference_term(model, F_prev, W, k, j));
                s.interference_grad.push_back(grad_a(model, F_prev, W, k, j));
                s.interference_lipschitz.push_back(lipschitz_interference(model, F_prev, W, k, j, psi_floor));
            }
            bundle.users.push_back(std::move(s));
        }
        return bundle;
    }

    double gamma_tilde_at(const ChannelModel &model, const PointingMatrix &F, const BeamformingMatrix &W, const AuxiliaryVars &Z,
                          const SystemConfig &config, int k)
    {
        const int m = model.geometry().group_of(k);
        double q = config.noise_power_w;
        for (int j = 0; j < W.cols(); ++j)
            if (j != m)
                q += interference_term(model, F, W, k, j);
        return signal_term(model, F, W, Z, k) - std::norm(Z(k)) * q;
    }

    BacktrackResult backtrack_curvature(SurrogateBundle &bundle, const PointingMatrix &F_candidate, const ChannelModel &model,
                                        const BeamformingMatrix &W, const AuxiliaryVars &Z, const SystemConfig &config)
    {
        BacktrackResult result;
        const double slack = 1e-9 * bundle.scale();
        double worst = -std::numeric_limits<double>::infinity();
        for (const auto &s : bundle.users)
        {
            const double phi = s.evaluate(F_candidate, bundle.expansion_point);
            const double actual = gamma_tilde_at(model, F_candidate, W, Z, config, s.user);
            worst = std::max(worst, phi - actual);
        }
        result.worst_violation = worst;
        if (worst <= slack)
        {
            result.accepted = true;
            return result;
        }
        if (bundle.doublings >= max_curvature_doublings)
        {
            result.step_failed = true;
            return result;
        }
        bundle.double_curvature();
        return result;
    }
}
