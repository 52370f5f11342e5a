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

#include "ramc/subproblems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ramc
{
    namespace
    {
        std::string user_label(const char *prefix, int k) { return std::string(prefix) + std::to_string(k); }
    }

    ConicProgram build_beamforming_program(const ChannelMatrix &H, const AuxiliaryVars &Z, const ScenarioGeometry &geometry,
                                           const SystemConfig &config)
    {
        const int K = H.num_users(), N = H.num_antennas(), M = geometry.num_groups();
        if (K != geometry.num_users() || N != geometry.num_antennas() || Z.size() != K)
            throw std::invalid_argument("build_beamforming_program: dimension mismatch");
        if (!H.coefficients.allFinite() || !Z.allFinite())
            throw std::invalid_argument("build_beamforming_program: non-finite input");

        const double root_p = std::sqrt(config.transmit_power_w);
        const double sigma2 = config.noise_power_w;
        double scale = 0.0;
        for (int k = 0; k < K; ++k)
        {
            const double za = std::abs(Z(k));
            scale = std::max({scale, 2.0 * za * H.coefficients.row(k).norm() * root_p, za * za * sigma2});
        }
        if (!(scale > 0.0))
            scale = 1.0;

        ConicProgram prog;
        const int nw = 2 * N * M;
        prog.num_vars = nw + 1;
        prog.epigraph_index = nw;
        prog.slices = {{"w", 0, nw}, {"t", nw, 1}};
        prog.epigraph_scale = scale;
        prog.variable_scale = root_p;

        // Rows (Re, Im) of h_k^T w_j as linear maps of the normalised variables.
        auto response_rows = [&](int k, int j, double factor) {
            Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(2, prog.num_vars);
            for (int n = 0; n < N; ++n)
            {
                const Complex h = H.coefficients(k, n) * factor;
                const int o = 2 * (j * N + n);
                rows(0, o) = h.real();
                rows(0, o + 1) = -h.imag();
                rows(1, o) = h.imag();
                rows(1, o + 1) = h.real();
            }
            return rows;
        };

        for (int k = 0; k < K; ++k)
        {
            const int m = geometry.group_of(k);
            const Complex z = Z(k);
            const double z2 = std::norm(z);

            // v = (2Re{z^* h^T w_m} - |z|^2 sigma^2) / T - t_hat
            AffineScalar v;
            v.coef = Eigen::VectorXd::Zero(prog.num_vars);
            const Eigen::MatrixXd sig = response_rows(k, m, root_p / scale);
            v.coef = 2.0 * (z.real() * sig.row(0) + z.imag() * sig.row(1)).transpose();
            v.coef(nw) = -1.0;
            v.offset = -z2 * sigma2 / scale;

            if (M == 1 || z2 == 0.0)
            {
                AffineScalar lhs{-v.coef, -v.offset};
                prog.add_linear(user_label("user", k), std::move(lhs));
                continue;
            }

            AffineMap body;
            body.coef.resize(2 * (M - 1), prog.num_vars);
            body.offset = Eigen::VectorXd::Zero(2 * (M - 1));
            const double factor = std::abs(z) * root_p / std::sqrt(scale);
            int r = 0;
            for (int j = 0; j < M; ++j)
            {
                if (j == m)
                    continue;
                body.coef.middleRows(r, 2) = response_rows(k, j, factor);
                r += 2;
            }
            AffineScalar u{Eigen::VectorXd::Zero(prog.num_vars), 0.5};
            prog.add_rotated(user_label("user", k), std::move(body), std::move(u), std::move(v));
        }

        AffineMap power;
        power.coef = Eigen::MatrixXd::Identity(nw, prog.num_vars);
        power.offset = Eigen::VectorXd::Zero(nw);
        prog.add_soc("power", std::move(power), AffineScalar{Eigen::VectorXd::Zero(prog.num_vars), 1.0});
        return prog;
    }

    BeamformingMatrix decode_beamforming(const ConicProgram &program, const Eigen::VectorXd &x, int num_antennas, int num_groups)
    {
        const VariableSlice &s = program.slice("w");
        if (s.length != 2 * num_antennas * num_groups || x.size() != program.num_vars)
            throw std::invalid_argument("decode_beamforming: dimension mismatch");
        BeamformingMatrix W(num_antennas, num_groups);
        for (int m = 0; m < num_groups; ++m)
            for (int n = 0; n < num_antennas; ++n)
            {
                const int o = s.offset + 2 * (m * num_antennas + n);
                W(n, m) = Complex(x(o), x(o + 1)) * program.variable_scale;
            }
        return W;
    }

    Eigen::VectorXd encode_beamforming(const ConicProgram &program, const BeamformingMatrix &W, double t)
    {
        const VariableSlice &s = program.slice("w");
        const int N = static_cast<int>(W.rows()), M = static_cast<int>(W.cols());
        if (s.length != 2 * N * M)
            throw std::invalid_argument("encode_beamforming: dimension mismatch");
        Eigen::VectorXd x = Eigen::VectorXd::Zero(program.num_vars);
        for (int m = 0; m < M; ++m)
            for (int n = 0; n < N; ++n)
            {
                const int o = s.offset + 2 * (m * N + n);
                x(o) = W(n, m).real() / program.variable_scale;
                x(o + 1) = W(n, m).imag() / program.variable_scale;
            }
        x(program.epigraph_index) = t / program.epigraph_scale;
        return x;
    }

    ConicProgram build_boresight_program(const SurrogateBundle &bundle, const SystemConfig &config)
    {
        const PointingMatrix &F0 = bundle.expansion_point;
        const int N = static_cast<int>(F0.cols());
        const int nf = 3 * N;
        const double scale = bundle.scale();

        ConicProgram prog;
        prog.num_vars = nf + 1;
        prog.epigraph_index = nf;
        prog.slices = {{"f", 0, nf}, {"t", nf, 1}};
        prog.epigraph_scale = scale;

        const Eigen::Map<const Eigen::VectorXd> f0(F0.data(), nf);
        for (const auto &s : bundle.users)
        {
            const double lambda = s.curvature();
            if (!(lambda >= 0.0))
                throw std::invalid_argument("build_boresight_program: negative curvature constant");
            const Eigen::VectorXd g = s.gradient();
            if (!g.allFinite() || !std::isfinite(s.constant()))
                throw std::invalid_argument("build_boresight_program: non-finite surrogate");

            // v = (constant + g . (F - F0)) / T - t_hat
            AffineScalar v;
            v.coef = Eigen::VectorXd::Zero(prog.num_vars);
            v.coef.head(nf) = g / scale;
            v.coef(nf) = -1.0;
            v.offset = (s.constant() - g.dot(f0)) / scale;

            if (lambda == 0.0)
            {
                prog.add_linear(user_label("user", s.user), AffineScalar{-v.coef, -v.offset});
                continue;
            }
            const double r = std::sqrt(lambda / (2.0 * scale));
            AffineMap body;
            body.coef = Eigen::MatrixXd::Zero(nf, prog.num_vars);
            body.coef.leftCols(nf).diagonal().setConstant(r);
            body.offset = -r * f0;
            AffineScalar u{Eigen::VectorXd::Zero(prog.num_vars), 0.5};
            prog.add_rotated(user_label("user", s.user), std::move(body), std::move(u), std::move(v));
        }

        const double cos_max = std::cos(config.max_zenith_rad);
        for (int n = 0; n < N; ++n)
        {
            AffineMap ball;
            ball.coef = Eigen::MatrixXd::Zero(3, prog.num_vars);
            ball.coef.middleCols(3 * n, 3).setIdentity();
            ball.offset = Eigen::VectorXd::Zero(3);
            prog.add_soc(user_label("ball", n), std::move(ball), AffineScalar{Eigen::VectorXd::Zero(prog.num_vars), 1.0});

            AffineScalar cone;
            cone.coef = Eigen::VectorXd::Zero(prog.num_vars);
            cone.coef(3 * n) = -1.0;
            cone.offset = cos_max;
            prog.add_linear(user_label("zenith", n), std::move(cone));
        }
        return prog;
    }

    PointingMatrix decode_pointing(const ConicProgram &program, const Eigen::VectorXd &x)
    {
        const VariableSlice &s = program.slice("f");
        if (x.size() != program.num_vars || s.length % 3 != 0)
            throw std::invalid_argument("decode_pointing: dimension mismatch");
        PointingMatrix F(3, s.length / 3);
        for (int i = 0; i < s.length; ++i)
            F.data()[i] = x(s.offset + i);
        return F;
    }

    Eigen::VectorXd encode_pointing(const ConicProgram &program, const PointingMatrix &F, double t)
    {
        const VariableSlice &s = program.slice("f");
        if (F.size() != s.length)
            throw std::invalid_argument("encode_pointing: dimension mismatch");
        Eigen::VectorXd x = Eigen::VectorXd::Zero(program.num_vars);
        for (int i = 0; i < s.length; ++i)
            x(s.offset + i) = F.data()[i];
        x(program.epigraph_index) = t / program.epigraph_scale;
        return x;
    }
}
