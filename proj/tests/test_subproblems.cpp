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

#include <doctest.h>

#include <cmath>
#include <random>
#include <variant>

#include "ramc/objective.hpp"
#include "ramc/subproblems.hpp"
#include "test_support.hpp"

using namespace ramc;

namespace
{
    struct Scalar
    {
        SystemConfig config;
        ScenarioGeometry geometry;
        ChannelMatrix H;
    };

    Scalar scalar_link()
    {
        Scalar s;
        s.config = testing::small_config(1, {1}, 5.0);
        s.geometry = ScenarioGeometry({Vec3::Zero()}, {Vec3(10, 0, 0)}, {0}, 1);
        s.H.coefficients = Eigen::MatrixXcd::Ones(1, 1);
        s.H.static_factor = s.H.coefficients;
        return s;
    }

    int count_rotated(const ConicProgram &p)
    {
        int n = 0;
        for (const auto &c : p.constraints)
            n += std::holds_alternative<RotatedCone>(c.cone);
        return n;
    }

    UserSurrogate manual_user(int k, double constant, Eigen::VectorXd g, double lambda)
    {
        UserSurrogate u;
        u.user = k;
        u.signal_value = constant;
        u.signal_grad = std::move(g);
        u.signal_lipschitz = lambda;
        return u;
    }
}

TEST_CASE("scalar beamforming program reaches the closed-form optimum")
{
    Scalar s = scalar_link();
    const double P = s.config.transmit_power_w, sigma2 = s.config.noise_power_w;
    // z from a phase-rotated starting beam: the optimum re-aligns w with z.
    const Complex w0 = std::polar(std::sqrt(P), 0.7);
    AuxiliaryVars Z(1);
    Z(0) = w0 / sigma2;

    const ConicProgram prog = build_beamforming_program(s.H, Z, s.geometry, s.config);
    CHECK(count_rotated(prog) == 0);
    const SolveOutcome out = solve(prog);
    REQUIRE(out.ok());
    CHECK(testing::rel_err(decode_epigraph(prog, out.x), P / sigma2) < 1e-6);
    const BeamformingMatrix W = decode_beamforming(prog, out.x, 1, 1);
    CHECK(std::abs(W(0, 0) - w0) / std::sqrt(P) < 1e-4);
}

TEST_CASE("zero auxiliary variables give a zero epigraph")
{
    std::mt19937_64 rng(2);
    const SystemConfig c = testing::small_config(3, {2, 1}, 5.0);
    const ScenarioGeometry g = testing::random_geometry(rng, c);
    const ChannelMatrix H = channel_matrix(g, fixed_pointing(3), c);
    const ConicProgram prog = build_beamforming_program(H, AuxiliaryVars::Zero(3), g, c);
    const SolveOutcome out = solve(prog);
    REQUIRE(out.ok());
    CHECK(std::abs(decode_epigraph(prog, out.x)) < 1e-7);
}

TEST_CASE("single-group programs carry no interference cones")
{
    std::mt19937_64 rng(6);
    const SystemConfig c = testing::small_config(4, {3}, 5.0);
    const ScenarioGeometry g = testing::random_geometry(rng, c);
    const ChannelMatrix H = channel_matrix(g, fixed_pointing(4), c);
    const BeamformingMatrix W = testing::random_beamforming(rng, 4, 1, c.transmit_power_w);
    const ConicProgram prog = build_beamforming_program(H, optimal_z_all(W, H, g, c), g, c);
    CHECK(count_rotated(prog) == 0);
    CHECK(prog.constraints.size() == 4);
    CHECK(prog.num_vars == 2 * 4 + 1);
}

TEST_CASE("beamforming lowering reproduces the quadratic-transform residuals")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial)
    {
        const SystemConfig c = testing::small_config(2 + trial % 4, {2, 1, 2}, 5.0);
        const ScenarioGeometry g = testing::random_geometry(rng, c);
        const ChannelMatrix H = channel_matrix(g, testing::random_pointing(rng, c.num_antennas, pi / 3), c);
        const int N = c.num_antennas;
        const BeamformingMatrix W0 = testing::random_beamforming(rng, N, 3, c.transmit_power_w);
        const AuxiliaryVars Z = optimal_z_all(W0, H, g, c);
        const ConicProgram prog = build_beamforming_program(H, Z, g, c);
        int active = 0;
        for (int k = 0; k < 5; ++k)
            active += Z(k) != Complex(0.0, 0.0);
        CHECK(count_rotated(prog) == active);

        std::uniform_real_distribution<double> frac(0.1, 1.0);
        const BeamformingMatrix W = testing::random_beamforming(rng, N, 3, frac(rng) * c.transmit_power_w);
        const double t = frac(rng) * min_sinr(W0, H, g, c);
        const Eigen::VectorXd x = encode_beamforming(prog, W, t);
        CHECK((decode_beamforming(prog, x, N, 3) - W).norm() < 1e-12 * W.norm());

        const std::vector<double> slack = prog.slacks(x);
        for (int k = 0; k < 5; ++k)
        {
            const double residual = surrogate_gamma_tilde(Z(k), W, H, g, c, k) - t;
            const double lowered = slack[k] * prog.epigraph_scale;
            CHECK(std::abs(lowered - residual) <= 1e-9 * prog.epigraph_scale);
        }
        CHECK(std::abs(slack[5] - (1.0 - W.norm() / std::sqrt(c.transmit_power_w))) < 1e-12);
    }
}

TEST_CASE("beamforming solve never falls below the previous iterate")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial)
    {
        const SystemConfig c = testing::small_config(4, {2, 2}, 5.0);
        const ScenarioGeometry g = testing::random_geometry(rng, c);
        const ChannelMatrix H = channel_matrix(g, testing::random_pointing(rng, 4, pi / 3), c);
        const BeamformingMatrix W = testing::random_beamforming(rng, 4, 2, c.transmit_power_w);
        const double t_prev = min_sinr(W, H, g, c);
        const ConicProgram prog = build_beamforming_program(H, optimal_z_all(W, H, g, c), g, c);
        CHECK(prog.max_violation(encode_beamforming(prog, W, t_prev)) < 1e-9);
        const SolveOutcome out = solve(prog);
        REQUIRE(out.ok());
        CHECK(decode_epigraph(prog, out.x) >= t_prev - 1e-7);
        const BeamformingMatrix W1 = decode_beamforming(prog, out.x, 4, 2);
        CHECK(min_sinr(W1, H, g, c) >= t_prev - 1e-7);
    }
}

TEST_CASE("degenerate boresight surrogate keeps the smallest constant")
{
    SystemConfig c = testing::small_config(2, {1, 1}, 5.0);
    SurrogateBundle b;
    b.expansion_point = fixed_pointing(2);
    b.users.push_back(manual_user(0, 3.0, Eigen::VectorXd::Zero(6), 0.0));
    b.users.push_back(manual_user(1, 2.0, Eigen::VectorXd::Zero(6), 0.0));
    const ConicProgram prog = build_boresight_program(b, c);
    const SolveOutcome out = solve(prog);
    REQUIRE(out.ok());
    CHECK(decode_epigraph(prog, out.x) == doctest::Approx(2.0).epsilon(1e-8));
    const PointingMatrix F = decode_pointing(prog, out.x);
    for (int n = 0; n < 2; ++n)
    {
        CHECK(F.col(n).norm() <= 1 + 1e-7);
        CHECK(F(0, n) >= std::cos(c.max_zenith_rad) - 1e-7);
    }

    b.users[0].signal_lipschitz = -1.0;
    CHECK_THROWS_AS(build_boresight_program(b, c), std::invalid_argument);
}

TEST_CASE("single-antenna boresight step matches a grid search")
{
    SystemConfig c = testing::small_config(1, {1}, 5.0);
    const double cos_max = std::cos(c.max_zenith_rad);
    SurrogateBundle b;
    b.expansion_point = fixed_pointing(1);
    Eigen::VectorXd g(3);
    g << 0.2, 1.0, 0.5;
    const double lambda = 1.5, constant = 4.0;
    b.users.push_back(manual_user(0, constant, g, lambda));

    const ConicProgram prog = build_boresight_program(b, c);
    const SolveOutcome out = solve(prog);
    REQUIRE(out.ok());
    const double value = decode_epigraph(prog, out.x);

    auto phi = [&](const Vec3 &f) {
        const Vec3 d = f - Vec3::UnitX();
        return constant + g.dot(d) - 0.5 * lambda * d.squaredNorm();
    };
    double best = -1e300;
    for (int ir = 0; ir <= 100; ++ir)
        for (int iz = 0; iz <= 120; ++iz)
            for (int ia = 0; ia < 180; ++ia)
            {
                const double r = ir / 100.0;
                const Vec3 f = r * boresight_vector(c.max_zenith_rad * iz / 120.0, 2 * pi * ia / 180.0);
                if (f.x() >= cos_max)
                    best = std::max(best, phi(f));
            }
    CHECK(value >= best - 1e-9);
    CHECK(value - best < 2e-3);
    CHECK(phi(decode_pointing(prog, out.x)) == doctest::Approx(value).epsilon(1e-7));
}

TEST_CASE("expansion point is feasible for the boresight program")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial)
    {
        const SystemConfig c = testing::small_config(4, {2, 2}, 1.0 + trial % 5);
        const ScenarioGeometry geo = testing::random_geometry(rng, c);
        const ChannelModel model(geo, c);
        const PointingMatrix F = testing::random_pointing(rng, 4, c.max_zenith_rad, 0.5);
        const BeamformingMatrix W = testing::random_beamforming(rng, 4, 2, c.transmit_power_w);
        const AuxiliaryVars Z = optimal_z_all(W, model.evaluate(F), geo, c);
        const SurrogateBundle b = build_surrogates(model, F, W, Z, c);
        double t = 1e300;
        for (const auto &u : b.users)
            t = std::min(t, u.evaluate(F, F));
        const ConicProgram prog = build_boresight_program(b, c);
        const Eigen::VectorXd x = encode_pointing(prog, F, t);
        CHECK(prog.max_violation(x) < 1e-9);
        CHECK((decode_pointing(prog, x) - F).norm() == 0.0);
        const SolveOutcome out = solve(prog);
        REQUIRE(out.ok());
        CHECK(decode_epigraph(prog, out.x) >= t - 1e-7 * std::max(1.0, std::abs(t)));
    }
}
