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

#include "ramc/channel.hpp"
#include "test_support.hpp"

using namespace ramc;

TEST_CASE("element_gain follows the cosine-power pattern")
{
    CHECK(element_gain(1.0, 5.0) == doctest::Approx(22.0));
    CHECK(element_gain(-0.3, 5.0) == 0.0);
    CHECK(element_gain(0.5, 1.0) == doctest::Approx(1.5));
    CHECK(peak_gain(5.0) == 22.0);
    CHECK(peak_gain(0.0) == 1.0);
    CHECK(element_gain(-0.7, 0.0) == 1.0);
}

TEST_CASE("front-hemisphere pattern integrates to unit average gain")
{
    for (double p : {0.5, 1.0, 3.0, 5.0})
    {
        const int steps = 20000;
        const double h = 0.5 * pi / steps;
        double acc = 0.0;
        for (int i = 0; i < steps; ++i)
        {
            const double eps = (i + 0.5) * h;
            acc += element_gain(std::cos(eps), p) * std::sin(eps) * h;
        }
        CHECK(std::abs(2.0 * pi * acc / (4.0 * pi) - 1.0) < 1e-3);
    }
}

TEST_CASE("aligned link at one wavelength")
{
    SystemConfig c = testing::small_config(1, {1}, 5.0);
    const double lambda = c.wavelength();
    const ScenarioGeometry g({Vec3::Zero()}, {Vec3(lambda, 0, 0)}, {0}, 1);
    const ChannelMatrix H = channel_matrix(g, fixed_pointing(1), c);
    const Complex h = H.coefficients(0, 0);
    CHECK(std::abs(h) == doctest::Approx(0.37323).epsilon(1e-4));
    CHECK(std::abs(h) == doctest::Approx(std::sqrt(22.0 / (16.0 * pi * pi))).epsilon(1e-12));
    CHECK(std::abs(std::arg(h)) < 1e-9);

    PointingMatrix F(3, 1);
    F.col(0) = Vec3(0, 1, 0);
    CHECK(channel_matrix(g, F, c).coefficients(0, 0) == Complex(0.0, 0.0));
}

TEST_CASE("isotropic channel ignores the pointing")
{
    std::mt19937_64 rng(5);
    const SystemConfig c = testing::small_config(4, {2, 2}, 0.0);
    const ScenarioGeometry g = testing::random_geometry(rng, c);
    const ChannelModel model(g, c);
    const ChannelMatrix a = model.evaluate(fixed_pointing(4));
    const ChannelMatrix b = model.evaluate(testing::random_pointing(rng, 4, pi / 2));
    CHECK((a.coefficients - b.coefficients).norm() == 0.0);
    CHECK((a.coefficients - a.static_factor).norm() == 0.0);
    const double d = g.distance(0, 0);
    CHECK(std::abs(a.coefficients(0, 0)) == doctest::Approx(std::sqrt(c.element_area() / (4 * pi * d * d))));
}

TEST_CASE("static factor modulus and phase")
{
    std::mt19937_64 rng(9);
    const SystemConfig c = testing::small_config(6, {3}, 3.0);
    const ScenarioGeometry g = testing::random_geometry(rng, c);
    const ChannelModel model(g, c);
    const double lambda = c.wavelength();
    for (int k = 0; k < g.num_users(); ++k)
        for (int n = 0; n < g.num_antennas(); ++n)
        {
            const double d = g.distance(k, n);
            const Complex b = model.beta(k, n);
            CHECK(testing::rel_err(std::abs(b), std::sqrt(c.element_area() * 14.0 / (4 * pi * d * d))) < 1e-12);
            const Complex expected = std::polar(1.0, -2.0 * pi * d / lambda);
            CHECK(std::abs(b / std::abs(b) - expected) < 1e-9);
        }
}

TEST_CASE("channel power matches path gain times element gain")
{
    std::mt19937_64 rng(21);
    for (double p : {1.0, 2.5, 5.0})
    {
        const SystemConfig c = testing::small_config(4, {2, 2}, p);
        const ScenarioGeometry g = testing::random_geometry(rng, c);
        const ChannelModel model(g, c);
        for (int trial = 0; trial < 50; ++trial)
        {
            const PointingMatrix F = testing::random_pointing(rng, 4, pi / 2);
            const ChannelMatrix H = model.evaluate(F);
            for (int k = 0; k < g.num_users(); ++k)
                for (int n = 0; n < 4; ++n)
                {
                    const double d = g.distance(k, n);
                    const double expected = c.element_area() / (4 * pi * d * d) * element_gain(F.col(n).dot(g.direction(k, n)), p);
                    const double got = std::norm(H.coefficients(k, n));
                    if (expected == 0.0)
                        CHECK(got == 0.0);
                    else
                        CHECK(testing::rel_err(got, expected) < 1e-12);
                }
        }
    }
}

TEST_CASE("gain increases with the incidence cosine")
{
    SystemConfig c = testing::small_config(1, {1}, 5.0);
    const ScenarioGeometry g({Vec3::Zero()}, {Vec3(20, 0, 0)}, {0}, 1);
    const ChannelModel model(g, c);
    double last = 0.0;
    for (int i = 1; i < 100; ++i)
    {
        PointingMatrix F(3, 1);
        const double theta = pi / 2 * (1.0 - i / 100.0);
        F.col(0) = boresight_vector(theta, 0.3);
        const double v = std::abs(model.evaluate(F).coefficients(0, 0));
        CHECK(v > last);
        last = v;
    }
}

TEST_CASE("rear links are flagged only for non-integer directivity")
{
    const ScenarioGeometry g({Vec3::Zero()}, {Vec3(-10, 1, 0), Vec3(10, 0, 0)}, {0, 0}, 1);
    PointingMatrix F = fixed_pointing(1);

    SystemConfig c = testing::small_config(1, {2}, 2.5);
    ChannelMatrix H = channel_matrix(g, F, c);
    REQUIRE(H.rear_links.size() == 1);
    CHECK(H.rear_links[0] == std::pair<int, int>{0, 0});
    CHECK(H.coefficients(0, 0) == Complex(0.0, 0.0));

    c.directivity = 5.0;
    H = channel_matrix(g, F, c);
    CHECK(H.rear_links.empty());
    CHECK(H.coefficients(0, 0) == Complex(0.0, 0.0));
}
