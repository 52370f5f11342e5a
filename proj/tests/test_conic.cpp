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

#include "ramc/conic.hpp"

using namespace ramc;

namespace
{
    AffineScalar scalar(Eigen::VectorXd coef, double offset)
    {
        return AffineScalar{std::move(coef), offset};
    }
}

TEST_CASE("two upper bounds on t")
{
    ConicProgram prog;
    prog.num_vars = 1;
    prog.add_linear("t<=3", scalar(Eigen::VectorXd::Ones(1), -3.0));
    prog.add_linear("t<=5", scalar(Eigen::VectorXd::Ones(1), -5.0));
    const auto out = solve(prog);
    CHECK(out.status == SolveStatus::optimal);
    CHECK(out.objective == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("Cauchy-Schwarz: max a'x over the unit ball")
{
    // vars: x (3), t
    const Eigen::Vector3d a(1.2, -0.4, 0.9);
    const Eigen::Vector3d dir = a.normalized() * 2.0;                                 // ||a|| = 2
    ConicProgram prog;
    prog.num_vars = 4;
    prog.epigraph_index = 3;
    AffineMap body{Eigen::MatrixXd::Zero(3, 4), Eigen::VectorXd::Zero(3)};
    body.coef.leftCols(3).setIdentity();
    prog.add_soc("ball", body, scalar(Eigen::VectorXd::Zero(4), 1.0));
    Eigen::VectorXd coef = Eigen::VectorXd::Zero(4);
    coef.head(3) = -dir;
    coef(3) = 1.0;
    prog.add_linear("t<=a'x", scalar(coef, 0.0));

    const auto out = solve(prog);
    REQUIRE(out.status == SolveStatus::optimal);
    CHECK(out.objective == doctest::Approx(2.0).epsilon(1e-8));
    CHECK((out.x.head(3) - dir / 2.0).norm() < 1e-6);
}

TEST_CASE("rotated cone: max t with t^2 <= 2 * 1 * 2")
{
    // ||t||^2 <= 2 u v with u = 1, v = 2  ->  t = 2
    ConicProgram prog;
    prog.num_vars = 1;
    AffineMap body{Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Zero(1)};
    prog.add_rotated("rsoc", body, scalar(Eigen::VectorXd::Zero(1), 1.0), scalar(Eigen::VectorXd::Zero(1), 2.0));
    const auto out = solve(prog);
    REQUIRE(out.status == SolveStatus::optimal);
    CHECK(out.objective == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("infeasible program is reported")
{
    // t >= 1 and t <= 0
    ConicProgram prog;
    prog.num_vars = 1;
    prog.add_linear("t>=1", scalar(-Eigen::VectorXd::Ones(1), 1.0));
    prog.add_linear("t<=0", scalar(Eigen::VectorXd::Ones(1), 0.0));
    const auto out = solve(prog);
    CHECK(out.status == SolveStatus::infeasible);
}

TEST_CASE("unbounded program is not reported optimal")
{
    ConicProgram prog;
    prog.num_vars = 2;
    prog.epigraph_index = 0;
    Eigen::VectorXd coef(2);
    coef << 1.0, -1.0; // t <= y, y free
    prog.add_linear("t<=y", scalar(coef, 0.0));
    coef << 0.0, -1.0; // y >= 0
    prog.add_linear("y>=0", scalar(coef, 0.0));
    const auto out = solve(prog);
    CHECK_FALSE(out.ok());
}

TEST_CASE("solves are reproducible bit for bit")
{
    ConicProgram prog;
    prog.num_vars = 3;
    prog.epigraph_index = 2;
    AffineMap body{Eigen::MatrixXd::Zero(2, 3), Eigen::Vector2d(0.3, -0.1)};
    body.coef.leftCols(2).setIdentity();
    prog.add_soc("ball", body, scalar(Eigen::VectorXd::Zero(3), 1.5));
    prog.add_linear("t<=x0+2x1", scalar(Eigen::Vector3d(-1.0, -2.0, 1.0), 0.1));
    const auto a = solve(prog), b = solve(prog);
    REQUIRE(a.ok());
    CHECK(a.iterations == b.iterations);
    CHECK(a.x == b.x);
}

TEST_CASE("text dump has one line per constraint")
{
    ConicProgram prog;
    prog.num_vars = 1;
    prog.slices.push_back({"t", 0, 1});
    prog.add_linear("t<=3", scalar(Eigen::VectorXd::Ones(1), -3.0));
    AffineMap body{Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Zero(1)};
    prog.add_soc("abs", body, scalar(Eigen::VectorXd::Zero(1), 4.0));
    const std::string text = prog.to_text();
    CHECK(text == "conic-program v1\nvars 1 maximize 0 epigraph_scale 1 variable_scale 1\nslice t 0 1\n"
                  "lin t<=3 | 0:1 | -3\nsoc abs |  | 4 | 0:1 | 0\n");
}

TEST_CASE("slacks use the natural form of each cone")
{
    ConicProgram prog;
    prog.num_vars = 2;
    AffineMap body{Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2)};
    prog.add_rotated("r", body, scalar(Eigen::VectorXd::Zero(2), 0.5), scalar(Eigen::Vector2d(0.0, 0.0), 3.0));
    prog.add_soc("s", body, scalar(Eigen::VectorXd::Zero(2), 1.0));
    const auto sl = prog.slacks(Eigen::Vector2d(0.6, 0.8));
    CHECK(sl[0] == doctest::Approx(3.0 - 1.0));
    CHECK(sl[1] == doctest::Approx(0.0));
    CHECK(prog.max_violation(Eigen::Vector2d(0.6, 0.8)) < 1e-12);
    CHECK(prog.max_violation(Eigen::Vector2d(1.2, 1.6)) == doctest::Approx(1.0));
}
