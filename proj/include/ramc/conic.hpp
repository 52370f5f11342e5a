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

#ifndef RAMC_CONIC_HPP
#define RAMC_CONIC_HPP

#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace ramc
{
    // coef * x + offset, with coef of size rows x num_vars.
    struct AffineMap
    {
        Eigen::MatrixXd coef;
        Eigen::VectorXd offset;

        Eigen::VectorXd operator()(const Eigen::VectorXd &x) const { return coef * x + offset; }
        Eigen::Index rows() const { return coef.rows(); }
    };

    // a . x + b (a scalar affine function)
    struct AffineScalar
    {
        Eigen::VectorXd coef;
        double offset = 0.0;

        double operator()(const Eigen::VectorXd &x) const { return coef.dot(x) + offset; }
    };

    // lhs(x) <= 0
    struct LinearInequality
    {
        AffineScalar lhs;
    };

    // ||body(x)|| <= bound(x)
    struct SecondOrderCone
    {
        AffineMap body;
        AffineScalar bound;
    };

    // ||body(x)||^2 <= 2 u(x) v(x), u, v >= 0
    struct RotatedCone
    {
        AffineMap body;
        AffineScalar u;
        AffineScalar v;
    };

    struct ConicConstraint
    {
        std::string label;
        std::variant<LinearInequality, SecondOrderCone, RotatedCone> cone;
    };

    struct VariableSlice
    {
        std::string name;
        int offset = 0;
        int length = 0;
    };

    // Maximise x[epigraph_index] subject to a list of conic constraints.
    //
    // Complex quantities are stored as interleaved (real, imaginary) pairs: complex entry i of a
    // slice occupies offsets 2i and 2i + 1.
    struct ConicProgram
    {
        int num_vars = 0;
        int epigraph_index = 0;
        std::vector<VariableSlice> slices;
        std::vector<ConicConstraint> constraints;

        // Builders may solve in normalised units; these map solver values back to model units.
        double epigraph_scale = 1.0;
        double variable_scale = 1.0;

        const VariableSlice &slice(const std::string &name) const;
        void add_linear(std::string label, AffineScalar lhs);
        void add_soc(std::string label, AffineMap body, AffineScalar bound);
        void add_rotated(std::string label, AffineMap body, AffineScalar u, AffineScalar v);

        // Natural slack of each constraint at x, in constraint order:
        // -lhs for linear, bound - ||body|| for SOC, 2uv - ||body||^2 for rotated cones.
        std::vector<double> slacks(const Eigen::VectorXd &x) const;

        // Largest violation of the lowered (standard-form) cones at x, 0 when feasible.
        double max_violation(const Eigen::VectorXd &x) const;

        // One constraint per line; see docs/conic_format.md.
        std::string to_text() const;
    };

    enum class SolveStatus
    {
        optimal,
        near_optimal,
        infeasible,
        numerical_failure
    };

    const char *to_string(SolveStatus status);

    struct SolveOutcome
    {
        SolveStatus status = SolveStatus::numerical_failure;
        double objective = 0.0; // x[epigraph_index], solver units
        Eigen::VectorXd x;
        int iterations = 0;
        double wall_ms = 0.0;
        double primal_residual = 0.0;
        double dual_residual = 0.0;
        double gap = 0.0;
        double max_violation = 0.0;

        bool ok() const { return status == SolveStatus::optimal || status == SolveStatus::near_optimal; }
    };

    struct SolverSettings
    {
        int max_iterations = 100;
        double feasibility_tol = 1e-9;
        double absolute_gap_tol = 1e-9;
        double relative_gap_tol = 1e-9;
        double step_fraction = 0.99;
        double accept_violation = 1e-7; // "optimal" requires the cones to hold to this absolute slack
    };

    // Primal-dual interior-point method on the homogeneous self-dual embedding with
    // Nesterov-Todd scaling and a Mehrotra predictor-corrector. Deterministic and reentrant.
    SolveOutcome solve(const ConicProgram &program, const SolverSettings &settings = {});
}

#endif
