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

#include "ramc/ao.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ramc/objective.hpp"
#include "ramc/subproblems.hpp"

namespace ramc
{
    namespace
    {
        using Clock = std::chrono::steady_clock;

        double elapsed_ms(Clock::time_point since)
        {
            return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
        }

        // Pull solver output exactly onto the feasible set (removes interior-point round-off).
        void clip_pointing(PointingMatrix &F, double cos_max)
        {
            for (int n = 0; n < F.cols(); ++n)
            {
                if (F(0, n) < cos_max)
                    F(0, n) = cos_max;
                const double norm = F.col(n).norm();
                if (norm > 1.0)
                    F.col(n) /= norm;
            }
        }

        void clip_power(BeamformingMatrix &W, double power)
        {
            const double norm2 = W.squaredNorm();
            if (norm2 > power)
                W *= std::sqrt(power / norm2);
        }

        class Driver
        {
        public:
            Driver(const ChannelModel &model, const SystemConfig &config, const AoOptions &options)
                : model_(model), config_(config), options_(options), geometry_(model.geometry())
            {
            }

            double min_sinr_at(const BeamformingMatrix &W, const PointingMatrix &F) const
            {
                return min_sinr(W, model_.evaluate(F), geometry_, config_);
            }

            AuxiliaryVars z_at(const BeamformingMatrix &W, const PointingMatrix &F) const
            {
                return optimal_z_all(W, model_.evaluate(F), geometry_, config_);
            }

            // Returns false when the solver failed; state is left untouched unless the solution improves.
            bool beamforming_step(AoState &s, double &current, AoReport &report) const
            {
                const ChannelMatrix H = model_.evaluate(s.F);
                const ConicProgram prog = build_beamforming_program(H, s.Z, geometry_, config_);
                const SolveOutcome out = solve(prog, options_.solver);
                if (!out.ok())
                    return false;
                BeamformingMatrix W = decode_beamforming(prog, out.x, geometry_.num_antennas(), geometry_.num_groups());
                clip_power(W, config_.transmit_power_w);
                const double value = min_sinr(W, H, geometry_, config_);
                if (value >= current)
                {
                    s.W = std::move(W);
                    current = value;
                }
                else
                    ++report.rejected_steps;
                s.Z = z_at(s.W, s.F);
                return true;
            }

            bool boresight_step(AoState &s, double &current, AoReport &report) const
            {
                SurrogateBundle bundle = build_surrogates(model_, s.F, s.W, s.Z, config_, options_.psi_floor);
                const double cos_max = std::cos(config_.max_zenith_rad);
                std::optional<PointingMatrix> candidate;
                for (;;)
                {
                    const ConicProgram prog = build_boresight_program(bundle, config_);
                    const SolveOutcome out = solve(prog, options_.solver);
                    if (!out.ok())
                        return false;
                    PointingMatrix F = decode_pointing(prog, out.x);
                    clip_pointing(F, cos_max);
                    const int before = bundle.doublings;
                    const BacktrackResult r = backtrack_curvature(bundle, F, model_, s.W, s.Z, config_);
                    report.curvature_doublings += bundle.doublings - before;
                    if (r.accepted)
                    {
                        candidate = std::move(F);
                        break;
                    }
                    if (r.step_failed)
                    {
                        ++report.failed_boresight_steps;
                        break;
                    }
                }
                if (candidate)
                {
                    const double value = min_sinr_at(s.W, *candidate);
                    if (value >= current)
                    {
                        s.F = std::move(*candidate);
                        current = value;
                    }
                    else
                        ++report.rejected_steps;
                }
                s.Z = z_at(s.W, s.F);
                return true;
            }

        private:
            const ChannelModel &model_;
            const SystemConfig &config_;
            const AoOptions &options_;
            const ScenarioGeometry &geometry_;
        };
    }

    const char *to_string(Termination reason)
    {
        switch (reason)
        {
        case Termination::threshold:
            return "threshold";
        case Termination::max_iterations:
            return "max_iterations";
        case Termination::subproblem_failure:
            return "subproblem_failure";
        }
        return "unknown";
    }

    PointingMatrix normalize_pointing(const PointingMatrix &F)
    {
        PointingMatrix out = F;
        for (int n = 0; n < out.cols(); ++n)
        {
            const double norm = out.col(n).norm();
            if (norm > 1e-12)
                out.col(n) /= norm;
            else
                out.col(n) = Vec3::UnitX();
        }
        return out;
    }

    AoState initialize(const ChannelModel &model, const SystemConfig &config, std::uint64_t seed, const std::optional<PointingMatrix> &F0)
    {
        const auto &geometry = model.geometry();
        const int N = geometry.num_antennas(), M = geometry.num_groups();
        AoState s;
        s.F = F0 ? *F0 : fixed_pointing(N);
        if (s.F.cols() != N)
            throw std::invalid_argument("initialize: pointing matrix has the wrong number of columns");

        std::mt19937_64 rng(seed);
        std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
        s.W.resize(N, M);
        for (int m = 0; m < M; ++m)
            for (int n = 0; n < N; ++n)
            {
                const double re = normal(rng);
                const double im = normal(rng);
                s.W(n, m) = Complex(re, im);
            }
        s.W *= std::sqrt(config.transmit_power_w / s.W.squaredNorm());
        s.Z = optimal_z_all(s.W, model.evaluate(s.F), geometry, config);
        return s;
    }

    AoReport run_ao(const ChannelModel &model, const SystemConfig &config, std::uint64_t seed, const AoOptions &options)
    {
        config.validate();
        const auto start = Clock::now();
        Driver driver(model, config, options);

        AoReport report;
        AoState s = initialize(model, config, seed, options.pointing);
        double current = driver.min_sinr_at(s.W, s.F);
        report.min_sinr_history.push_back(current);

        int consecutive_failures = 0;
        bool failed = false;
        auto record = [&](bool ok) {
            if (ok)
                consecutive_failures = 0;
            else
            {
                ++report.failed_solves;
                if (++consecutive_failures >= 2)
                    failed = true;
            }
        };

        report.termination = Termination::max_iterations;
        for (int i = 0; i < config.max_iterations; ++i)
        {
            const auto iter_start = Clock::now();
            const double previous = current;
            record(driver.beamforming_step(s, current, report));
            if (!failed && options.optimize_pointing)
                record(driver.boresight_step(s, current, report));

            report.iterations = i + 1;
            report.min_sinr_history.push_back(current);
            report.iteration_ms.push_back(elapsed_ms(iter_start));
            if (failed)
            {
                report.termination = Termination::subproblem_failure;
                break;
            }
            if ((current - previous) / std::max(previous, 1e-12) < config.convergence_threshold)
            {
                report.termination = Termination::threshold;
                break;
            }
        }

        report.pre_normalization_min_sinr = current;
        if (options.optimize_pointing)
        {
            // f_n -> f_n / ||f_n|| scales every link of antenna n by ||f_n||^(-p); moving that factor
            // into row n of W leaves every h_k^T w_m unchanged and frees power, which is then restored.
            const PointingMatrix unit = normalize_pointing(s.F);
            for (int n = 0; n < s.F.cols(); ++n)
            {
                const double norm = s.F.col(n).norm();
                s.W.row(n) *= norm > 1e-12 ? std::pow(norm, config.directivity) : 0.0;
            }
            if (s.W.squaredNorm() > 0.0)
                s.W *= std::sqrt(config.transmit_power_w / s.W.squaredNorm());
            s.F = unit;
            double value = driver.min_sinr_at(s.W, s.F);
            report.post_normalization_min_sinr = value;
            s.Z = driver.z_at(s.W, s.F);
            AoReport scratch;
            driver.beamforming_step(s, value, scratch);
            report.final_min_sinr = value;
        }
        else
        {
            report.post_normalization_min_sinr = current;
            report.final_min_sinr = current;
        }

        for (double v : report.min_sinr_history)
            report.min_sinr_history_db.push_back(to_db(v));
        report.state = std::move(s);
        report.wall_ms = elapsed_ms(start);
        return report;
    }
}
