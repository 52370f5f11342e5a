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

#include "ramc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <Eigen/Eigenvalues>

#include "ramc/ao.hpp"
#include "ramc/objective.hpp"
#include "ramc/sca.hpp"

namespace ramc
{
    namespace
    {
        constexpr double deg = pi / 180.0;

        TinyInstance make_instance(std::string name, int N, double theta_max, std::vector<Vec3> users)
        {
            SystemConfig c = SystemConfig::defaults();
            c.num_antennas = N;
            c.group_sizes = {static_cast<int>(users.size())};
            c.max_zenith_rad = theta_max;
            std::vector<int> group_of(users.size(), 0);
            ScenarioGeometry g(upa_positions(c), std::move(users), std::move(group_of), 1);
            return {std::move(name), c, std::move(g)};
        }

        // Max-min gain |h_k^T w|^2 of two users over unit-norm w. The equalised value (AB - rho^2)/(A + B - 2 rho)
        // is evaluated through a projection and an aligned difference, which stay accurate near collinearity.
        double two_user_gain(const Eigen::Ref<const Eigen::VectorXcd> &a, const Eigen::Ref<const Eigen::VectorXcd> &b)
        {
            const double A = a.squaredNorm(), B = b.squaredNorm();
            if (A <= 0.0 || B <= 0.0)
                return 0.0;
            const Complex c = a.dot(b); // a^H b
            const double rho = std::abs(c);
            const double weaker = std::min(A, B);
            if (rho >= (1.0 - 1e-9) * weaker)
                return weaker;
            const double gram = A * (b - (c / A) * a).squaredNorm();
            const double spread = rho > 0.0 ? (a - (std::conj(c) / rho) * b).squaredNorm() : A + B;
            return std::clamp(gram / spread, 0.0, weaker);
        }

        struct Grid
        {
            std::vector<Vec3> points;
            std::vector<std::pair<int, int>> index; // (zenith step, azimuth step); (0, 0) is the +x axis
            std::vector<double> zenith;             // zenith per step, radians
            int azimuths = 0;

            int at(int zi, int aj) const
            {
                if (zi == 0)
                    return 0;
                return 1 + (zi - 1) * azimuths + ((aj % azimuths) + azimuths) % azimuths;
            }
        };

        Grid make_grid(double theta_max, double zenith_step_deg, double azimuth_step_deg)
        {
            Grid g;
            const double max_deg = theta_max / deg;
            for (int i = 0; i * zenith_step_deg <= max_deg + 1e-9; ++i)
                g.zenith.push_back(i * zenith_step_deg * deg);
            if (max_deg - (g.zenith.size() - 1) * zenith_step_deg > 1e-9)
                g.zenith.push_back(theta_max);
            g.azimuths = static_cast<int>(std::lround(360.0 / azimuth_step_deg));

            g.points.push_back(boresight_vector(0.0, 0.0));
            g.index.emplace_back(0, 0);
            for (std::size_t i = 1; i < g.zenith.size(); ++i)
                for (int j = 0; j < g.azimuths; ++j)
                {
                    g.points.push_back(boresight_vector(g.zenith[i], j * azimuth_step_deg * deg));
                    g.index.emplace_back(static_cast<int>(i), j);
                }
            return g;
        }

        // coeff[k * N + n][g]: channel of user k on antenna n when that antenna points at grid point g.
        std::vector<std::vector<Complex>> grid_coefficients(const TinyInstance &t, const Grid &grid)
        {
            const ChannelModel model(t.geometry, t.config);
            const int K = t.geometry.num_users(), N = t.geometry.num_antennas();
            std::vector<std::vector<Complex>> coeff(K * N, std::vector<Complex>(grid.points.size()));
            for (int k = 0; k < K; ++k)
                for (int n = 0; n < N; ++n)
                    for (std::size_t g = 0; g < grid.points.size(); ++g)
                        coeff[k * N + n][g] =
                            model.beta(k, n) * directional_factor(grid.points[g].dot(model.direction(k, n)), t.config.directivity);
            return coeff;
        }

        double pair_gain(const std::vector<std::vector<Complex>> &c, int K, std::size_t g0, std::size_t g1)
        {
            const Eigen::Vector2cd a(c[0][g0], c[1][g1]);
            if (K == 1)
                return a.squaredNorm();
            return two_user_gain(a, Eigen::Vector2cd(c[2][g0], c[3][g1]));
        }

        struct Best
        {
            double gain = -1.0;
            std::size_t g0 = 0, g1 = 0;
        };

        Best search_pairs(const std::vector<std::vector<Complex>> &coeff, int K, std::size_t points)
        {
            const unsigned workers = std::max(1u, std::min(16u, std::thread::hardware_concurrency()));
            std::vector<Best> partial(workers);
            {
                std::vector<std::jthread> pool;
                for (unsigned w = 0; w < workers; ++w)
                    pool.emplace_back([&, w] {
                        Best b;
                        for (std::size_t g0 = w; g0 < points; g0 += workers)
                            for (std::size_t g1 = 0; g1 < points; ++g1)
                            {
                                const double v = pair_gain(coeff, K, g0, g1);
                                if (v > b.gain)
                                    b = {v, g0, g1};
                            }
                        partial[w] = b;
                    });
            }
            Best best;
            for (const Best &b : partial)
                if (b.gain > best.gain || (b.gain == best.gain && std::tie(b.g0, b.g1) < std::tie(best.g0, best.g1)))
                    best = b;
            return best;
        }

        double value_at(const ChannelModel &model, const PointingMatrix &F, const SystemConfig &c)
        {
            return multicast_optimum(model.evaluate(F), c);
        }

        ScenarioGeometry random_geometry(std::mt19937_64 &rng, const SystemConfig &c)
        {
            std::uniform_real_distribution<double> dist(5.0, 60.0), ang(-1.0, 1.0), elev(-0.5, 0.3);
            std::vector<Vec3> users;
            std::vector<int> group_of;
            for (int m = 0; m < c.num_groups(); ++m)
                for (int i = 0; i < c.group_sizes[m]; ++i)
                {
                    const double r = dist(rng), a = ang(rng), e = elev(rng);
                    users.emplace_back(r * std::cos(e) * std::cos(a), r * std::cos(e) * std::sin(a), r * std::sin(e));
                    group_of.push_back(m);
                }
            return ScenarioGeometry(upa_positions(c), std::move(users), std::move(group_of), c.num_groups());
        }

        BeamformingMatrix random_beamforming(std::mt19937_64 &rng, int N, int M, double power)
        {
            std::normal_distribution<double> g(0.0, 1.0);
            BeamformingMatrix W(N, M);
            for (int m = 0; m < M; ++m)
                for (int n = 0; n < N; ++n)
                    W(n, m) = Complex(g(rng), g(rng));
            return W * std::sqrt(power / W.squaredNorm());
        }

        double min_psi(const ChannelModel &model, const PointingMatrix &F)
        {
            double m = std::numeric_limits<double>::infinity();
            for (int k = 0; k < model.geometry().num_users(); ++k)
                for (int n = 0; n < model.geometry().num_antennas(); ++n)
                    m = std::min(m, model.cos_incidence(F, k, n));
            return m;
        }

        // Unit feasible boresights, resampled until every incidence cosine reaches psi_min.
        PointingMatrix sample_pointing(std::mt19937_64 &rng, const ChannelModel &model, double theta_max, double psi_min)
        {
            std::uniform_real_distribution<double> u(0.0, 1.0), a(0.0, 2.0 * pi);
            const int N = model.geometry().num_antennas();
            PointingMatrix F(3, N);
            for (int attempt = 0; attempt < 100000; ++attempt)
            {
                for (int n = 0; n < N; ++n)
                    F.col(n) = boresight_vector(std::acos(1.0 - u(rng) * (1.0 - std::cos(theta_max))), a(rng));
                if (min_psi(model, F) >= psi_min)
                    return F;
            }
            throw std::runtime_error("sample_pointing: no admissible pointing found");
        }

        template <class Fn>
        Eigen::VectorXd central_gradient(Fn f, const PointingMatrix &F, double h)
        {
            Eigen::VectorXd g(F.size());
            for (Eigen::Index i = 0; i < F.size(); ++i)
            {
                PointingMatrix a = F, b = F;
                a.data()[i] += h;
                b.data()[i] -= h;
                g(i) = (f(a) - f(b)) / (2.0 * h);
            }
            return g;
        }

        template <class Grad>
        Eigen::MatrixXd central_jacobian(Grad grad, const PointingMatrix &F, double h)
        {
            Eigen::MatrixXd J(F.size(), F.size());
            for (Eigen::Index i = 0; i < F.size(); ++i)
            {
                PointingMatrix a = F, b = F;
                a.data()[i] += h;
                b.data()[i] -= h;
                J.col(i) = (grad(a) - grad(b)) / (2.0 * h);
            }
            return J;
        }

        double ratio(double err, double scale)
        {
            if (err == 0.0)
                return 0.0;
            return scale > 0.0 ? err / scale : std::numeric_limits<double>::infinity();
        }

        struct Tracker
        {
            SuiteCheck check;

            Tracker(std::string name, double tol, bool gating = true) { check = {std::move(name), 0, 0.0, tol, false, gating}; }
            void add(double v)
            {
                ++check.samples;
                check.worst = std::max(check.worst, std::isnan(v) ? std::numeric_limits<double>::infinity() : v);
            }
            SuiteCheck done()
            {
                check.pass = check.samples > 0 && check.worst <= check.tolerance;
                return check;
            }
        };

        double spectral_norm(const Eigen::MatrixXd &symmetric)
        {
            return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(symmetric, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
        }

        std::string fmt(const char *spec, double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, spec, v);
            return buf;
        }
    }

    std::vector<TinyInstance> tiny_instances()
    {
        std::vector<TinyInstance> out;
        out.push_back(make_instance("single_link_off_axis", 1, pi / 6.0, {20.0 * boresight_vector(50.0 * deg, 40.0 * deg)}));

        const Vec3 a = 25.0 * boresight_vector(35.0 * deg, 60.0 * deg);
        out.push_back(make_instance("mirrored_pair", 1, pi / 3.0, {a, Vec3(a.x(), -a.y(), a.z())}));

        out.push_back(make_instance("two_antennas", 2, pi / 4.0,
                                    {15.0 * boresight_vector(40.0 * deg, 20.0 * deg), 30.0 * boresight_vector(25.0 * deg, 200.0 * deg)}));
        return out;
    }

    double multicast_optimum(const ChannelMatrix &H, const SystemConfig &config)
    {
        const auto &h = H.coefficients;
        const double scale = config.transmit_power_w / config.noise_power_w;
        if (h.rows() == 1)
            return scale * h.squaredNorm();
        if (h.rows() != 2)
            throw std::invalid_argument("multicast_optimum: only one or two users are supported");
        return scale * two_user_gain(h.row(0).transpose(), h.row(1).transpose());
    }

    GridOptimum grid_search(const TinyInstance &t, double zenith_step_deg, double azimuth_step_deg)
    {
        const int N = t.geometry.num_antennas(), K = t.geometry.num_users();
        if (N > 2 || K > 2 || t.geometry.num_groups() != 1)
            throw std::invalid_argument("grid_search: needs N <= 2, K <= 2 and a single group");

        const Grid grid = make_grid(t.config.max_zenith_rad, zenith_step_deg, azimuth_step_deg);
        const auto coeff = grid_coefficients(t, grid);
        const std::size_t G = grid.points.size();

        std::vector<std::size_t> choice(N, 0);
        if (N == 1)
        {
            double best = -1.0;
            for (std::size_t g = 0; g < G; ++g)
            {
                const double A = std::norm(coeff[0][g]);
                const double v = K == 1 ? A : std::min(A, std::norm(coeff[1][g]));
                if (v > best)
                {
                    best = v;
                    choice[0] = g;
                }
            }
        }
        else
        {
            const Best b = search_pairs(coeff, K, G);
            choice = {b.g0, b.g1};
        }

        GridOptimum out;
        out.grid_points = G;
        out.pointing.resize(3, N);
        for (int n = 0; n < N; ++n)
            out.pointing.col(n) = grid.points[choice[n]];

        const ChannelModel model(t.geometry, t.config);
        out.value = value_at(model, out.pointing, t.config);

        const int Z = static_cast<int>(grid.zenith.size());
        for (int n = 0; n < N; ++n)
        {
            const auto [zi, aj] = grid.index[choice[n]];
            std::vector<int> neighbours;
            if (zi == 0)
                for (int j = 0; j < grid.azimuths && Z > 1; ++j)
                    neighbours.push_back(grid.at(1, j));
            else
            {
                neighbours.push_back(grid.at(zi - 1, aj));
                if (zi + 1 < Z)
                    neighbours.push_back(grid.at(zi + 1, aj));
                neighbours.push_back(grid.at(zi, aj - 1));
                neighbours.push_back(grid.at(zi, aj + 1));
            }
            for (int g : neighbours)
            {
                PointingMatrix F = out.pointing;
                F.col(n) = grid.points[g];
                out.resolution_bound = std::max(out.resolution_bound, std::abs(value_at(model, F, t.config) - out.value));
            }
        }
        return out;
    }

    OracleResult grid_search_joint(const TinyInstance &t, double tolerance, std::uint64_t seed)
    {
        const GridOptimum g = grid_search(t);
        const ChannelModel model(t.geometry, t.config);
        const AoReport r = run_ao(model, t.config, seed);

        OracleResult out;
        out.instance = t.name;
        out.oracle_value = g.value;
        out.optimizer_value = r.final_min_sinr;
        out.gap = (g.value - r.final_min_sinr) / std::max(g.value, 1e-12);
        out.resolution_bound = g.resolution_bound;
        out.tolerance = tolerance;
        out.inclusion = r.final_min_sinr <= g.value + g.resolution_bound;
        out.pass = std::abs(out.gap) <= tolerance && out.inclusion;
        return out;
    }

    bool SuiteReport::pass() const
    {
        return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const SuiteCheck &c) { return c.pass || !c.gating; });
    }

    SuiteReport finite_difference_suite(std::uint64_t seed, int instances)
    {
        constexpr double h = 1e-6, psi_min = 0.05;
        const double exponents[] = {1.0, 2.0, 2.5, 3.0, 5.0};
        Tracker gu("signal gradient", 1e-6), ga("interference gradient", 1e-6);
        Tracker hu("signal Hessian", 1e-4), ha("interference Hessian", 1e-4);
        Tracker flat("signal Hessian vanishes at p = 1", 1e-6), clamp("clamped links are flat", 1e-6);

        std::mt19937_64 rng(seed);
        for (int i = 0; i < instances; ++i)
        {
            SystemConfig c = SystemConfig::defaults();
            c.num_antennas = 2 + i % 3;
            c.group_sizes = i % 2 == 0 ? std::vector<int>{2, 1} : std::vector<int>{1, 1, 1};
            c.directivity = exponents[i % 5];
            const ChannelModel model(random_geometry(rng, c), c);
            const PointingMatrix F = sample_pointing(rng, model, c.max_zenith_rad, psi_min);
            const BeamformingMatrix W = random_beamforming(rng, c.num_antennas, c.num_groups(), c.transmit_power_w);
            const AuxiliaryVars Z = optimal_z_all(W, model.evaluate(F), model.geometry(), c);
            const int K = model.geometry().num_users();

            for (int k = 0; k < K; ++k)
            {
                const Eigen::VectorXd g = grad_u(model, F, W, Z, k);
                const Eigen::VectorXd gn = central_gradient([&](const PointingMatrix &X) { return signal_term(model, X, W, Z, k); }, F, h);
                gu.add(ratio((g - gn).norm(), g.norm()));
                const Eigen::MatrixXd H = hessian_u(model, F, W, Z, k);
                const Eigen::MatrixXd Hn = central_jacobian([&](const PointingMatrix &X) { return grad_u(model, X, W, Z, k); }, F, h);
                hu.add(ratio((H - Hn).norm(), std::max(H.norm(), g.norm())));
                if (c.directivity == 1.0)
                    flat.add(H.norm() + ratio(Hn.norm(), g.norm()));

                for (int j = 0; j < c.num_groups(); ++j)
                {
                    if (j == model.geometry().group_of(k))
                        continue;
                    const Eigen::VectorXd a = grad_a(model, F, W, k, j);
                    const Eigen::VectorXd an = central_gradient([&](const PointingMatrix &X) { return interference_term(model, X, W, k, j); }, F, h);
                    ga.add(ratio((a - an).norm(), a.norm()));
                    const Eigen::MatrixXd Ha = hessian_a(model, F, W, k, j);
                    const Eigen::MatrixXd Han = central_jacobian([&](const PointingMatrix &X) { return grad_a(model, X, W, k, j); }, F, h);
                    ha.add(ratio((Ha - Han).norm(), std::max(Ha.norm(), a.norm())));
                }
            }

            // Antenna 0 turned away from user 0: its gradient block must vanish both ways.
            PointingMatrix B = F;
            const Vec3 away = -model.direction(0, 0);
            B.col(0) = (away - 0.3 * model.direction(0, 0)).normalized();
            const int other = (model.geometry().group_of(0) + 1) % c.num_groups();
            const Eigen::VectorXd g = grad_u(model, B, W, Z, 0);
            const Eigen::VectorXd gn = central_gradient([&](const PointingMatrix &X) { return signal_term(model, X, W, Z, 0); }, B, h);
            const Eigen::VectorXd a = grad_a(model, B, W, 0, other);
            const Eigen::VectorXd an = central_gradient([&](const PointingMatrix &X) { return interference_term(model, X, W, 0, other); }, B, h);
            const double scale = std::max(g.norm(), a.norm());
            clamp.add(g.head<3>().norm() + a.head<3>().norm() + ratio(gn.head<3>().norm() + an.head<3>().norm(), scale));
        }

        return {"finite differences", {gu.done(), ga.done(), hu.done(), ha.done(), flat.done(), clamp.done()}};
    }

    SuiteReport lipschitz_sampling_suite(std::uint64_t seed, int samples, double psi_floor)
    {
        SuiteReport report{"Lipschitz sampling", {}};
        std::mt19937_64 rng(seed);
        const SystemConfig base = SystemConfig::defaults();
        const ScenarioGeometry geometry = arc_user_layout(base, 50.0, 10.0, 2.0 * pi / 3.0);
        for (double p : {1.0, 2.0, 3.0, 5.0})
        {
            SystemConfig c = base;
            c.directivity = p;
            const ChannelModel model(geometry, c);
            const BeamformingMatrix W = random_beamforming(rng, c.num_antennas, c.num_groups(), c.transmit_power_w);
            const AuxiliaryVars Z = optimal_z_all(W, model.evaluate(fixed_pointing(c.num_antennas)), geometry, c);
            Tracker signal("signal Hessian / bound, p = " + fmt("%g", p), 1.0 + 1e-9);
            Tracker inter("interference Hessian / bound, p = " + fmt("%g", p), 1.0 + 1e-9);
            Tracker rows("interference row sum / bound, p = " + fmt("%g", p), 1.0 + 1e-9, false);

            for (int s = 0; s < samples; ++s)
            {
                const PointingMatrix F = sample_pointing(rng, model, c.max_zenith_rad, psi_floor);
                for (int k = 0; k < geometry.num_users(); ++k)
                {
                    const Eigen::MatrixXd H = hessian_u(model, F, W, Z, k);
                    double worst = 0.0;
                    for (int n = 0; n < c.num_antennas; ++n)
                        worst = std::max(worst, spectral_norm(H.block(3 * n, 3 * n, 3, 3)));
                    signal.add(ratio(worst, lipschitz_signal(model, F, W, Z, k, psi_floor)));

                    for (int j = 0; j < c.num_groups(); ++j)
                    {
                        if (j == geometry.group_of(k))
                            continue;
                        const double bound = lipschitz_interference(model, F, W, k, j, psi_floor);
                        inter.add(ratio(spectral_norm(hessian_a(model, F, W, k, j)), bound));
                        rows.add(ratio(hessian_block_row_sum(model, F, W, k, j), bound));
                    }
                }
            }
            report.checks.push_back(signal.done());
            report.checks.push_back(inter.done());
            report.checks.push_back(rows.done());
        }
        return report;
    }

    std::string format_oracle_table(const std::vector<OracleResult> &results)
    {
        std::ostringstream os;
        os << "instance               oracle        optimizer     gap        bound         result\n";
        for (const auto &r : results)
        {
            char line[256];
            std::snprintf(line, sizeof line, "%-22s %-13.6g %-13.6g %-+10.3e %-13.4g %s\n", r.instance.c_str(), r.oracle_value,
                          r.optimizer_value, r.gap, r.resolution_bound, r.pass ? "PASS" : "FAIL");
            os << line;
        }
        return os.str();
    }

    std::string format_suite(const SuiteReport &report)
    {
        std::ostringstream os;
        os << report.name << "\n";
        for (const auto &c : report.checks)
        {
            char line[256];
            std::snprintf(line, sizeof line, "  %-44s n=%-5d worst=%-11.3e tol=%-9.2e %s\n", c.name.c_str(), c.samples, c.worst,
                          c.tolerance, c.pass ? "PASS" : c.gating ? "FAIL" : "info");
            os << line;
        }
        return os.str();
    }
}
