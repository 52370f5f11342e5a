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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "ramc/conic.hpp"
#include "standard_form.hpp"

namespace ramc
{
    namespace
    {
        using Eigen::MatrixXd;
        using Eigen::VectorXd;
        using detail::StandardForm;

        constexpr double inf = std::numeric_limits<double>::infinity();

        // Jordan-algebra helpers on R^l_+ x Q^{q_1} x ... x Q^{q_r}.
        class ConeAlgebra
        {
        public:
            explicit ConeAlgebra(const StandardForm &form) : l_(form.orthant), dims_(form.soc_dims)
            {
                int start = l_;
                for (int q : dims_)
                {
                    starts_.push_back(start);
                    start += q;
                }
                m_ = start;
            }

            VectorXd identity() const
            {
                VectorXd e = VectorXd::Zero(m_);
                e.head(l_).setOnes();
                for (int s : starts_)
                    e(s) = 1.0;
                return e;
            }

            VectorXd product(const VectorXd &u, const VectorXd &v) const
            {
                VectorXd out(m_);
                out.head(l_) = u.head(l_).cwiseProduct(v.head(l_));
                for (std::size_t b = 0; b < dims_.size(); ++b)
                {
                    const int s = starts_[b], q = dims_[b];
                    out(s) = u.segment(s, q).dot(v.segment(s, q));
                    out.segment(s + 1, q - 1) = u(s) * v.segment(s + 1, q - 1) + v(s) * u.segment(s + 1, q - 1);
                }
                return out;
            }

            // x with lambda o x = v
            VectorXd divide(const VectorXd &lambda, const VectorXd &v) const
            {
                VectorXd out(m_);
                out.head(l_) = v.head(l_).cwiseQuotient(lambda.head(l_));
                for (std::size_t b = 0; b < dims_.size(); ++b)
                {
                    const int s = starts_[b], q = dims_[b];
                    const double l0 = lambda(s);
                    const auto l1 = lambda.segment(s + 1, q - 1);
                    const auto v1 = v.segment(s + 1, q - 1);
                    const double det = l0 * l0 - l1.squaredNorm();
                    const double x0 = (l0 * v(s) - l1.dot(v1)) / det;
                    out(s) = x0;
                    out.segment(s + 1, q - 1) = (v1 - x0 * l1) / l0;
                }
                return out;
            }

            // inf { a : u + a e in cone }
            double shift_to_boundary(const VectorXd &u) const
            {
                double a = -inf;
                if (l_ > 0)
                    a = std::max(a, -u.head(l_).minCoeff());
                for (std::size_t b = 0; b < dims_.size(); ++b)
                {
                    const int s = starts_[b], q = dims_[b];
                    a = std::max(a, u.segment(s + 1, q - 1).norm() - u(s));
                }
                return a;
            }

            // sup { a >= 0 : u + a du in cone } for u in the interior.
            double max_step(const VectorXd &u, const VectorXd &du) const
            {
                double step = inf;
                for (int i = 0; i < l_; ++i)
                    if (du(i) < 0.0)
                        step = std::min(step, -u(i) / du(i));
                for (std::size_t b = 0; b < dims_.size(); ++b)
                {
                    const int s = starts_[b], q = dims_[b];
                    // det(u + a du) = A a^2 + 2 B a + C, C > 0
                    const double A = du(s) * du(s) - du.segment(s + 1, q - 1).squaredNorm();
                    const double B = u(s) * du(s) - u.segment(s + 1, q - 1).dot(du.segment(s + 1, q - 1));
                    const double C = u(s) * u(s) - u.segment(s + 1, q - 1).squaredNorm();
                    step = std::min(step, smallest_positive_root(A, B, C));
                    if (du(s) < 0.0)
                        step = std::min(step, -u(s) / du(s));
                }
                return step;
            }

            int rows() const { return m_; }
            int orthant() const { return l_; }
            const std::vector<int> &dims() const { return dims_; }
            const std::vector<int> &starts() const { return starts_; }

        private:
            static double smallest_positive_root(double A, double B, double C)
            {
                if (C <= 0.0)
                    return 0.0;
                if (A == 0.0)
                    return B < 0.0 ? -C / (2.0 * B) : inf;
                const double disc = B * B - A * C;
                if (disc < 0.0)
                    return inf;
                const double q = -(B + std::copysign(std::sqrt(disc), B));
                double best = inf;
                for (double r : {q / A, q != 0.0 ? C / q : inf})
                    if (r > 0.0)
                        best = std::min(best, r);
                return best;
            }

            int l_;
            std::vector<int> dims_;
            std::vector<int> starts_;
            int m_ = 0;
        };

        // Nesterov-Todd scaling W (symmetric) with W z = W^{-1} s = lambda.
        class NtScaling
        {
        public:
            NtScaling(const ConeAlgebra &cones, const VectorXd &s, const VectorXd &z) : cones_(&cones)
            {
                const int l = cones.orthant();
                diag_ = (s.head(l).cwiseQuotient(z.head(l))).cwiseSqrt();
                for (std::size_t b = 0; b < cones.dims().size(); ++b)
                {
                    const int st = cones.starts()[b], q = cones.dims()[b];
                    const VectorXd sb = s.segment(st, q), zb = z.segment(st, q);
                    const double s_det = sb(0) * sb(0) - sb.tail(q - 1).squaredNorm();
                    const double z_det = zb(0) * zb(0) - zb.tail(q - 1).squaredNorm();
                    if (!(s_det > 0.0) || !(z_det > 0.0))
                    {
                        valid_ = false;
                        return;
                    }
                    const double s_norm = std::sqrt(s_det), z_norm = std::sqrt(z_det);
                    const VectorXd s_bar = sb / s_norm;
                    VectorXd z_bar = zb / z_norm;
                    const double gamma = std::sqrt(0.5 * (1.0 + s_bar.dot(z_bar)));
                    z_bar.tail(q - 1) *= -1.0;
                    const VectorXd w_bar = (s_bar + z_bar) / (2.0 * gamma);
                    // Symmetric square root of 2 w_bar w_bar' - J.
                    VectorXd w = w_bar;
                    w(0) += 1.0;
                    w /= std::sqrt(2.0 * (w_bar(0) + 1.0));
                    betas_.push_back(std::sqrt(s_norm / z_norm));
                    w_.push_back(std::move(w));
                }
                valid_ = diag_.allFinite();
            }

            bool valid() const { return valid_; }

            VectorXd apply(const VectorXd &v) const { return apply_impl(v, false); }
            VectorXd apply_inverse(const VectorXd &v) const { return apply_impl(v, true); }

            MatrixXd apply_inverse(const MatrixXd &V) const
            {
                MatrixXd out(V.rows(), V.cols());
                for (Eigen::Index j = 0; j < V.cols(); ++j)
                    out.col(j) = apply_impl(V.col(j), true);
                return out;
            }

        private:
            VectorXd apply_impl(const VectorXd &v, bool inverse) const
            {
                VectorXd out(v.size());
                const int l = cones_->orthant();
                if (inverse)
                    out.head(l) = v.head(l).cwiseQuotient(diag_);
                else
                    out.head(l) = v.head(l).cwiseProduct(diag_);
                for (std::size_t b = 0; b < w_.size(); ++b)
                {
                    const int st = cones_->starts()[b], q = cones_->dims()[b];
                    const VectorXd &w = w_[b];
                    VectorXd jv = v.segment(st, q);
                    jv.tail(q - 1) *= -1.0;
                    VectorXd r;
                    if (!inverse)
                        r = betas_[b] * (2.0 * w.dot(v.segment(st, q)) * w - jv); // beta (2 w w' - J) v
                    else
                    {
                        VectorXd jw = w;
                        jw.tail(q - 1) *= -1.0;
                        r = (2.0 * jw.dot(v.segment(st, q)) * jw - jv) / betas_[b]; // (2 Jw w'J - J) v / beta
                    }
                    out.segment(st, q) = r;
                }
                return out;
            }

            const ConeAlgebra *cones_;
            VectorXd diag_;
            std::vector<double> betas_;
            std::vector<VectorXd> w_;
            bool valid_ = true;
        };

        // Solves [0 G'; G -W^2] [dx; dz] = [bx; bz] through the normal equations.
        class KktSolver
        {
        public:
            KktSolver(const MatrixXd &G, const NtScaling &W) : G_(&G), W_(&W)
            {
                scaled_G_ = W.apply_inverse(G);
                MatrixXd normal = scaled_G_.transpose() * scaled_G_;
                const double base = std::max(1.0, normal.diagonal().cwiseAbs().maxCoeff());
                double reg = 0.0;
                for (int attempt = 0; attempt < 8; ++attempt)
                {
                    MatrixXd shifted = normal;
                    shifted.diagonal().array() += reg;
                    llt_.compute(shifted);
                    if (llt_.info() == Eigen::Success)
                    {
                        ok_ = true;
                        return;
                    }
                    reg = reg == 0.0 ? 1e-14 * base : reg * 100.0;
                }
            }

            bool ok() const { return ok_; }

            void solve(const VectorXd &bx, const VectorXd &bz, VectorXd &dx, VectorXd &dz) const
            {
                solve_once(bx, bz, dx, dz);
                // One round of iterative refinement on the full system.
                const VectorXd rx = bx - G_->transpose() * dz;
                const VectorXd rz = bz - (*G_ * dx - W_->apply(W_->apply(dz)));
                VectorXd cx, cz;
                solve_once(rx, rz, cx, cz);
                dx += cx;
                dz += cz;
            }

        private:
            void solve_once(const VectorXd &bx, const VectorXd &bz, VectorXd &dx, VectorXd &dz) const
            {
                const VectorXd wbz = W_->apply_inverse(bz);
                dx = llt_.solve(bx + scaled_G_.transpose() * wbz);
                dz = W_->apply_inverse(VectorXd(scaled_G_ * dx - wbz));
            }

            const MatrixXd *G_;
            const NtScaling *W_;
            MatrixXd scaled_G_;
            Eigen::LLT<MatrixXd> llt_;
            bool ok_ = false;
        };

        struct Iterate
        {
            VectorXd x, s, z;
            double tau = 1.0, kappa = 1.0;
        };

        struct Metrics
        {
            double pres = inf, dres = inf, gap = inf, relgap = inf, pcost = 0.0, dcost = 0.0;
        };
    }

    SolveOutcome solve(const ConicProgram &program, const SolverSettings &settings)
    {
        const auto t0 = std::chrono::steady_clock::now();
        SolveOutcome out;
        auto finish = [&](SolveOutcome &result)
        {
            result.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            return result;
        };

        const StandardForm form = detail::lower(program);
        const MatrixXd &G = form.G;
        const VectorXd &h = form.h, &c = form.c;
        const ConeAlgebra cones(form);
        const int n = program.num_vars;
        const VectorXd e = cones.identity();
        const double degree = form.degree();
        const double resx0 = std::max(1.0, c.norm()), resz0 = std::max(1.0, h.norm());

        // Starting point: least-squares primal, least-norm dual, each pushed into the cone.
        Iterate it;
        {
            const Eigen::ColPivHouseholderQR<MatrixXd> qr(G);
            if (qr.rank() < n)
            {
                out.status = SolveStatus::numerical_failure;
                out.x = VectorXd::Zero(n);
                return finish(out);
            }
            it.x = qr.solve(h);
            it.s = h - G * it.x;
            const Eigen::LDLT<MatrixXd> gram(G.transpose() * G);
            it.z = -G * gram.solve(c);
            for (VectorXd *v : {&it.s, &it.z})
            {
                const double a = cones.shift_to_boundary(*v);
                if (a >= -1e-8 * std::max(1.0, v->norm()))
                    *v += (1.0 + std::max(a, 0.0)) * e;
            }
        }

        Iterate best = it;
        Metrics best_metrics;
        bool converged = false, infeasible = false;

        auto evaluate = [&](const Iterate &p)
        {
            Metrics mtr;
            const VectorXd rx = G.transpose() * p.z + c * p.tau;
            const VectorXd rz = p.s + G * p.x - h * p.tau;
            mtr.pres = rz.norm() / p.tau / resz0;
            mtr.dres = rx.norm() / p.tau / resx0;
            mtr.gap = p.s.dot(p.z) / (p.tau * p.tau);
            mtr.pcost = c.dot(p.x) / p.tau;
            mtr.dcost = -h.dot(p.z) / p.tau;
            if (mtr.pcost < 0.0)
                mtr.relgap = mtr.gap / -mtr.pcost;
            else if (mtr.dcost > 0.0)
                mtr.relgap = mtr.gap / mtr.dcost;
            return mtr;
        };
        auto quality = [](const Metrics &m)
        { return std::max({m.pres, m.dres, std::min(m.gap, m.relgap)}); };

        int iter = 0;
        for (; iter <= settings.max_iterations; ++iter)
        {
            const Metrics mtr = evaluate(it);
            if (quality(mtr) < quality(best_metrics))
            {
                best = it;
                best_metrics = mtr;
            }
            if (mtr.pres <= settings.feasibility_tol && mtr.dres <= settings.feasibility_tol &&
                (mtr.gap <= settings.absolute_gap_tol || mtr.relgap <= settings.relative_gap_tol))
            {
                converged = true;
                best = it;
                best_metrics = mtr;
                break;
            }
            const double hz = h.dot(it.z);
            if (hz < 0.0 && (G.transpose() * it.z).norm() / -hz <= settings.feasibility_tol)
            {
                infeasible = true;
                break;
            }
            const double cx = c.dot(it.x);
            if (cx < 0.0 && (G * it.x + it.s).norm() / -cx <= settings.feasibility_tol)
                break; // unbounded: no dual-feasible point

            if (iter == settings.max_iterations)
                break;

            const NtScaling W(cones, it.s, it.z);
            if (!W.valid())
                break;
            const KktSolver kkt(G, W);
            if (!kkt.ok())
                break;

            const VectorXd lambda = W.apply(it.z);
            const VectorXd lambda_sq = cones.product(lambda, lambda);
            const double mu = (it.s.dot(it.z) + it.tau * it.kappa) / (degree + 1.0);

            const VectorXd rx = G.transpose() * it.z + c * it.tau;
            const VectorXd rz = it.s + G * it.x - h * it.tau;
            const double rt = it.kappa + c.dot(it.x) + h.dot(it.z);

            VectorXd x2, z2;
            kkt.solve(-c, h, x2, z2);
            const double tau_den = c.dot(x2) + h.dot(z2) - it.kappa / it.tau;

            struct Direction
            {
                VectorXd dx, dz, ds;
                double dtau = 0.0, dkappa = 0.0;
            };
            auto direction = [&](double sigma, const VectorXd &ds_rhs, double dkappa_rhs)
            {
                Direction d;
                const VectorXd xi = cones.divide(lambda, ds_rhs);
                const VectorXd wxi = W.apply(xi);
                VectorXd x1, z1;
                kkt.solve(-(1.0 - sigma) * rx, -(1.0 - sigma) * rz - wxi, x1, z1);
                d.dtau = (-(1.0 - sigma) * rt - dkappa_rhs / it.tau - c.dot(x1) - h.dot(z1)) / tau_den;
                d.dx = x1 + d.dtau * x2;
                d.dz = z1 + d.dtau * z2;
                d.ds = W.apply(VectorXd(xi - W.apply(d.dz)));
                d.dkappa = (dkappa_rhs - it.kappa * d.dtau) / it.tau;
                return d;
            };
            auto step_to_boundary = [&](const Direction &d)
            {
                double a = std::min(cones.max_step(it.s, d.ds), cones.max_step(it.z, d.dz));
                if (d.dtau < 0.0)
                    a = std::min(a, -it.tau / d.dtau);
                if (d.dkappa < 0.0)
                    a = std::min(a, -it.kappa / d.dkappa);
                return a;
            };

            // Predictor.
            const Direction aff = direction(0.0, -lambda_sq, -it.tau * it.kappa);
            const double alpha_aff = std::min(1.0, step_to_boundary(aff));
            const double sigma = std::pow(1.0 - alpha_aff, 3);

            // Corrector with the Mehrotra second-order term.
            const VectorXd cross = cones.product(W.apply_inverse(aff.ds), W.apply(aff.dz));
            const VectorXd ds_rhs = -lambda_sq + sigma * mu * e - cross;
            const double dk_rhs = -it.tau * it.kappa + sigma * mu - aff.dtau * aff.dkappa;
            const Direction d = direction(sigma, ds_rhs, dk_rhs);
            const double alpha = std::min(1.0, settings.step_fraction * step_to_boundary(d));
            if (!(alpha > 0.0) || !d.dx.allFinite())
                break;

            it.x += alpha * d.dx;
            it.s += alpha * d.ds;
            it.z += alpha * d.dz;
            it.tau += alpha * d.dtau;
            it.kappa += alpha * d.dkappa;
        }

        out.iterations = iter;
        out.x = best.x / best.tau;
        out.objective = out.x(program.epigraph_index);
        out.primal_residual = best_metrics.pres;
        out.dual_residual = best_metrics.dres;
        out.gap = std::min(best_metrics.gap, best_metrics.relgap);
        out.max_violation = detail::cone_violation(form, h - G * out.x);

        if (infeasible)
            out.status = SolveStatus::infeasible;
        else if (converged && out.max_violation <= settings.accept_violation)
            out.status = SolveStatus::optimal;
        else if (best_metrics.pres <= 1e-6 && best_metrics.dres <= 1e-6 && out.gap <= 1e-6 && out.max_violation <= 1e-6)
            out.status = SolveStatus::near_optimal;
        else
            out.status = SolveStatus::numerical_failure;
        if (!out.x.allFinite())
            out.status = SolveStatus::numerical_failure;
        return finish(out);
    }
}
