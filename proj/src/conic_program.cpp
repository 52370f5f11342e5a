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

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "ramc/conic.hpp"
#include "standard_form.hpp"

namespace ramc
{
    namespace
    {
        void check_width(const Eigen::VectorXd &v, int n, const std::string &label)
        {
            if (v.size() != n)
                throw std::invalid_argument("ConicProgram: constraint '" + label + "' has the wrong number of columns");
        }

        void append_sparse(std::ostringstream &out, const Eigen::Ref<const Eigen::VectorXd> &coef)
        {
            char buf[64];
            bool first = true;
            for (Eigen::Index i = 0; i < coef.size(); ++i)
            {
                if (coef(i) == 0.0)
                    continue;
                std::snprintf(buf, sizeof buf, "%s%ld:%.17g", first ? "" : " ", static_cast<long>(i), coef(i));
                out << buf;
                first = false;
            }
        }

        void append_number(std::ostringstream &out, double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << buf;
        }
    }

    const VariableSlice &ConicProgram::slice(const std::string &name) const
    {
        for (const auto &s : slices)
            if (s.name == name)
                return s;
        throw std::out_of_range("ConicProgram: no variable slice named '" + name + "'");
    }

    void ConicProgram::add_linear(std::string label, AffineScalar lhs)
    {
        check_width(lhs.coef, num_vars, label);
        constraints.push_back({std::move(label), LinearInequality{std::move(lhs)}});
    }

    void ConicProgram::add_soc(std::string label, AffineMap body, AffineScalar bound)
    {
        check_width(bound.coef, num_vars, label);
        if (body.coef.cols() != num_vars || body.offset.size() != body.coef.rows())
            throw std::invalid_argument("ConicProgram: cone '" + label + "' has a malformed body");
        constraints.push_back({std::move(label), SecondOrderCone{std::move(body), std::move(bound)}});
    }

    void ConicProgram::add_rotated(std::string label, AffineMap body, AffineScalar u, AffineScalar v)
    {
        check_width(u.coef, num_vars, label);
        check_width(v.coef, num_vars, label);
        if (body.coef.cols() != num_vars || body.offset.size() != body.coef.rows())
            throw std::invalid_argument("ConicProgram: cone '" + label + "' has a malformed body");
        constraints.push_back({std::move(label), RotatedCone{std::move(body), std::move(u), std::move(v)}});
    }

    std::vector<double> ConicProgram::slacks(const Eigen::VectorXd &x) const
    {
        std::vector<double> out;
        out.reserve(constraints.size());
        for (const auto &con : constraints)
        {
            if (const auto *lin = std::get_if<LinearInequality>(&con.cone))
                out.push_back(-lin->lhs(x));
            else if (const auto *soc = std::get_if<SecondOrderCone>(&con.cone))
                out.push_back(soc->bound(x) - soc->body(x).norm());
            else
            {
                const auto &rot = std::get<RotatedCone>(con.cone);
                out.push_back(2.0 * rot.u(x) * rot.v(x) - rot.body(x).squaredNorm());
            }
        }
        return out;
    }

    double ConicProgram::max_violation(const Eigen::VectorXd &x) const
    {
        const detail::StandardForm form = detail::lower(*this);
        return detail::cone_violation(form, form.h - form.G * x);
    }

    std::string ConicProgram::to_text() const
    {
        std::ostringstream out;
        out << "conic-program v1\n";
        out << "vars " << num_vars << " maximize " << epigraph_index << " epigraph_scale ";
        append_number(out, epigraph_scale);
        out << " variable_scale ";
        append_number(out, variable_scale);
        out << '\n';
        for (const auto &s : slices)
            out << "slice " << s.name << ' ' << s.offset << ' ' << s.length << '\n';

        for (const auto &con : constraints)
        {
            if (const auto *lin = std::get_if<LinearInequality>(&con.cone))
            {
                out << "lin " << con.label << " | ";
                append_sparse(out, lin->lhs.coef);
                out << " | ";
                append_number(out, lin->lhs.offset);
            }
            else if (const auto *soc = std::get_if<SecondOrderCone>(&con.cone))
            {
                out << "soc " << con.label << " | ";
                append_sparse(out, soc->bound.coef);
                out << " | ";
                append_number(out, soc->bound.offset);
                for (Eigen::Index r = 0; r < soc->body.rows(); ++r)
                {
                    out << " | ";
                    append_sparse(out, soc->body.coef.row(r).transpose());
                    out << " | ";
                    append_number(out, soc->body.offset(r));
                }
            }
            else
            {
                const auto &rot = std::get<RotatedCone>(con.cone);
                out << "rsoc " << con.label << " | ";
                append_sparse(out, rot.u.coef);
                out << " | ";
                append_number(out, rot.u.offset);
                out << " | ";
                append_sparse(out, rot.v.coef);
                out << " | ";
                append_number(out, rot.v.offset);
                for (Eigen::Index r = 0; r < rot.body.rows(); ++r)
                {
                    out << " | ";
                    append_sparse(out, rot.body.coef.row(r).transpose());
                    out << " | ";
                    append_number(out, rot.body.offset(r));
                }
            }
            out << '\n';
        }
        return out.str();
    }

    const char *to_string(SolveStatus status)
    {
        switch (status)
        {
        case SolveStatus::optimal:
            return "optimal";
        case SolveStatus::near_optimal:
            return "near_optimal";
        case SolveStatus::infeasible:
            return "infeasible";
        case SolveStatus::numerical_failure:
            return "numerical_failure";
        }
        return "unknown";
    }

    namespace detail
    {
        StandardForm lower(const ConicProgram &program)
        {
            const int n = program.num_vars;
            if (program.epigraph_index < 0 || program.epigraph_index >= n)
                throw std::invalid_argument("ConicProgram: epigraph index out of range");

            int orthant = 0, rows = 0;
            std::vector<int> soc_dims;
            for (const auto &con : program.constraints)
            {
                if (std::holds_alternative<LinearInequality>(con.cone))
                    ++orthant;
                else if (const auto *soc = std::get_if<SecondOrderCone>(&con.cone))
                    soc_dims.push_back(static_cast<int>(soc->body.rows()) + 1);
                else
                    soc_dims.push_back(static_cast<int>(std::get<RotatedCone>(con.cone).body.rows()) + 2);
            }
            rows = orthant;
            for (int q : soc_dims)
                rows += q;

            StandardForm form;
            form.G = Eigen::MatrixXd::Zero(rows, n);
            form.h = Eigen::VectorXd::Zero(rows);
            form.c = Eigen::VectorXd::Zero(n);
            form.c(program.epigraph_index) = -1.0;
            form.orthant = orthant;
            form.soc_dims = std::move(soc_dims);

            int lin_row = 0, cone_row = orthant;
            const double root2 = std::sqrt(2.0);
            for (const auto &con : program.constraints)
            {
                if (const auto *lin = std::get_if<LinearInequality>(&con.cone))
                {
                    // a'x + b <= 0  ->  a'x + s = -b
                    form.G.row(lin_row) = lin->lhs.coef.transpose();
                    form.h(lin_row) = -lin->lhs.offset;
                    ++lin_row;
                }
                else if (const auto *soc = std::get_if<SecondOrderCone>(&con.cone))
                {
                    // s = (c'x + d, A x + b)
                    const auto r = soc->body.rows();
                    form.G.row(cone_row) = -soc->bound.coef.transpose();
                    form.h(cone_row) = soc->bound.offset;
                    form.G.block(cone_row + 1, 0, r, n) = -soc->body.coef;
                    form.h.segment(cone_row + 1, r) = soc->body.offset;
                    cone_row += static_cast<int>(r) + 1;
                }
                else
                {
                    // ||x||^2 <= 2uv  <=>  ||(sqrt2 x, u - v)|| <= u + v
                    const auto &rot = std::get<RotatedCone>(con.cone);
                    const auto r = rot.body.rows();
                    form.G.row(cone_row) = -(rot.u.coef + rot.v.coef).transpose();
                    form.h(cone_row) = rot.u.offset + rot.v.offset;
                    form.G.block(cone_row + 1, 0, r, n) = -root2 * rot.body.coef;
                    form.h.segment(cone_row + 1, r) = root2 * rot.body.offset;
                    form.G.row(cone_row + 1 + r) = -(rot.u.coef - rot.v.coef).transpose();
                    form.h(cone_row + 1 + r) = rot.u.offset - rot.v.offset;
                    cone_row += static_cast<int>(r) + 2;
                }
            }
            return form;
        }

        double cone_violation(const StandardForm &form, const Eigen::VectorXd &s)
        {
            double worst = 0.0;
            for (int i = 0; i < form.orthant; ++i)
                worst = std::max(worst, -s(i));
            int start = form.orthant;
            for (int q : form.soc_dims)
            {
                worst = std::max(worst, s.segment(start + 1, q - 1).norm() - s(start));
                start += q;
            }
            return worst;
        }
    }
}
