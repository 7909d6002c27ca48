// SPDX-License-Identifier: Apache-2.0
//
// symprec - symbol-level precoding laboratory for the MISO downlink
// Copyright (C) 2026 The symprec authors
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

#include "symprec/downlink_precoders.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace symprec
{
    namespace
    {
        struct PairSystem
        {
            XiBlock xi;
            cplx qk; // conj(d_k) d_j
            cplx qj; // conj(d_j) d_k
            double scale;
        };

        struct PairEval
        {
            Eigen::Vector2d residual;
            Eigen::Vector2d amplitude;
            Eigen::Matrix2d jacobian;
        };

        struct Root
        {
            Eigen::Vector2d x;
            double residual;
            Eigen::Vector2d amplitude;

            double worst() const { return amplitude.minCoeff(); }
        };

        PairEval evaluate(const PairSystem &sys, const Eigen::Vector2d &x)
        {
            const double c = std::cos(x(0));
            const double s = std::sin(x(0));
            const cplx ek = std::polar(1.0, -x(1)) * sys.qk;
            const cplx ej = std::polar(1.0, x(1)) * sys.qj;
            const cplx i(0.0, 1.0);

            const cplx uk = sys.xi.kk * c - sys.xi.kj * s * ek;
            const cplx uj = sys.xi.jk * s * ej + sys.xi.jj * c;
            const cplx uk_a = -sys.xi.kk * s - sys.xi.kj * c * ek;
            const cplx uk_d = i * sys.xi.kj * s * ek;
            const cplx uj_a = sys.xi.jk * c * ej - sys.xi.jj * s;
            const cplx uj_d = i * sys.xi.jk * s * ej;

            PairEval e;
            e.residual << uk.imag(), uj.imag();
            e.amplitude << uk.real(), uj.real();
            e.jacobian << uk_a.imag(), uk_d.imag(), uj_a.imag(), uj_d.imag();
            return e;
        }

        // Damped Gauss-Newton with a pseudo-inverse step; works on curves of roots too
        Root project(const PairSystem &sys, Eigen::Vector2d x, int max_steps)
        {
            PairEval e = evaluate(sys, x);
            double norm = e.residual.norm();
            for (int step = 0; step < max_steps && norm > 1e-15 * sys.scale; ++step)
            {
                Eigen::JacobiSVD<Eigen::Matrix2d> svd(e.jacobian, Eigen::ComputeFullU | Eigen::ComputeFullV);
                if (svd.singularValues()(0) == 0.0)
                    break;
                svd.setThreshold(1e-12);
                const Eigen::Vector2d dx = -svd.solve(e.residual);
                double tau = 1.0;
                bool moved = false;
                while (tau > 1e-6)
                {
                    const Eigen::Vector2d trial = x + tau * dx;
                    const PairEval te = evaluate(sys, trial);
                    const double tn = te.residual.norm();
                    if (tn < (1.0 - 1e-4 * tau) * norm)
                    {
                        x = trial;
                        e = te;
                        norm = tn;
                        moved = true;
                        break;
                    }
                    tau *= 0.5;
                }
                if (!moved)
                    break;
            }
            return {x, e.residual.cwiseAbs().maxCoeff(), e.amplitude};
        }

        std::vector<Eigen::Vector2d> null_directions(const PairSystem &sys, const Eigen::Vector2d &x)
        {
            const PairEval e = evaluate(sys, x);
            Eigen::JacobiSVD<Eigen::Matrix2d> svd(e.jacobian, Eigen::ComputeFullV);
            std::vector<Eigen::Vector2d> out;
            for (int i = 0; i < 2; ++i)
                if (svd.singularValues()(i) < 1e-7 * sys.scale)
                    out.push_back(svd.matrixV().col(i));
            return out;
        }

        bool acceptable(const Root &r, double tolerance)
        {
            return r.residual < tolerance && r.amplitude(0) > 0.0 && r.amplitude(1) > 0.0;
        }

        // Walks along a curve of roots while min amplitude improves
        Root climb(const PairSystem &sys, Root root, double tolerance)
        {
            double h = 0.1;
            for (int iter = 0; iter < 400 && h > 1e-10; ++iter)
            {
                const auto dirs = null_directions(sys, root.x);
                if (dirs.empty())
                    break;
                bool improved = false;
                for (const auto &v : dirs)
                {
                    for (const double sign : {1.0, -1.0})
                    {
                        const Root next = project(sys, root.x + sign * h * v, 30);
                        if (acceptable(next, tolerance) && next.worst() > root.worst() + 1e-15 * sys.scale)
                        {
                            root = next;
                            improved = true;
                            break;
                        }
                    }
                    if (improved)
                        break;
                }
                h = improved ? std::min(2.0 * h, 0.5) : 0.5 * h;
            }
            return root;
        }

        // Distance between the rotations themselves: every (0, delta) is the identity
        double rotation_distance(const Eigen::Vector2d &a, const Eigen::Vector2d &b)
        {
            return std::abs(std::cos(a(0)) - std::cos(b(0))) +
                   std::abs(std::polar(std::sin(a(0)), a(1)) - std::polar(std::sin(b(0)), b(1)));
        }

        bool better(const Root &a, const Root &b, double scale)
        {
            const double tie = 1e-12 * scale;
            if (a.worst() > b.worst() + tie)
                return true;
            if (b.worst() > a.worst() + tie)
                return false;
            const double aa = std::abs(wrap_angle(a.x(0)));
            const double ba = std::abs(wrap_angle(b.x(0)));
            if (aa != ba)
                return aa < ba;
            return std::abs(wrap_angle(a.x(1))) < std::abs(wrap_angle(b.x(1)));
        }
    } // namespace

    RotationTargets default_rotation_targets(const XiBlock &xi)
    {
        return {std::hypot(std::abs(xi.kk), std::abs(xi.kj)), std::hypot(std::abs(xi.jj), std::abs(xi.jk))};
    }

    std::array<cplx, 2> rotation_pair_frames(const XiBlock &xi, const PskSymbol &dk, const PskSymbol &dj, double alpha,
                                             double delta)
    {
        const double c = std::cos(alpha);
        const double s = std::sin(alpha);
        const cplx rhs_k = xi.kk * c * dk.value() - xi.kj * s * std::polar(1.0, -delta) * dj.value();
        const cplx rhs_j = xi.jk * s * std::polar(1.0, delta) * dk.value() + xi.jj * c * dj.value();
        return {std::conj(dk.value()) * rhs_k, std::conj(dj.value()) * rhs_j};
    }

    std::optional<PairRotation> solve_rotation_pair(const XiBlock &xi, const PskSymbol &dk, const PskSymbol &dj,
                                                    std::optional<RotationTargets> targets,
                                                    const RotationSolverOptions &options)
    {
        if (dk.order() != dj.order())
            throw std::invalid_argument("solve_rotation_pair: symbols from different constellations");
        if (options.grid < 1 || options.max_newton_steps < 1 || options.max_backoff_steps < 0 ||
            !(options.backoff_factor > 0.0 && options.backoff_factor < 1.0))
            throw std::invalid_argument("solve_rotation_pair: bad solver options");

        PairSystem sys{xi, phase_difference(dj, dk), phase_difference(dk, dj), 0.0};
        sys.scale = std::max({std::abs(xi.kk), std::abs(xi.kj), std::abs(xi.jk), std::abs(xi.jj)});
        if (sys.scale == 0.0)
            return std::nullopt;
        const RotationTargets goal = targets.value_or(default_rotation_targets(xi));

        std::vector<Root> roots;
        const double step = 2.0 * kPi / options.grid;
        for (int a = 0; a < options.grid; ++a)
        {
            for (int b = 0; b < options.grid; ++b)
            {
                const Eigen::Vector2d start(-kPi + step * a, -kPi + step * b);
                const Root r = project(sys, start, options.max_newton_steps);
                if (acceptable(r, options.residual_tolerance))
                    roots.push_back(r);
            }
        }
        if (roots.empty())
            return std::nullopt;

        std::stable_sort(roots.begin(), roots.end(),
                         [&](const Root &a, const Root &b) { return better(a, b, sys.scale); });
        std::vector<Root> seeds;
        for (const Root &r : roots)
        {
            const bool distinct = std::none_of(seeds.begin(), seeds.end(), [&](const Root &s)
                                               { return rotation_distance(s.x, r.x) < 1e-3; });
            if (distinct)
                seeds.push_back(r);
            if (seeds.size() == 8)
                break;
        }

        Root best = climb(sys, seeds.front(), options.residual_tolerance);
        for (std::size_t i = 1; i < seeds.size(); ++i)
        {
            const Root r = climb(sys, seeds[i], options.residual_tolerance);
            if (better(r, best, sys.scale))
                best = r;
        }

        double level = 1.0;
        for (int m = 0; m <= options.max_backoff_steps; ++m, level *= options.backoff_factor)
        {
            const double slack = 1.0 - 1e-12;
            if (best.amplitude(0) >= level * goal.kk * slack && best.amplitude(1) >= level * goal.jj * slack)
            {
                PairRotation out;
                out.alpha = wrap_angle(best.x(0));
                out.delta = std::abs(std::sin(out.alpha)) < 1e-15 ? 0.0 : wrap_angle(best.x(1));
                out.xi_kk = best.amplitude(0);
                out.xi_jj = best.amplitude(1);
                out.residual = best.residual;
                out.backoff_steps = m;
                return out;
            }
        }
        return std::nullopt;
    }

} // namespace symprec
