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

#ifndef SYMPREC_TESTS_ORACLES_HPP
#define SYMPREC_TESTS_ORACLES_HPP

// Reference computations used only by the tests. They reach the same quantities as the
// library through different numerical routes.

#include "symprec/common.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace symprec::oracle
{
    // Minimum-norm solution of H w = b through a complete orthogonal decomposition
    inline CVector least_norm(const CMatrix &H, const CVector &b)
    {
        return H.completeOrthogonalDecomposition().pseudoInverse() * b;
    }

    inline void orthonormal_in_place(CMatrix &Q)
    {
        const Eigen::HouseholderQR<CMatrix> qr(Q);
        Q = qr.householderQ() * CMatrix::Identity(Q.rows(), Q.cols());
    }

    // Nelder-Mead on R^n
    inline std::vector<double> nelder_mead(const std::function<double(const std::vector<double> &)> &f,
                                           std::vector<double> x0, double step, int iterations)
    {
        const std::size_t n = x0.size();
        std::vector<std::vector<double>> simplex(n + 1, x0);
        for (std::size_t i = 0; i < n; ++i)
            simplex[i + 1][i] += step;
        std::vector<double> value(n + 1);
        for (std::size_t i = 0; i <= n; ++i)
            value[i] = f(simplex[i]);

        auto combine = [&](const std::vector<double> &a, const std::vector<double> &b, double t)
        {
            std::vector<double> out(n);
            for (std::size_t i = 0; i < n; ++i)
                out[i] = a[i] + t * (b[i] - a[i]);
            return out;
        };

        for (int it = 0; it < iterations; ++it)
        {
            std::vector<std::size_t> order(n + 1);
            for (std::size_t i = 0; i <= n; ++i)
                order[i] = i;
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
            const std::size_t best = order.front();
            const std::size_t worst = order.back();
            const std::size_t second = order[n - 1];

            std::vector<double> centroid(n, 0.0);
            for (std::size_t i = 0; i <= n; ++i)
                if (i != worst)
                    for (std::size_t k = 0; k < n; ++k)
                        centroid[k] += simplex[i][k] / static_cast<double>(n);

            const auto reflected = combine(centroid, simplex[worst], -1.0);
            const double fr = f(reflected);
            if (fr < value[best])
            {
                const auto expanded = combine(centroid, simplex[worst], -2.0);
                const double fe = f(expanded);
                if (fe < fr)
                    simplex[worst] = expanded, value[worst] = fe;
                else
                    simplex[worst] = reflected, value[worst] = fr;
                continue;
            }
            if (fr < value[second])
            {
                simplex[worst] = reflected, value[worst] = fr;
                continue;
            }
            const auto contracted = combine(centroid, simplex[worst], 0.5);
            const double fc = f(contracted);
            if (fc < value[worst])
            {
                simplex[worst] = contracted, value[worst] = fc;
                continue;
            }
            for (std::size_t i = 0; i <= n; ++i)
            {
                if (i == best)
                    continue;
                simplex[i] = combine(simplex[best], simplex[i], 0.5);
                value[i] = f(simplex[i]);
            }
        }
        return *std::min_element(simplex.begin(), simplex.end(),
                                 [&](const auto &a, const auto &b) { return f(a) < f(b); });
    }

    // Least |w|^2 subject to H w = b by brute force over the real 2 nt-dimensional w-space:
    // a coarse grid on a quadratic penalty picks the start, then Nelder-Mead restarts
    // under a growing penalty weight refine it.
    inline double brute_force_min_power(const CMatrix &H, const CVector &b, int grid = 13)
    {
        const Eigen::Index nt = H.cols();
        const std::size_t n = static_cast<std::size_t>(2 * nt);
        const Eigen::JacobiSVD<CMatrix> svd(H);
        const double smin = svd.singularValues().minCoeff();
        const double box = 2.0 * b.norm() / smin;

        auto to_w = [&](const std::vector<double> &x)
        {
            CVector w(nt);
            for (Eigen::Index i = 0; i < nt; ++i)
                w(i) = cplx(x[static_cast<std::size_t>(2 * i)], x[static_cast<std::size_t>(2 * i + 1)]);
            return w;
        };
        double mu = 10.0 / (smin * smin);
        auto penalty = [&](const std::vector<double> &x)
        {
            const CVector w = to_w(x);
            return w.squaredNorm() + mu * (H * w - b).squaredNorm();
        };

        std::vector<double> best(n, 0.0);
        double best_value = std::numeric_limits<double>::infinity();
        std::vector<int> counter(n, 0);
        while (true)
        {
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i)
                x[i] = -box + 2.0 * box * counter[i] / (grid - 1);
            const double v = penalty(x);
            if (v < best_value)
                best_value = v, best = x;
            std::size_t i = 0;
            while (i < n && ++counter[i] == grid)
                counter[i++] = 0;
            if (i == n)
                break;
        }

        double step = 2.0 * box / (grid - 1);
        for (int stage = 0; stage < 8; ++stage)
        {
            for (int restart = 0; restart < 6; ++restart)
            {
                best = nelder_mead(penalty, best, step, 4000);
                step = std::max(step * 0.3, 1e-9 * box);
            }
            mu *= 10.0;
            step = 1e-2 * box;
        }
        return to_w(best).squaredNorm();
    }

    // Roots of the pair equations written directly from their definition. Every cell of a
    // points x points (alpha, delta) grid starts a plain Newton iteration with a
    // central-difference Jacobian; converged points with both amplitudes positive are roots.
    // Reports the best min amplitude among them, or -inf when none converged.
    struct RootSearch
    {
        double worst_amplitude = -std::numeric_limits<double>::infinity();
        double amplitude_k = 0.0;
        double amplitude_j = 0.0;
        double alpha = 0.0;
        double delta = 0.0;
        int roots = 0;
    };

    inline std::array<double, 4> pair_frames(const std::array<cplx, 4> &xi, cplx dk, cplx dj, double alpha,
                                             double delta)
    {
        const cplx rhs_k = xi[0] * std::cos(alpha) * dk - xi[1] * std::sin(alpha) * std::exp(cplx(0, -delta)) * dj;
        const cplx rhs_j = xi[2] * std::sin(alpha) * std::exp(cplx(0, delta)) * dk + xi[3] * std::cos(alpha) * dj;
        const cplx fk = rhs_k * std::conj(dk);
        const cplx fj = rhs_j * std::conj(dj);
        return {fk.imag(), fj.imag(), fk.real(), fj.real()};
    }

    inline RootSearch rotation_roots(const std::array<cplx, 4> &xi, cplx dk, cplx dj, int points)
    {
        double scale = 0.0;
        for (const cplx x : xi)
            scale = std::max(scale, std::abs(x));
        RootSearch best;
        for (int a = 0; a < points; ++a)
        {
            for (int b = 0; b < points; ++b)
            {
                double x = -kPi + 2.0 * kPi * (a + 0.5) / points;
                double y = -kPi + 2.0 * kPi * (b + 0.5) / points;
                bool converged = false;
                for (int it = 0; it < 50; ++it)
                {
                    const auto f = pair_frames(xi, dk, dj, x, y);
                    if (std::max(std::abs(f[0]), std::abs(f[1])) < 1e-13 * scale)
                    {
                        converged = true;
                        break;
                    }
                    const double s = 1e-7;
                    const auto fa = pair_frames(xi, dk, dj, x + s, y);
                    const auto fb = pair_frames(xi, dk, dj, x - s, y);
                    const auto ga = pair_frames(xi, dk, dj, x, y + s);
                    const auto gb = pair_frames(xi, dk, dj, x, y - s);
                    const double j00 = (fa[0] - fb[0]) / (2 * s);
                    const double j10 = (fa[1] - fb[1]) / (2 * s);
                    const double j01 = (ga[0] - gb[0]) / (2 * s);
                    const double j11 = (ga[1] - gb[1]) / (2 * s);
                    const double det = j00 * j11 - j01 * j10;
                    if (std::abs(det) < 1e-14 * scale * scale)
                        break;
                    double dx = (j11 * f[0] - j01 * f[1]) / det;
                    double dy = (-j10 * f[0] + j00 * f[1]) / det;
                    const double big = std::max(std::abs(dx), std::abs(dy));
                    if (big > 0.5)
                        dx *= 0.5 / big, dy *= 0.5 / big;
                    x -= dx;
                    y -= dy;
                }
                if (!converged)
                    continue;
                const auto f = pair_frames(xi, dk, dj, x, y);
                if (f[2] <= 0.0 || f[3] <= 0.0)
                    continue;
                ++best.roots;
                const double worst = std::min(f[2], f[3]);
                if (worst > best.worst_amplitude)
                {
                    best.worst_amplitude = worst;
                    best.amplitude_k = f[2];
                    best.amplitude_j = f[3];
                    best.alpha = x;
                    best.delta = y;
                }
            }
        }
        return best;
    }

} // namespace symprec::oracle

#endif
