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

#include "symprec/multicast_duality.hpp"

#include <cmath>
#include <limits>

namespace symprec
{
    namespace
    {
        struct DualState
        {
            RVector lambda;
            Eigen::LLT<CMatrix> chol;
            CMatrix M; // H X^{-1} H^H
            double value = 0.0;
            bool ok = false;
        };

        DualState evaluate(const CMatrix &E, const RVector &zeta, const RVector &lambda, double t)
        {
            DualState s;
            s.lambda = lambda;
            if (lambda.minCoeff() <= 0.0)
                return s;
            const Eigen::Index nt = E.cols();
            const CMatrix X = CMatrix::Identity(nt, nt) - E.adjoint() * lambda.cast<cplx>().asDiagonal() * E;
            s.chol.compute(X);
            if (s.chol.info() != Eigen::Success)
                return s;
            const CMatrix L = s.chol.matrixL();
            double logdet = 0.0;
            for (Eigen::Index i = 0; i < nt; ++i)
            {
                const double diag = L(i, i).real();
                if (!(diag > 0.0))
                    return s;
                logdet += 2.0 * std::log(diag);
            }
            const CMatrix Y = s.chol.matrixL().solve(E.adjoint());
            s.M = Y.adjoint() * Y;
            s.value = t * zeta.dot(lambda) + logdet + lambda.array().log().sum();
            s.ok = std::isfinite(s.value);
            return s;
        }

        CovarianceSolution primal(const CMatrix &E, const RVector &zeta, const DualState &s, double t)
        {
            const Eigen::Index nt = E.cols();
            CovarianceSolution out;
            out.Q = s.chol.solve(CMatrix::Identity(nt, nt)) / t;
            out.Q = 0.5 * (out.Q + out.Q.adjoint()).eval();
            double scale = 1.0;
            for (Eigen::Index j = 0; j < E.rows(); ++j)
            {
                const double q = (E.row(j) * out.Q * E.row(j).adjoint())(0, 0).real();
                scale = std::max(scale, zeta(j) / q);
            }
            out.Q *= scale;
            out.power = out.Q.trace().real();
            out.dual = s.lambda;
            out.dual_bound = zeta.dot(s.lambda);
            return out;
        }
    } // namespace

    CovarianceSolution optimal_multicast(const ChannelMatrix &H, const QosTargets &qos, const SdpOptions &options)
    {
        const Eigen::Index K = H.users();
        const Eigen::Index nt = H.antennas();
        if (static_cast<Eigen::Index>(qos.size()) != K)
            throw std::invalid_argument("optimal_multicast: QoS target count differs from user count");
        if (qos.snr().minCoeff() <= 0.0)
            throw std::invalid_argument("optimal_multicast: SNR targets must be positive");
        if (H.row_norms().minCoeff() == 0.0)
            throw DegenerateChannel("optimal_multicast: zero channel row");
        if (options.max_iterations < 1 || !(options.barrier_growth > 1.0))
            throw std::invalid_argument("optimal_multicast: bad solver options");

        const CMatrix &E = H.entries();
        const RVector &zeta = qos.snr();
        RVector lambda(K);
        for (Eigen::Index j = 0; j < K; ++j)
            lambda(j) = 0.5 / (static_cast<double>(K) * H.row_norms()(j) * H.row_norms()(j));

        double t = static_cast<double>(nt + K) / zeta.dot(lambda);
        DualState state = evaluate(E, zeta, lambda, t);
        CovarianceSolution best;
        best.power = std::numeric_limits<double>::infinity();
        int steps = 0;

        auto remember = [&](const DualState &s)
        {
            CovarianceSolution candidate = primal(E, zeta, s, t);
            candidate.newton_steps = steps;
            if (!std::isfinite(best.power) || candidate.relative_gap() < best.relative_gap())
                best = candidate;
        };

        bool stalled = false;
        while (steps < options.max_iterations)
        {
            // Centering
            bool centered = false;
            int stage_steps = 0;
            while (steps < options.max_iterations)
            {
                const RVector inv = state.lambda.cwiseInverse();
                const RVector grad = t * zeta - state.M.diagonal().real() + inv;
                RMatrix hess = state.M.cwiseAbs2();
                hess.diagonal() += inv.cwiseAbs2();
                const Eigen::LLT<RMatrix> hl(hess);
                if (hl.info() != Eigen::Success)
                {
                    stalled = true;
                    break;
                }
                const RVector dir = hl.solve(grad);
                const double decrement = grad.dot(dir);
                if (decrement < 1e-10)
                {
                    centered = true;
                    break;
                }
                if (++stage_steps > 80)
                {
                    // Rounding in t zeta - diag(M) floors the decrement at large t; a nearly
                    // centered point still moves the path forward
                    centered = decrement < 1e-3;
                    stalled = !centered;
                    break;
                }
                ++steps;
                // Damped Newton step; the barrier is self-concordant so this always decreases it
                double tau = decrement > 0.0625 ? 1.0 / (1.0 + std::sqrt(decrement)) : 1.0;
                bool moved = false;
                for (int halving = 0; halving < 60 && !moved; ++halving, tau *= 0.5)
                {
                    DualState next = evaluate(E, zeta, state.lambda + tau * dir, t);
                    if (next.ok)
                    {
                        state = std::move(next);
                        moved = true;
                    }
                }
                if (!moved)
                {
                    stalled = true;
                    break;
                }
                remember(state);
            }

            remember(state);
            if (best.relative_gap() <= options.relative_gap)
                return best;
            if (stalled || !centered)
                break;
            t *= options.barrier_growth;
            state = evaluate(E, zeta, state.lambda, t);
        }

        if (best.relative_gap() <= options.accept_gap)
            return best;
        throw SolverNotConverged("optimal_multicast: duality gap " + std::to_string(best.relative_gap()) +
                                     " after " + std::to_string(steps) + " Newton steps",
                                 best);
    }

    CVector extract_rank_one(const CovarianceSolution &solution, const ChannelMatrix &H, const QosTargets &qos,
                             Rng &rng, int randomizations)
    {
        const CMatrix &E = H.entries();
        if (solution.Q.rows() != H.antennas() || static_cast<Eigen::Index>(qos.size()) != H.users())
            throw std::invalid_argument("extract_rank_one: dimension mismatch");
        const Eigen::SelfAdjointEigenSolver<CMatrix> eig(solution.Q);
        const RVector values = eig.eigenvalues().cwiseMax(0.0);
        const CMatrix root = eig.eigenvectors() * values.cwiseSqrt().cast<cplx>().asDiagonal();

        CVector best;
        double best_power = std::numeric_limits<double>::infinity();
        auto consider = [&](CVector w)
        {
            const CVector g = E * w;
            double scale = 0.0;
            for (Eigen::Index j = 0; j < g.size(); ++j)
            {
                const double q = std::norm(g(j));
                if (q == 0.0)
                    return;
                scale = std::max(scale, qos.snr(static_cast<std::size_t>(j)) / q);
            }
            w *= std::sqrt(scale);
            const double p = w.squaredNorm();
            if (p < best_power)
            {
                best_power = p;
                best = std::move(w);
            }
        };

        consider(root.col(root.cols() - 1));
        const Eigen::Index n = root.cols();
        for (int r = 0; r < randomizations; ++r)
        {
            CVector z(n);
            for (Eigen::Index i = 0; i < n; ++i)
                z(i) = rng.complex_normal();
            consider(root * z);
        }
        if (!std::isfinite(best_power))
            throw Infeasible("extract_rank_one: no candidate reaches every user");
        return best;
    }

} // namespace symprec
