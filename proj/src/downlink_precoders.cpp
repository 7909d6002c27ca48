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

#include <cmath>

namespace symprec
{
    CMatrix PerUserPrecoder::scaled() const
    {
        return W * powers.cwiseSqrt().cast<cplx>().asDiagonal();
    }

    PerUserPrecoder from_unnormalized(const CMatrix &W)
    {
        PerUserPrecoder out;
        out.W = W;
        out.powers = RVector::Zero(W.cols());
        for (Eigen::Index k = 0; k < W.cols(); ++k)
        {
            const double n = W.col(k).norm();
            out.powers(k) = n * n;
            if (n > 0.0)
                out.W.col(k) /= n;
        }
        return out;
    }

    PerUserPrecoder nmrt(const ChannelMatrix &H)
    {
        const RVector &n = H.row_norms();
        if (n.minCoeff() == 0.0)
            throw std::invalid_argument("nmrt: zero channel row");
        PerUserPrecoder out;
        out.W = H.entries().adjoint() * n.cwiseInverse().cast<cplx>().asDiagonal();
        return out;
    }

    CrzfPrecoder crzf(const ChannelMatrix &H, const SymbolVector &d, double budget)
    {
        if (!(budget > 0.0) || !std::isfinite(budget))
            throw std::invalid_argument("crzf: power budget must be positive");
        const Eigen::Index K = H.users();
        if (static_cast<Eigen::Index>(d.size()) != K)
            throw std::invalid_argument("crzf: symbol count differs from user count");
        require_full_row_rank(H);

        const CMatrix rho = cross_correlation(H);
        for (Eigen::Index j = 0; j < K; ++j)
            for (Eigen::Index k = j + 1; k < K; ++k)
                if (std::abs(rho(j, k)) > kCrzfColinearityLimit)
                    throw DegenerateChannel("near-colinear users " + std::to_string(j + 1) + " and " + std::to_string(k + 1) +
                                            " (|rho| = " + std::to_string(std::abs(rho(j, k))) +
                                            "): the zero-forcing step of CRZF breaks down as |rho| -> 1");

        CrzfPrecoder out;
        out.rotation = CMatrix::Identity(K, K);
        for (Eigen::Index j = 0; j < K; ++j)
        {
            for (Eigen::Index k = 0; k < K; ++k)
            {
                if (j == k || rho(j, k) == cplx(0.0, 0.0))
                {
                    if (j != k)
                        out.rotation(j, k) = 0.0;
                    continue;
                }
                // rho_jk d_k rotated onto arg d_j
                const double phi = relative_phase(rho(j, k), d[static_cast<std::size_t>(k)], d[static_cast<std::size_t>(j)]);
                out.rotation(j, k) = rho(j, k) * std::polar(1.0, phi);
            }
        }

        const CMatrix &E = H.entries();
        const Eigen::LLT<CMatrix> gram(E * E.adjoint());
        if (gram.info() != Eigen::Success)
            throw DegenerateChannel("crzf: H H^H is not positive definite");
        const CMatrix inv_rot = gram.solve(out.rotation);
        const double trace = (out.rotation.adjoint() * inv_rot).trace().real();
        out.gamma = std::sqrt(budget / trace);
        out.precoder = from_unnormalized(out.gamma * E.adjoint() * inv_rot);
        return out;
    }

    double crzf_qos_budget(const ChannelMatrix &H, const SymbolVector &d, const QosTargets &qos)
    {
        if (qos.size() != static_cast<std::size_t>(H.users()))
            throw std::invalid_argument("crzf_qos_budget: QoS target count differs from user count");
        const CrzfPrecoder unit = crzf(H, d, 1.0);
        const CVector y = H.entries() * unit.unnormalized() * d.values();
        double budget = 0.0;
        for (Eigen::Index j = 0; j < y.size(); ++j)
            budget = std::max(budget, qos.snr(static_cast<std::size_t>(j)) / std::norm(y(j)));
        return budget;
    }

    CMatrix givens_rotation(const RotationParams &p, int dimension)
    {
        if (!(0 <= p.j && p.j < p.k && p.k < dimension))
            throw std::invalid_argument("givens_rotation: need 0 <= j < k < K");
        CMatrix R = CMatrix::Identity(dimension, dimension);
        const double c = std::cos(p.alpha);
        const double s = std::sin(p.alpha);
        R(p.j, p.j) = c;
        R(p.k, p.k) = c;
        R(p.j, p.k) = -s * std::polar(1.0, -p.delta);
        R(p.k, p.j) = s * std::polar(1.0, p.delta);
        return R;
    }

    void apply_plane_rotation(CMatrix &B, const RotationParams &p)
    {
        if (!(0 <= p.j && p.j < p.k && p.k < B.cols()))
            throw std::invalid_argument("apply_plane_rotation: need 0 <= j < k < K");
        const double c = std::cos(p.alpha);
        const double s = std::sin(p.alpha);
        const cplx forward = s * std::polar(1.0, p.delta);
        const cplx backward = -s * std::polar(1.0, -p.delta);
        const CVector bj = B.col(p.j);
        const CVector bk = B.col(p.k);
        B.col(p.j) = c * bj + forward * bk;
        B.col(p.k) = backward * bj + c * bk;
    }

    PowerAllocation constructive_power_allocation(const ChannelMatrix &H, const QosTargets &qos)
    {
        const Eigen::Index K = H.users();
        if (qos.size() != static_cast<std::size_t>(K))
            throw std::invalid_argument("power allocation: QoS target count differs from user count");
        const RVector &n = H.row_norms();
        const CMatrix rho = cross_correlation(H);
        RMatrix M(K, K);
        for (Eigen::Index j = 0; j < K; ++j)
            for (Eigen::Index k = 0; k < K; ++k)
                M(j, k) = n(j) * std::abs(rho(j, k));

        PowerAllocation out;
        const Eigen::FullPivLU<RMatrix> lu(M);
        if (lu.isInvertible())
        {
            const RVector s = lu.solve(qos.sqrt_snr());
            if (s.allFinite() && s.minCoeff() >= 0.0)
            {
                out.powers = s.cwiseAbs2();
                return out;
            }
        }
        double level = 0.0;
        for (Eigen::Index j = 0; j < K; ++j)
            level = std::max(level, qos.snr(static_cast<std::size_t>(j)) / (n(j) * n(j) * static_cast<double>(K)));
        out.powers = RVector::Constant(K, level);
        out.fallback = true;
        return out;
    }

} // namespace symprec
