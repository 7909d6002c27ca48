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

#include "symprec/channel.hpp"

#include <cmath>

namespace symprec
{
    ChannelMatrix::ChannelMatrix(CMatrix entries, double avg_power)
        : entries_(std::move(entries)), avg_power_(avg_power)
    {
        if (entries_.rows() < 1 || entries_.cols() < 1)
            throw std::invalid_argument("ChannelMatrix: need at least one user and one antenna");
        if (!entries_.allFinite())
            throw std::invalid_argument("ChannelMatrix: entries must be finite");
        if (!(avg_power_ > 0.0))
            throw std::invalid_argument("ChannelMatrix: average power must be positive");
        row_norms_ = entries_.rowwise().norm();
    }

    double ChannelMatrix::inverse_condition() const
    {
        Eigen::JacobiSVD<CMatrix> svd(entries_);
        const RVector &s = svd.singularValues();
        if (s.size() == 0 || s(0) == 0.0)
            return 0.0;
        return s(s.size() - 1) / s(0);
    }

    ChannelMatrix generate_rayleigh(int users, int antennas, double gamma0, Rng &rng)
    {
        if (users < 1 || antennas < 1)
            throw std::invalid_argument("generate_rayleigh: K and nt must be >= 1");
        if (!(gamma0 > 0.0) || !std::isfinite(gamma0))
            throw std::invalid_argument("generate_rayleigh: average channel power must be positive");
        CMatrix H(users, antennas);
        // Row-major draw order so the stream layout does not depend on Eigen's storage
        for (int j = 0; j < users; ++j)
            for (int n = 0; n < antennas; ++n)
                H(j, n) = rng.complex_normal(gamma0);
        return ChannelMatrix(std::move(H), gamma0);
    }

    void require_full_row_rank(const ChannelMatrix &H, double tolerance)
    {
        if (H.users() > H.antennas())
            throw DegenerateChannel("more users (" + std::to_string(H.users()) + ") than antennas (" +
                                    std::to_string(H.antennas()) + ")");
        if (H.row_norms().minCoeff() == 0.0)
            throw DegenerateChannel("zero channel row");
        const double ratio = H.inverse_condition();
        if (!(ratio >= tolerance))
            throw DegenerateChannel("rank-deficient channel: sigma_min/sigma_max = " + std::to_string(ratio));
    }

    CMatrix cross_correlation(const ChannelMatrix &H)
    {
        const RVector &n = H.row_norms();
        if (n.minCoeff() == 0.0)
            throw std::invalid_argument("cross_correlation: zero channel row");
        const CMatrix &E = H.entries();
        const Eigen::Index K = H.users();
        CMatrix rho = E * E.adjoint();
        for (Eigen::Index j = 0; j < K; ++j)
        {
            for (Eigen::Index k = 0; k < K; ++k)
                rho(j, k) /= n(j) * n(k);
            rho(j, j) = 1.0;
        }
        return rho;
    }

    cplx normalized_interference(const CRowVector &h, const CVector &w)
    {
        const double nh = h.norm();
        const double nw = w.norm();
        if (nh == 0.0 || nw == 0.0)
            throw std::invalid_argument("normalized_interference: zero vector");
        if (h.size() != w.size())
            throw std::invalid_argument("normalized_interference: dimension mismatch");
        return (h * w)(0, 0) / (nh * nw);
    }

    cplx SvdFactors::xi(Eigen::Index j, Eigen::Index k, const CMatrix &B_current) const
    {
        return (G.row(j) * B_current.col(k))(0, 0) / G.row(j).norm();
    }

    SvdFactors svd_factor(const ChannelMatrix &H)
    {
        require_full_row_rank(H);
        const Eigen::Index K = H.users();
        const Eigen::Index nt = H.antennas();

        Eigen::JacobiSVD<CMatrix> svd(H.entries(), Eigen::ComputeFullU | Eigen::ComputeFullV);
        SvdFactors f;
        f.S = svd.matrixU();
        f.D = svd.matrixV().adjoint();
        f.singular_values = svd.singularValues();

        // Largest-magnitude entry of each left-singular vector made real positive
        for (Eigen::Index i = 0; i < K; ++i)
        {
            Eigen::Index arg = 0;
            f.S.col(i).cwiseAbs().maxCoeff(&arg);
            const cplx u = f.S(arg, i);
            const cplx c = std::conj(u) / std::abs(u);
            f.S.col(i) *= c;
            f.D.row(i) *= std::conj(c);
            f.S(arg, i) = std::abs(u);
        }

        f.V = RMatrix::Zero(K, nt);
        for (Eigen::Index i = 0; i < K; ++i)
            f.V(i, i) = f.singular_values(i);

        const RVector inv_norms = H.row_norms().cwiseInverse();
        const CMatrix scaling = f.S.adjoint() * inv_norms.asDiagonal() * f.S;
        f.Vp = f.V.transpose().cast<cplx>() * scaling;
        f.G = f.S * f.V.cast<cplx>() * f.Vp;
        f.B = f.S.adjoint();
        return f;
    }

} // namespace symprec
