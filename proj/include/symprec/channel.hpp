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

#ifndef SYMPREC_CHANNEL_HPP
#define SYMPREC_CHANNEL_HPP

#include "symprec/common.hpp"
#include "symprec/rng.hpp"

namespace symprec
{
    // K x nt matrix of user channels; row j is h_j. Immutable after construction.
    class ChannelMatrix
    {
    public:
        explicit ChannelMatrix(CMatrix entries, double avg_power = 1.0);

        const CMatrix &entries() const { return entries_; }
        Eigen::Index users() const { return entries_.rows(); }
        Eigen::Index antennas() const { return entries_.cols(); }
        CRowVector row(Eigen::Index j) const { return entries_.row(j); }
        const RVector &row_norms() const { return row_norms_; }
        double avg_power() const { return avg_power_; }

        // sigma_min / sigma_max of H
        double inverse_condition() const;

    private:
        CMatrix entries_;
        RVector row_norms_;
        double avg_power_;
    };

    // i.i.d. CN(0, gamma0) entries
    ChannelMatrix generate_rayleigh(int users, int antennas, double gamma0, Rng &rng);

    // Throws DegenerateChannel unless sigma_min >= tolerance * sigma_max and K <= nt
    void require_full_row_rank(const ChannelMatrix &H, double tolerance = kRankTolerance);

    // rho(j,k) = h_j h_k^H / (|h_j| |h_k|), unit diagonal, Hermitian
    CMatrix cross_correlation(const ChannelMatrix &H);

    // psi = h w / (|h| |w|)
    cplx normalized_interference(const CRowVector &h, const CVector &w);

    // Factorization H = S V D used by the MRT-based precoders.
    //
    // S (K x K) and D (nt x nt) are unitary, V (K x nt) is the rectangular diagonal of
    // singular values. Each left-singular vector is phase-normalized so that its
    // largest-magnitude entry is real positive.
    //
    // Vp (nt x K) is the power-scaled counterpart of V^T chosen so that
    // D^H Vp S^H equals the matched-filter precoder [h_1^H/|h_1|, ..., h_K^H/|h_K|]:
    //   Vp = V^T S^H N^{-1} S,  N = diag(|h_j|).
    // With this choice every column of D^H Vp B is unit norm for B = S^H, and
    // G = S V Vp satisfies |g_j| xi_jk = |h_j| rho_jk.
    struct SvdFactors
    {
        CMatrix S;
        RMatrix V;
        CMatrix D;
        CMatrix Vp;
        CMatrix G;
        CMatrix B;
        RVector singular_values;

        // xi_jk = g_j b_k / |g_j| for an arbitrary unitary B
        cplx xi(Eigen::Index j, Eigen::Index k, const CMatrix &B_current) const;
    };

    SvdFactors svd_factor(const ChannelMatrix &H);

} // namespace symprec

#endif
