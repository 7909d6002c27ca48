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

namespace symprec
{
    MulticastPrecoder ccmc(const ChannelMatrix &H, const PskSymbol &d, const QosTargets &qos)
    {
        const Eigen::Index K = H.users();
        if (static_cast<Eigen::Index>(qos.size()) != K)
            throw std::invalid_argument("ccmc: QoS target count differs from user count");
        if (qos.snr().minCoeff() <= 0.0)
            throw std::invalid_argument("ccmc: SNR targets must be positive");
        require_full_row_rank(H);

        const CMatrix &E = H.entries();
        const CMatrix C = E * E.adjoint();
        CVector b(K);
        for (Eigen::Index j = 0; j < K; ++j)
            b(j) = std::sqrt(qos.snr(static_cast<std::size_t>(j))) * d.value();

        // h_j sum_k nu_k h_k^H = b_j, split into real and imaginary rows
        RMatrix A(2 * K, 2 * K);
        A << C.real(), -C.imag(), C.imag(), C.real();
        const Eigen::FullPivLU<RMatrix> lu(A);
        if (lu.rcond() < 1e-13)
            throw Infeasible("ccmc: constraint system is numerically singular");

        auto solve = [&](const CVector &rhs)
        {
            RVector r(2 * K);
            r << rhs.real(), rhs.imag();
            const RVector x = lu.solve(r);
            CVector nu(K);
            nu.real() = x.head(K);
            nu.imag() = x.tail(K);
            return nu;
        };

        MulticastPrecoder out;
        out.nu = solve(b);
        for (int pass = 0; pass < 2; ++pass)
            out.nu += solve(b - E * (E.adjoint() * out.nu));
        out.w = E.adjoint() * out.nu;
        out.power = out.w.squaredNorm();
        return out;
    }

    MulticastPrecoder cidc(const ChannelMatrix &H, const SymbolVector &d, const QosTargets &qos,
                           std::optional<PskSymbol> reference)
    {
        if (static_cast<Eigen::Index>(d.size()) != H.users())
            throw std::invalid_argument("cidc: symbol count differs from user count");
        if (H.users() > H.antennas())
            throw DegenerateChannel("cidc: more users than antennas");
        const PskSymbol ref = reference.value_or(d[0]);
        const AlignmentMatrix A = alignment_matrix(d, ref);
        return ccmc(ChannelMatrix(A.apply(H.entries()), H.avg_power()), ref, qos);
    }

} // namespace symprec
