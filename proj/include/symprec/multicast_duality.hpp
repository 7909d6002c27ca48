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

#ifndef SYMPREC_MULTICAST_DUALITY_HPP
#define SYMPREC_MULTICAST_DUALITY_HPP

#include "symprec/channel.hpp"
#include "symprec/constellation.hpp"
#include "symprec/qos.hpp"
#include "symprec/rng.hpp"

#include <optional>

namespace symprec
{
    // Single beamformer w = sum_j nu_j h_j^H
    struct MulticastPrecoder
    {
        CVector w;
        CVector nu;
        double power = 0.0;

        // nu_j = -0.5 lagrange_alpha_j - 0.5 i lagrange_mu_j
        RVector lagrange_alpha() const { return -2.0 * nu.real(); }
        RVector lagrange_mu() const { return -2.0 * nu.imag(); }
    };

    // Least-power w with h_j w = sqrt(zeta_j) d for every user, i.e. the received phase
    // equals arg d and the received SNR equals zeta_j exactly. The multipliers are found
    // from the real 2K x 2K system obtained by substituting w = sum_j nu_j h_j^H into the
    // real and imaginary constraint equations.
    //
    // Throws DegenerateChannel for rank-deficient H or K > nt, Infeasible when the
    // 2K x 2K system is numerically singular.
    MulticastPrecoder ccmc(const ChannelMatrix &H, const PskSymbol &d, const QosTargets &qos);

    // Downlink precoder delivering d_j to user j with SNR zeta_j from one vector: the
    // multicast solution for `reference` on the phase-aligned channel A H. Defaults to
    // reference = d_1.
    MulticastPrecoder cidc(const ChannelMatrix &H, const SymbolVector &d, const QosTargets &qos,
                           std::optional<PskSymbol> reference = std::nullopt);

    // ------------------------------------------------------------------------
    // Optimal multicast covariance
    //   min tr(Q)  s.t.  h_j Q h_j^H >= zeta_j,  Q >= 0
    // ------------------------------------------------------------------------

    struct CovarianceSolution
    {
        CMatrix Q;
        double power = 0.0;        // tr(Q)
        RVector dual;              // lambda >= 0 with I - sum lambda_j h_j^H h_j >= 0
        double dual_bound = 0.0;   // zeta^T lambda <= optimum <= power
        int newton_steps = 0;
        std::optional<CVector> rank1_w;

        double relative_gap() const { return (power - dual_bound) / power; }
    };

    struct SdpOptions
    {
        int max_iterations = 500;     // Newton steps over all barrier stages
        double relative_gap = 1e-9;   // stop when (tr Q - zeta^T lambda) <= gap * tr Q
        double accept_gap = 1e-6;     // weaker gap accepted if numerical progress stalls
        double barrier_growth = 10.0;
    };

    class SolverNotConverged : public std::runtime_error
    {
    public:
        SolverNotConverged(const std::string &what, CovarianceSolution best)
            : std::runtime_error(what), best_(std::move(best)) {}

        const CovarianceSolution &best() const { return best_; }

    private:
        CovarianceSolution best_;
    };

    // Barrier method on the dual (max zeta^T lambda, I - sum lambda_j h_j^H h_j >= 0, K
    // variables). Each centered dual iterate yields the strictly feasible primal point
    // Q = X^{-1}/t, so every reported solution carries a certified duality gap.
    CovarianceSolution optimal_multicast(const ChannelMatrix &H, const QosTargets &qos, const SdpOptions &options = {});

    // Rank-one beamformer from Q: principal eigenvector plus Gaussian randomizations
    // w = U L^{1/2} r, each rescaled to the least power meeting every constraint.
    // The cheapest candidate is returned.
    CVector extract_rank_one(const CovarianceSolution &solution, const ChannelMatrix &H, const QosTargets &qos,
                             Rng &rng, int randomizations = 1000);

} // namespace symprec

#endif
