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

namespace symprec
{
    CimrtResult cimrt(const ChannelMatrix &H, const SymbolVector &d, const QosTargets &qos,
                      const RotationSolverOptions &options)
    {
        const Eigen::Index K = H.users();
        if (K > H.antennas())
            throw DegenerateChannel("cimrt: more users than antennas");
        if (static_cast<Eigen::Index>(d.size()) != K || static_cast<Eigen::Index>(qos.size()) != K)
            throw std::invalid_argument("cimrt: symbol or QoS count differs from user count");

        CimrtResult out;
        const PowerAllocation alloc = constructive_power_allocation(H, qos);
        out.fallback_power = alloc.fallback;
        out.factors = svd_factor(H);
        out.b_prime = out.factors.B;

        for (Eigen::Index j = 0; j < K; ++j)
        {
            for (Eigen::Index k = j + 1; k < K; ++k)
            {
                CimrtStep step;
                step.params.j = static_cast<int>(j);
                step.params.k = static_cast<int>(k);
                step.xi = {out.factors.xi(k, k, out.b_prime), out.factors.xi(k, j, out.b_prime),
                           out.factors.xi(j, k, out.b_prime), out.factors.xi(j, j, out.b_prime)};
                step.b_before = out.b_prime;
                step.solution = solve_rotation_pair(step.xi, d[static_cast<std::size_t>(k)],
                                                    d[static_cast<std::size_t>(j)], std::nullopt, options);
                if (step.solution)
                {
                    step.params.alpha = step.solution->alpha;
                    step.params.delta = step.solution->delta;
                    apply_plane_rotation(out.b_prime, step.params);
                }
                step.b_after = out.b_prime;
                out.steps.push_back(std::move(step));
            }
        }

        out.precoder = from_unnormalized(out.factors.D.adjoint() * out.factors.Vp * out.b_prime);
        out.precoder.powers = alloc.powers;
        return out;
    }

} // namespace symprec
