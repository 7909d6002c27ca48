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

#ifndef SYMPREC_QOS_HPP
#define SYMPREC_QOS_HPP

#include "symprec/common.hpp"

#include <vector>

namespace symprec
{
    // Per-user SNR thresholds zeta_j (linear) and rates R_j = log2(1 + zeta_j)
    class QosTargets
    {
    public:
        explicit QosTargets(std::vector<double> snr);

        static QosTargets from_rates(const std::vector<double> &rates);
        static QosTargets uniform_rate(std::size_t users, double rate);

        std::size_t size() const { return static_cast<std::size_t>(snr_.size()); }
        double snr(std::size_t j) const { return snr_(static_cast<Eigen::Index>(j)); }
        double rate(std::size_t j) const;
        const RVector &snr() const { return snr_; }
        RVector sqrt_snr() const { return snr_.cwiseSqrt(); }

    private:
        RVector snr_;
    };

    // zeta = 2^R - 1
    double snr_for_rate(double rate);

} // namespace symprec

#endif
