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

#include "symprec/qos.hpp"

#include <cmath>

namespace symprec
{
    double snr_for_rate(double rate)
    {
        if (!(rate > 0.0) || !std::isfinite(rate))
            throw std::invalid_argument("target rate must be positive and finite");
        return std::exp2(rate) - 1.0;
    }

    QosTargets::QosTargets(std::vector<double> snr) : snr_(static_cast<Eigen::Index>(snr.size()))
    {
        if (snr.empty())
            throw std::invalid_argument("QosTargets: no users");
        for (std::size_t j = 0; j < snr.size(); ++j)
        {
            if (!(snr[j] > 0.0) || !std::isfinite(snr[j]))
                throw std::invalid_argument("QosTargets: SNR thresholds must be positive and finite");
            snr_(static_cast<Eigen::Index>(j)) = snr[j];
        }
    }

    QosTargets QosTargets::from_rates(const std::vector<double> &rates)
    {
        std::vector<double> snr;
        snr.reserve(rates.size());
        for (double r : rates)
            snr.push_back(snr_for_rate(r));
        return QosTargets(std::move(snr));
    }

    QosTargets QosTargets::uniform_rate(std::size_t users, double rate)
    {
        return from_rates(std::vector<double>(users, rate));
    }

    double QosTargets::rate(std::size_t j) const
    {
        return std::log2(1.0 + snr(j));
    }

} // namespace symprec
