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

#ifndef SYMPREC_LINKMODEL_HPP
#define SYMPREC_LINKMODEL_HPP

#include "symprec/channel.hpp"
#include "symprec/constellation.hpp"
#include "symprec/downlink_precoders.hpp"

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

namespace symprec
{
    // w carries the symbol dependence (and its power) itself
    struct SingleVectorPrecoder
    {
        CVector w;
    };

    using PrecoderOutput = std::variant<PerUserPrecoder, SingleVectorPrecoder>;

    struct ReceivedVector
    {
        CVector y;
        double noise_variance = 1.0;
    };

    // y = H W P^{1/2} d + z, or y = H w + z for a single vector
    ReceivedVector received_signal(const ChannelMatrix &H, const PrecoderOutput &precoder, const SymbolVector &d,
                                   const std::optional<CVector> &noise = std::nullopt);

    struct Detection
    {
        std::vector<int> indices;
        std::vector<bool> erasures; // zero samples, reported as index 0
    };

    // Nearest-angle M-PSK decisions; ties go to the lower index
    Detection detect(const ReceivedVector &received, int order);

    struct SerEstimate
    {
        std::size_t errors = 0;
        std::size_t symbols = 0;

        double value() const { return symbols == 0 ? 0.0 : static_cast<double>(errors) / static_cast<double>(symbols); }
    };

    // Erasures count as errors
    SerEstimate count_symbol_errors(const Detection &detection, const SymbolVector &sent);

    // tr(W P W^H) for per-user precoders, |w|^2 for single vectors
    double total_power(const PrecoderOutput &precoder);

    // |y_j|^2 / sigma^2
    RVector received_snr(const ReceivedVector &received);

    struct MetricsRecord
    {
        double total_power = 0.0;
        RVector per_user_rate;
        double eta = 0.0; // sum_j R_j / P_tot
        SerEstimate ser;

        double sum_rate() const { return per_user_rate.sum(); }
    };

    MetricsRecord metrics(const PrecoderOutput &precoder, const RVector &achieved_snr, SerEstimate ser = {});
    MetricsRecord metrics_for_power(double total_power, const RVector &achieved_snr, SerEstimate ser = {});

} // namespace symprec

#endif
