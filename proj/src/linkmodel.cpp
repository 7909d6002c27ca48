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

#include "symprec/linkmodel.hpp"

#include <cmath>

namespace symprec
{
    ReceivedVector received_signal(const ChannelMatrix &H, const PrecoderOutput &precoder, const SymbolVector &d,
                                   const std::optional<CVector> &noise)
    {
        const Eigen::Index K = H.users();
        ReceivedVector out;
        if (const auto *p = std::get_if<PerUserPrecoder>(&precoder))
        {
            if (p->W.rows() != H.antennas() || p->W.cols() != K || p->powers.size() != K ||
                static_cast<Eigen::Index>(d.size()) != K)
                throw std::invalid_argument("received_signal: precoder, channel and symbol dimensions disagree");
            out.y = H.entries() * (p->scaled() * d.values());
        }
        else
        {
            const auto &s = std::get<SingleVectorPrecoder>(precoder);
            if (s.w.size() != H.antennas())
                throw std::invalid_argument("received_signal: beamformer length differs from antenna count");
            out.y = H.entries() * s.w;
        }
        if (noise)
        {
            if (noise->size() != K)
                throw std::invalid_argument("received_signal: noise length differs from user count");
            out.y += *noise;
        }
        return out;
    }

    Detection detect(const ReceivedVector &received, int order)
    {
        if (!is_valid_order(order))
            throw std::invalid_argument("detect: invalid modulation order");
        Detection out;
        const auto K = static_cast<std::size_t>(received.y.size());
        out.indices.assign(K, 0);
        out.erasures.assign(K, false);
        for (std::size_t j = 0; j < K; ++j)
        {
            const cplx y = received.y(static_cast<Eigen::Index>(j));
            if (y == cplx(0.0, 0.0))
            {
                out.erasures[j] = true;
                continue;
            }
            double u = std::arg(y) * order / (2.0 * kPi);
            if (u < 0.0)
                u += order;
            const double base = std::floor(u);
            const double frac = u - base;
            const int lo = static_cast<int>(base) % order;
            const int hi = (lo + 1) % order;
            if (frac < 0.5)
                out.indices[j] = lo;
            else if (frac > 0.5)
                out.indices[j] = hi;
            else
                out.indices[j] = std::min(lo, hi);
        }
        return out;
    }

    SerEstimate count_symbol_errors(const Detection &detection, const SymbolVector &sent)
    {
        if (detection.indices.size() != sent.size())
            throw std::invalid_argument("count_symbol_errors: length mismatch");
        SerEstimate out;
        out.symbols = sent.size();
        for (std::size_t j = 0; j < sent.size(); ++j)
            if (detection.erasures[j] || detection.indices[j] != sent[j].index())
                ++out.errors;
        return out;
    }

    double total_power(const PrecoderOutput &precoder)
    {
        if (const auto *p = std::get_if<PerUserPrecoder>(&precoder))
            return p->scaled().squaredNorm();
        return std::get<SingleVectorPrecoder>(precoder).w.squaredNorm();
    }

    RVector received_snr(const ReceivedVector &received)
    {
        return received.y.cwiseAbs2() / received.noise_variance;
    }

    MetricsRecord metrics_for_power(double total_power, const RVector &achieved_snr, SerEstimate ser)
    {
        if (!(total_power > 0.0) || !std::isfinite(total_power))
            throw std::invalid_argument("metrics: total power must be positive");
        if (achieved_snr.size() > 0 && achieved_snr.minCoeff() < 0.0)
            throw std::invalid_argument("metrics: achieved SNR must be nonnegative");
        MetricsRecord out;
        out.total_power = total_power;
        out.per_user_rate = achieved_snr.unaryExpr([](double s) { return std::log2(1.0 + s); });
        out.eta = out.sum_rate() / total_power;
        out.ser = ser;
        return out;
    }

    MetricsRecord metrics(const PrecoderOutput &precoder, const RVector &achieved_snr, SerEstimate ser)
    {
        return metrics_for_power(total_power(precoder), achieved_snr, ser);
    }

} // namespace symprec
