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

#ifndef SYMPREC_TESTS_SUPPORT_HPP
#define SYMPREC_TESTS_SUPPORT_HPP

#include "symprec/channel.hpp"
#include "symprec/constellation.hpp"
#include "symprec/qos.hpp"

#include <random>
#include <vector>

namespace symprec::testing
{
    // Test-side generator, deliberately separate from the library RNG
    class Draw
    {
    public:
        explicit Draw(std::uint64_t seed) : engine_(seed) {}

        double uniform(double lo = 0.0, double hi = 1.0)
        {
            return std::uniform_real_distribution<double>(lo, hi)(engine_);
        }

        int integer(int lo, int hi)
        {
            return std::uniform_int_distribution<int>(lo, hi)(engine_);
        }

        cplx gaussian()
        {
            std::normal_distribution<double> n(0.0, std::sqrt(0.5));
            const double re = n(engine_);
            return {re, n(engine_)};
        }

        CMatrix matrix(int rows, int cols)
        {
            CMatrix m(rows, cols);
            for (int r = 0; r < rows; ++r)
                for (int c = 0; c < cols; ++c)
                    m(r, c) = gaussian();
            return m;
        }

        ChannelMatrix channel(int users, int antennas) { return ChannelMatrix(matrix(users, antennas)); }

        SymbolVector symbols(int users, int order)
        {
            std::vector<int> idx(static_cast<std::size_t>(users));
            for (int &i : idx)
                i = integer(0, order - 1);
            return SymbolVector(idx, order);
        }

        QosTargets snr_targets(int users, double lo, double hi)
        {
            std::vector<double> z(static_cast<std::size_t>(users));
            for (double &v : z)
                v = uniform(lo, hi);
            return QosTargets(z);
        }

    private:
        std::mt19937_64 engine_;
    };

    inline double angle_between(cplx a, cplx b)
    {
        return std::abs(std::arg(a * std::conj(b)));
    }

} // namespace symprec::testing

#endif
