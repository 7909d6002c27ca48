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

#ifndef SYMPREC_RNG_HPP
#define SYMPREC_RNG_HPP

#include "symprec/common.hpp"

#include <cstdint>
#include <random>

namespace symprec
{
    // SplitMix64 finalizer (Steele, Lea, Flood 2014). Bit-exact on every platform.
    std::uint64_t splitmix64(std::uint64_t x);

    // Sub-seed for stream `stream` of a master seed:
    //   derive_seed(m, s) = splitmix64(m ^ splitmix64(s + 0x9E3779B97F4A7C15))
    std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream);

    // Seedable random stream. The engine is std::mt19937_64 (fully specified by the
    // standard); uniform and Gaussian transforms are implemented here rather than via
    // <random> distributions, whose output is implementation defined.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed);

        std::uint64_t next_u64();

        // Uniform on [0, 1) with 53 random bits
        double uniform();

        // Standard normal (Box-Muller, pairs cached)
        double normal();

        // Circularly-symmetric complex Gaussian with E|z|^2 = variance
        cplx complex_normal(double variance = 1.0);

        // Uniform integer in [0, n), unbiased
        int uniform_int(int n);

        // Independent child stream
        Rng split(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream)); }

        std::uint64_t seed() const { return seed_; }

    private:
        std::uint64_t seed_;
        std::mt19937_64 engine_;
        bool has_spare_ = false;
        double spare_ = 0.0;
    };

} // namespace symprec

#endif
