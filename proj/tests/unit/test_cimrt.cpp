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

#include "oracles/support.hpp"

#include "symprec/downlink_precoders.hpp"

#include <catch_amalgamated.hpp>

using namespace symprec;
using Catch::Approx;

namespace
{
    double unitarity_error(const CMatrix &B)
    {
        return (B.adjoint() * B - CMatrix::Identity(B.cols(), B.cols())).cwiseAbs().maxCoeff();
    }

    CVector noiseless(const ChannelMatrix &H, const PerUserPrecoder &p, const SymbolVector &d)
    {
        return H.entries() * p.scaled() * d.values();
    }
}

TEST_CASE("CIMRT on orthogonal equal-norm channels is nMRT", "[cimrt]")
{
    CMatrix h = CMatrix::Zero(3, 4);
    h(0, 1) = 2.0;
    h(1, 0) = cplx(0, 2);
    h(2, 3) = std::polar(2.0, 0.3);
    const ChannelMatrix H(h);
    const SymbolVector d({0, 1, 2}, 4);
    const CimrtResult r = cimrt(H, d, QosTargets({1.0, 2.0, 3.0}));
    for (const CimrtStep &s : r.steps)
    {
        CHECK(std::abs(s.xi.kj) < 1e-15);
        CHECK(std::abs(s.xi.jk) < 1e-15);
        CHECK(s.params.alpha == 0.0);
    }
    const CMatrix overlap = r.precoder.W.adjoint() * nmrt(H).W;
    for (int k = 0; k < 3; ++k)
        CHECK(std::abs(overlap(k, k)) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("CIMRT two-user example", "[cimrt]")
{
    CMatrix h(2, 2);
    h << 1.0, 0.0, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    const ChannelMatrix H(h);
    const SymbolVector d({0, 1}, 4);
    const QosTargets q({1.0, 1.0});
    const CimrtResult r = cimrt(H, d, q);
    const CVector y = noiseless(H, r.precoder, d);

    // Closed form of the rotation-free solution: amplitudes s = 2 - sqrt(2) from
    // (1 + 1/sqrt2) s = 1, y_1 = s (1 + i/sqrt2), y_2 = s (1/sqrt2 + i)
    const double s = 2.0 - std::sqrt(2.0);
    CHECK(std::abs(y(0) - s * cplx(1.0, 1 / std::sqrt(2.0))) < 1e-9);
    CHECK(std::abs(y(1) - s * cplx(1 / std::sqrt(2.0), 1.0)) < 1e-9);
    CHECK(detection_region_contains(d[0], y(0)));
    CHECK(detection_region_contains(d[1], y(1)));
    CHECK(unitarity_error(r.b_prime) < 1e-10);
}

TEST_CASE("CIMRT two-user example reaches the SNR targets", "[cimrt][!mayfail]")
{
    CMatrix h(2, 2);
    h << 1.0, 0.0, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    const ChannelMatrix H(h);
    const SymbolVector d({0, 1}, 4);
    const CimrtResult r = cimrt(H, d, QosTargets({1.0, 1.0}));
    const CVector y = noiseless(H, r.precoder, d);
    CHECK(std::abs(y(0)) >= 1.0 - 1e-9);
    CHECK(std::abs(y(1)) >= 1.0 - 1e-9);
}

TEST_CASE("CIMRT rotations keep B' unitary, act locally and solve their equations", "[cimrt]")
{
    testing::Draw draw(51);
    int accepted = 0;
    for (int n = 0; n < 150; ++n)
    {
        const int K = draw.integer(2, 4);
        const ChannelMatrix H = draw.channel(K, 4);
        const SymbolVector d = draw.symbols(K, 4);
        const CimrtResult r = cimrt(H, d, draw.snr_targets(K, 0.5, 8.0));
        REQUIRE(r.steps.size() == static_cast<std::size_t>(K * (K - 1) / 2));
        REQUIRE(unitarity_error(r.b_prime) < 1e-10);
        for (Eigen::Index k = 0; k < r.precoder.W.cols(); ++k)
            REQUIRE(std::abs(r.precoder.W.col(k).norm() - 1.0) < 1e-10);
        std::size_t idx = 0;
        for (int j = 0; j < K; ++j)
        {
            for (int k = j + 1; k < K; ++k, ++idx)
            {
                const CimrtStep &s = r.steps[idx];
                REQUIRE(s.params.j == j);
                REQUIRE(s.params.k == k);
                REQUIRE(unitarity_error(s.b_after) < 1e-10);
                for (int c = 0; c < K; ++c)
                    if (c != j && c != k)
                        REQUIRE(s.b_after.col(c) == s.b_before.col(c));
                if (!s.solution)
                {
                    REQUIRE(s.b_after == s.b_before);
                    continue;
                }
                ++accepted;
                const auto f = rotation_pair_frames(s.xi, d[static_cast<std::size_t>(k)],
                                                    d[static_cast<std::size_t>(j)], s.params.alpha, s.params.delta);
                REQUIRE(std::abs(f[0].imag()) < 1e-8);
                REQUIRE(std::abs(f[1].imag()) < 1e-8);
            }
        }
    }
    CHECK(accepted > 0);
}

TEST_CASE("CIMRT powers come from the constructive allocation", "[cimrt]")
{
    testing::Draw draw(52);
    for (int n = 0; n < 50; ++n)
    {
        const int K = draw.integer(1, 4);
        const ChannelMatrix H = draw.channel(K, 4);
        const QosTargets q = draw.snr_targets(K, 0.5, 8.0);
        const CimrtResult r = cimrt(H, draw.symbols(K, 8), q);
        const PowerAllocation a = constructive_power_allocation(H, q);
        REQUIRE(r.precoder.powers == a.powers);
        REQUIRE(r.fallback_power == a.fallback);
    }
    testing::Draw more(53);
    CHECK_THROWS_AS(cimrt(more.channel(3, 2), more.symbols(3, 4), QosTargets({1.0, 1.0, 1.0})), DegenerateChannel);
}

TEST_CASE("CRZF outputs are always constructive", "[crzf]")
{
    testing::Draw draw(54);
    for (int n = 0; n < 1000; ++n)
    {
        const int K = draw.integer(1, 4);
        const ChannelMatrix H = draw.channel(K, 4);
        const SymbolVector d = draw.symbols(K, 4);
        try
        {
            const CrzfPrecoder c = crzf(H, d, 1.0);
            const CVector y = noiseless(H, c.precoder, d);
            for (int j = 0; j < K; ++j)
                REQUIRE(detection_region_contains(d[static_cast<std::size_t>(j)], y(j)));
        }
        catch (const DegenerateChannel &)
        {
        }
    }
}

TEST_CASE("CIMRT outputs are constructive on random QPSK instances", "[cimrt][!mayfail]")
{
    testing::Draw draw(55);
    const int instances = 1000;
    int failures = 0;
    for (int n = 0; n < instances; ++n)
    {
        const int K = draw.integer(2, 4);
        const ChannelMatrix H = draw.channel(K, 4);
        const SymbolVector d = draw.symbols(K, 4);
        const CimrtResult r = cimrt(H, d, QosTargets::uniform_rate(static_cast<std::size_t>(K), 2.0));
        const CVector y = noiseless(H, r.precoder, d);
        for (int j = 0; j < K; ++j)
        {
            if (!detection_region_contains(d[static_cast<std::size_t>(j)], y(j)))
            {
                ++failures;
                break;
            }
        }
    }
    INFO("instances with at least one user outside its region: " << failures << " / " << instances);
    CHECK(failures < instances / 100);
}
