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

#include "oracles/oracles.hpp"
#include "oracles/support.hpp"

#include "symprec/linkmodel.hpp"
#include "symprec/multicast_duality.hpp"

#include <catch_amalgamated.hpp>

using namespace symprec;
using Catch::Approx;

namespace
{
    CVector targets_times(const QosTargets &q, const SymbolVector &d)
    {
        CVector b(static_cast<Eigen::Index>(d.size()));
        for (std::size_t j = 0; j < d.size(); ++j)
            b(static_cast<Eigen::Index>(j)) = std::sqrt(q.snr(j)) * d[j].value();
        return b;
    }

    SymbolVector repeated(const PskSymbol &s, std::size_t K)
    {
        return SymbolVector(std::vector<int>(K, s.index()), s.order());
    }
}

TEST_CASE("CCMC single user", "[ccmc]")
{
    CMatrix h(1, 3);
    h << 1.0, cplx(0, -2), 2.0;
    const PskSymbol d = mpsk_symbol(3, 8);
    const MulticastPrecoder m = ccmc(ChannelMatrix(h), d, QosTargets({2.0}));
    const CVector expected = std::sqrt(2.0) * d.value() * h.adjoint() / 9.0;
    CHECK((m.w - expected).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(m.power == Approx(2.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("CCMC on orthonormal channels", "[ccmc]")
{
    const MulticastPrecoder m = ccmc(ChannelMatrix(CMatrix::Identity(2, 2)), mpsk_symbol(0, 4), QosTargets({1.0, 1.0}));
    CHECK(std::abs(m.w(0) - 1.0) < 1e-15);
    CHECK(std::abs(m.w(1) - 1.0) < 1e-15);
    CHECK(m.power == Approx(2.0));
}

TEST_CASE("CCMC two-by-two example matches a brute-force minimizer", "[ccmc]")
{
    CMatrix h(2, 2);
    h << 1.0, 0.0, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    const PskSymbol d = mpsk_symbol(0, 4);
    const QosTargets q({1.0, 1.0});
    const MulticastPrecoder m = ccmc(ChannelMatrix(h), d, q);
    const double brute = oracle::brute_force_min_power(h, targets_times(q, repeated(d, 2)));
    CHECK(m.power == Approx(brute).epsilon(0.01));
}

TEST_CASE("CCMC satisfies every equality constraint with the least power", "[ccmc]")
{
    testing::Draw draw(61);
    for (int n = 0; n < 500; ++n)
    {
        const int K = draw.integer(1, 4);
        const int M = n % 2 ? 4 : 8;
        const ChannelMatrix H = draw.channel(K, 4);
        const PskSymbol d = mpsk_symbol(draw.integer(0, M - 1), M);
        const QosTargets q = draw.snr_targets(K, 0.5, 8.0);
        const MulticastPrecoder m = ccmc(H, d, q);
        const CVector y = H.entries() * m.w;
        for (int j = 0; j < K; ++j)
        {
            REQUIRE(testing::angle_between(y(j), d.value()) < 1e-9);
            REQUIRE(std::abs(std::norm(y(j)) / q.snr(static_cast<std::size_t>(j)) - 1.0) < 1e-8);
        }
        const CVector reference = oracle::least_norm(H.entries(), targets_times(q, repeated(d, static_cast<std::size_t>(K))));
        REQUIRE((m.w - reference).norm() < 1e-9 * reference.norm());

        // w lies in the row space of H: w = H^H nu, nothing left after projecting
        REQUIRE((m.w - H.entries().adjoint() * m.nu).norm() < 1e-10 * m.w.norm());
        const CMatrix proj = H.entries().adjoint() * H.entries().completeOrthogonalDecomposition().pseudoInverse().adjoint();
        REQUIRE((m.w - proj * m.w).norm() < 1e-9 * m.w.norm());
        REQUIRE(m.power == Approx(m.w.squaredNorm()).epsilon(1e-12));

        const RVector a = m.lagrange_alpha();
        const RVector mu = m.lagrange_mu();
        for (int j = 0; j < K; ++j)
            REQUIRE(std::abs(m.nu(j) - cplx(-0.5 * a(j), -0.5 * mu(j))) < 1e-15);

        // Multicast-as-downlink reading of the received signal
        const CMatrix rho = cross_correlation(H);
        for (int j = 0; j < K; ++j)
        {
            cplx sum = 0.0;
            for (int k = 0; k < K; ++k)
                sum += H.row_norms()(k) * m.nu(k) * std::conj(d.value()) * rho(j, k);
            REQUIRE(std::abs(y(j) - H.row_norms()(j) * sum * d.value()) < 1e-9);
        }
    }
}

TEST_CASE("CCMC rejects degenerate channels", "[ccmc]")
{
    CMatrix dup(2, 3);
    dup << 1, 2, 3, 2, 4, 6;
    CHECK_THROWS_AS(ccmc(ChannelMatrix(dup), mpsk_symbol(0, 4), QosTargets({1.0, 1.0})), DegenerateChannel);
    CHECK_THROWS_AS(ccmc(ChannelMatrix(CMatrix::Ones(3, 2)), mpsk_symbol(0, 4), QosTargets({1.0, 1.0, 1.0})),
                    DegenerateChannel);
    CHECK_THROWS_AS(ccmc(ChannelMatrix(CMatrix::Identity(2, 2)), mpsk_symbol(0, 4), QosTargets({1.0})),
                    std::invalid_argument);
}

TEST_CASE("CIDC with a common symbol is CCMC", "[cidc]")
{
    testing::Draw draw(62);
    for (int n = 0; n < 100; ++n)
    {
        const int K = draw.integer(1, 4);
        const ChannelMatrix H = draw.channel(K, 4);
        const PskSymbol ref = mpsk_symbol(draw.integer(0, 7), 8);
        const QosTargets q = draw.snr_targets(K, 0.5, 8.0);
        const MulticastPrecoder a = cidc(H, repeated(ref, static_cast<std::size_t>(K)), q, ref);
        const MulticastPrecoder b = ccmc(H, ref, q);
        REQUIRE(a.w == b.w);
        REQUIRE(a.nu == b.nu);
    }
}

TEST_CASE("CIDC on orthonormal channels", "[cidc]")
{
    const MulticastPrecoder m = cidc(ChannelMatrix(CMatrix::Identity(2, 2)), SymbolVector({0, 1}, 4), QosTargets({1.0, 1.0}));
    CHECK(std::abs(m.w(0) - 1.0) < 1e-15);
    CHECK(std::abs(m.w(1) - cplx(0.0, 1.0)) < 1e-15);
    CHECK(m.power == Approx(2.0));
}

TEST_CASE("CIDC delivers sqrt(zeta_j) d_j and is the aligned-channel multicast", "[cidc]")
{
    testing::Draw draw(63);
    for (int n = 0; n < 500; ++n)
    {
        const int K = draw.integer(1, 4);
        const int M = n % 2 ? 4 : 8;
        const ChannelMatrix H = draw.channel(K, 4);
        const SymbolVector d = draw.symbols(K, M);
        const QosTargets q = draw.snr_targets(K, 0.5, 8.0);
        const PskSymbol ref = mpsk_symbol(draw.integer(0, M - 1), M);
        const MulticastPrecoder m = cidc(H, d, q, ref);
        const CVector y = H.entries() * m.w;
        const CVector b = targets_times(q, d);
        REQUIRE((y - b).cwiseAbs().maxCoeff() < 1e-9);

        const ChannelMatrix aligned(alignment_matrix(d, ref).apply(H.entries()));
        REQUIRE((m.w - ccmc(aligned, ref, q).w).cwiseAbs().maxCoeff() < 1e-10);

        const CVector reference = oracle::least_norm(H.entries(), b);
        REQUIRE((m.w - reference).norm() < 1e-9 * reference.norm());

        // Reference invariance
        const MulticastPrecoder other = cidc(H, d, q, mpsk_symbol(draw.integer(0, M - 1), M));
        REQUIRE(std::abs(other.power - m.power) < 1e-9 * m.power);
        REQUIRE((H.entries() * other.w - y).cwiseAbs().maxCoeff() < 1e-10 * y.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("noiseless CIDC detection is error free", "[cidc]")
{
    testing::Draw draw(64);
    for (int n = 0; n < 4000; ++n)
    {
        const int M = n % 2 ? 4 : 8;
        const int K = draw.integer(1, 4);
        const ChannelMatrix H = draw.channel(K, 4);
        const SymbolVector d = draw.symbols(K, M);
        const MulticastPrecoder m = cidc(H, d, draw.snr_targets(K, 0.5, 8.0));
        const ReceivedVector y = received_signal(H, SingleVectorPrecoder{m.w}, d);
        REQUIRE(detect(y, M).indices == d.indices());
    }
}
