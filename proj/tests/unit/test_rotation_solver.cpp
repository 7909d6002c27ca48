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

#include "symprec/downlink_precoders.hpp"

#include <catch_amalgamated.hpp>

#include <tuple>

using namespace symprec;
using Catch::Approx;

namespace
{
    std::array<cplx, 2> substitute(const XiBlock &xi, cplx dk, cplx dj, double a, double t)
    {
        const cplx rk = xi.kk * std::cos(a) * dk - xi.kj * std::sin(a) * std::exp(cplx(0, -t)) * dj;
        const cplx rj = xi.jk * std::sin(a) * std::exp(cplx(0, t)) * dk + xi.jj * std::cos(a) * dj;
        return {rk * std::conj(dk), rj * std::conj(dj)};
    }

    double block_scale(const XiBlock &xi)
    {
        return std::abs(xi.kk) + std::abs(xi.kj) + std::abs(xi.jk) + std::abs(xi.jj);
    }
}

TEST_CASE("pair frames match direct substitution", "[rotation]")
{
    testing::Draw draw(41);
    for (int n = 0; n < 100; ++n)
    {
        const XiBlock xi{draw.gaussian(), draw.gaussian(), draw.gaussian(), draw.gaussian()};
        const PskSymbol dk = mpsk_symbol(draw.integer(0, 7), 8);
        const PskSymbol dj = mpsk_symbol(draw.integer(0, 7), 8);
        const double a = draw.uniform(-kPi, kPi), t = draw.uniform(-kPi, kPi);
        const auto lib = rotation_pair_frames(xi, dk, dj, a, t);
        const auto ref = substitute(xi, dk.value(), dj.value(), a, t);
        REQUIRE(std::abs(lib[0] - ref[0]) < 1e-14);
        REQUIRE(std::abs(lib[1] - ref[1]) < 1e-14);
    }
}

TEST_CASE("decoupled pair needs no rotation", "[rotation]")
{
    const XiBlock xi{0.8, 0.0, 0.0, 1.3};
    const auto r = solve_rotation_pair(xi, mpsk_symbol(1, 4), mpsk_symbol(3, 4));
    REQUIRE(r.has_value());
    CHECK(r->alpha == 0.0);
    CHECK(r->delta == 0.0);
    CHECK(r->xi_kk == Approx(0.8));
    CHECK(r->xi_jj == Approx(1.3));
    CHECK(r->backoff_steps == 0);
    CHECK(givens_rotation({1, 0, r->alpha, r->delta}, 2) == CMatrix::Identity(2, 2));
}

TEST_CASE("symmetric coupling is solved to the residual tolerance", "[rotation]")
{
    for (const double phase : {0.0, 0.4, 1.3, -2.0})
    {
        const XiBlock xi{1.0, std::polar(0.3, phase), std::polar(0.3, -phase), 1.0};
        for (int m = 0; m < 4; ++m)
        {
            const PskSymbol dk = mpsk_symbol(m, 4);
            const PskSymbol dj = mpsk_symbol((m + 1) % 4, 4);
            const auto r = solve_rotation_pair(xi, dk, dj);
            REQUIRE(r.has_value());
            const auto f = substitute(xi, dk.value(), dj.value(), r->alpha, r->delta);
            CHECK(std::abs(f[0].imag()) < 1e-8);
            CHECK(std::abs(f[1].imag()) < 1e-8);
            CHECK(f[0].real() == Approx(r->xi_kk).margin(1e-12));
            CHECK(f[1].real() == Approx(r->xi_jj).margin(1e-12));
            CHECK(r->xi_kk > 0.0);
            CHECK(r->xi_jj > 0.0);
            CHECK(r->alpha > -kPi);
            CHECK(r->alpha <= kPi);
            CHECK(r->delta > -kPi);
            CHECK(r->delta <= kPi);
        }
    }
}

TEST_CASE("no root found from a dense Newton grid beats the solver", "[rotation]")
{
    testing::Draw draw(42);
    std::vector<std::tuple<XiBlock, PskSymbol, PskSymbol>> cases;
    for (int n = 0; n < 12; ++n)
        cases.emplace_back(XiBlock{draw.gaussian(), draw.gaussian(), draw.gaussian(), draw.gaussian()},
                           mpsk_symbol(draw.integer(0, 3), 4), mpsk_symbol(draw.integer(0, 3), 4));
    // Blocks met inside CIMRT carry real diagonals, so alpha = 0 is a whole line of roots
    for (int n = 0; n < 4; ++n)
    {
        const SymbolVector d = draw.symbols(3, 8);
        const CimrtResult res = cimrt(draw.channel(3, 4), d, QosTargets({1.0, 2.0, 3.0}));
        for (const CimrtStep &s : res.steps)
            cases.emplace_back(s.xi, d[static_cast<std::size_t>(s.params.k)], d[static_cast<std::size_t>(s.params.j)]);
    }
    int compared = 0;
    for (const auto &[xi, dk, dj] : cases)
    {
        const auto r = solve_rotation_pair(xi, dk, dj, RotationTargets{0.0, 0.0});
        const auto g = oracle::rotation_roots({xi.kk, xi.kj, xi.jk, xi.jj}, dk.value(), dj.value(), 120);
        if (!r)
        {
            CHECK(g.roots == 0);
            continue;
        }
        ++compared;
        CHECK(std::min(r->xi_kk, r->xi_jj) >= g.worst_amplitude - 1e-9 * block_scale(xi));
    }
    CHECK(compared > 12);
}

TEST_CASE("targets are backed off geometrically", "[rotation]")
{
    const XiBlock xi{1.0, std::polar(0.3, 0.4), std::polar(0.3, -0.4), 1.0};
    const PskSymbol dk = mpsk_symbol(0, 4);
    const PskSymbol dj = mpsk_symbol(1, 4);
    const auto free = solve_rotation_pair(xi, dk, dj, RotationTargets{0.0, 0.0});
    REQUIRE(free.has_value());
    const double worst = std::min(free->xi_kk, free->xi_jj);

    // Targets 5% above the best root need exactly one 0.9 back-off step
    const auto one = solve_rotation_pair(xi, dk, dj, RotationTargets{worst * 1.05, worst * 1.05});
    REQUIRE(one.has_value());
    CHECK(one->backoff_steps == 1);

    const auto none = solve_rotation_pair(xi, dk, dj, RotationTargets{worst * 100.0, worst * 100.0});
    CHECK_FALSE(none.has_value());

    CHECK_FALSE(solve_rotation_pair(XiBlock{0.0, 0.0, 0.0, 0.0}, dk, dj).has_value());
    RotationSolverOptions bad;
    bad.backoff_factor = 1.5;
    CHECK_THROWS_AS(solve_rotation_pair(xi, dk, dj, std::nullopt, bad), std::invalid_argument);
    CHECK_THROWS_AS(solve_rotation_pair(xi, dk, mpsk_symbol(0, 8)), std::invalid_argument);
}

TEST_CASE("default targets are the root-sum-square magnitudes", "[rotation]")
{
    const RotationTargets t = default_rotation_targets({cplx(3, 0), cplx(0, 4), cplx(-5, 0), cplx(0, 12)});
    CHECK(t.kk == Approx(5.0));
    CHECK(t.jj == Approx(13.0));
}
