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

#ifndef SYMPREC_DOWNLINK_PRECODERS_HPP
#define SYMPREC_DOWNLINK_PRECODERS_HPP

#include "symprec/channel.hpp"
#include "symprec/constellation.hpp"
#include "symprec/qos.hpp"

#include <array>
#include <optional>
#include <vector>

namespace symprec
{
    // W (nt x K) with unit-norm columns and per-user powers p_k
    struct PerUserPrecoder
    {
        CMatrix W;
        RVector powers;

        double total_power() const { return powers.sum(); }
        // W diag(sqrt(p))
        CMatrix scaled() const;
    };

    // Builds a PerUserPrecoder from an unnormalized W: columns are normalized and their
    // squared norms become the powers.
    PerUserPrecoder from_unnormalized(const CMatrix &W);

    // ------------------------------------------------------------------------
    // Matched filter and correlation-rotation zero forcing
    // ------------------------------------------------------------------------

    // Column k = h_k^H / |h_k|. Powers are left empty.
    PerUserPrecoder nmrt(const ChannelMatrix &H);

    struct CrzfPrecoder
    {
        PerUserPrecoder precoder; // unit columns; powers carry gamma^2 |col|^2
        CMatrix rotation;         // R_phi
        double gamma = 0.0;

        // gamma H^H (H H^H)^{-1} R_phi
        CMatrix unnormalized() const { return precoder.scaled(); }
    };

    // Users closer than this in |rho| are rejected by CRZF (zero-forcing step breaks down)
    inline constexpr double kCrzfColinearityLimit = 0.999;

    // W = gamma H^H (H H^H)^{-1} R_phi with R_phi(j,k) = rho_jk exp(i phi), where phi
    // rotates rho_jk d_k onto arg d_j, and gamma normalizes tr(W W^H) to the budget.
    CrzfPrecoder crzf(const ChannelMatrix &H, const SymbolVector &d, double budget);

    // Smallest CRZF budget for which every user's noiseless received SNR reaches zeta_j
    double crzf_qos_budget(const ChannelMatrix &H, const SymbolVector &d, const QosTargets &qos);

    // ------------------------------------------------------------------------
    // Plane rotations
    // ------------------------------------------------------------------------

    // Rotation in the (b_k, b_j) plane, 0 <= j < k < K (zero-based):
    //   R(j,j) = R(k,k) = cos a,  R(j,k) = -sin a e^{-i delta},  R(k,j) = sin a e^{i delta}
    struct RotationParams
    {
        int k = 1;
        int j = 0;
        double alpha = 0.0;
        double delta = 0.0;
    };

    CMatrix givens_rotation(const RotationParams &params, int dimension);

    // B <- B R_kj, touching only columns j and k
    void apply_plane_rotation(CMatrix &B, const RotationParams &params);

    // ------------------------------------------------------------------------
    // Pairwise rotation equations
    //
    //   xi'_kk d_k = xi_kk cos(a) d_k - xi_kj sin(a) e^{-i delta} d_j
    //   xi'_jj d_j = xi_jk sin(a) e^{i delta} d_k + xi_jj cos(a) d_j
    //
    // The unknowns are (a, delta) and the real amplitudes xi'_kk, xi'_jj. A root is a pair
    // (a, delta) for which both right-hand sides are positive real multiples of their
    // symbols; the multiples are the amplitudes.
    // ------------------------------------------------------------------------

    struct XiBlock
    {
        cplx kk;
        cplx kj;
        cplx jk;
        cplx jj;
    };

    struct RotationTargets
    {
        double kk = 0.0;
        double jj = 0.0;
    };

    // sqrt(|xi_kk|^2 + |xi_kj|^2) and sqrt(|xi_jj|^2 + |xi_jk|^2)
    RotationTargets default_rotation_targets(const XiBlock &xi);

    // Right-hand sides of the pair equations rotated into the symbol frames:
    // {conj(d_k) rhs_k, conj(d_j) rhs_j}. Real parts are the amplitudes, imaginary parts
    // the residuals.
    std::array<cplx, 2> rotation_pair_frames(const XiBlock &xi, const PskSymbol &dk, const PskSymbol &dj,
                                             double alpha, double delta);

    struct PairRotation
    {
        double alpha = 0.0;
        double delta = 0.0;
        double xi_kk = 0.0; // achieved amplitude for user k
        double xi_jj = 0.0; // achieved amplitude for user j
        double residual = 0.0;
        int backoff_steps = 0; // targets were scaled by 0.9^backoff_steps
    };

    struct RotationSolverOptions
    {
        int grid = 16;                  // multi-start grid per axis
        int max_newton_steps = 60;
        double residual_tolerance = 1e-8;
        double backoff_factor = 0.9;
        int max_backoff_steps = 20;
    };

    // Solves the pair equations. Among all roots with positive amplitudes the one with the
    // largest min(xi'_kk, xi'_jj) is returned. Targets are backed off geometrically until
    // that root meets them; nullopt if it never does (the plane stays unrotated).
    std::optional<PairRotation> solve_rotation_pair(const XiBlock &xi, const PskSymbol &dk, const PskSymbol &dj,
                                                    std::optional<RotationTargets> targets = std::nullopt,
                                                    const RotationSolverOptions &options = {});

    // ------------------------------------------------------------------------
    // Constructive-interference MRT
    // ------------------------------------------------------------------------

    // Powers under the all-constructive amplitude model: solve M s = sqrt(zeta) with
    // M_jk = |h_j| |rho_jk|, p = s^2. Falls back to equal powers
    // p_k = max_j zeta_j / (|h_j|^2 K) when the solve fails or any s_k < 0.
    struct PowerAllocation
    {
        RVector powers;
        bool fallback = false;
    };

    PowerAllocation constructive_power_allocation(const ChannelMatrix &H, const QosTargets &qos);

    struct CimrtStep
    {
        RotationParams params; // alpha/delta zero when rejected
        XiBlock xi;
        std::optional<PairRotation> solution;
        CMatrix b_before;
        CMatrix b_after;
    };

    struct CimrtResult
    {
        PerUserPrecoder precoder;
        SvdFactors factors;
        CMatrix b_prime;
        std::vector<CimrtStep> steps;
        bool fallback_power = false;
    };

    CimrtResult cimrt(const ChannelMatrix &H, const SymbolVector &d, const QosTargets &qos,
                      const RotationSolverOptions &options = {});

} // namespace symprec

#endif
