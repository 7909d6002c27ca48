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

#include "symprec/constellation.hpp"

#include <cmath>

namespace symprec
{
    namespace
    {
        // Components below this are treated as exact zeros in the sign conditions
        constexpr double kZeroComponent = 1e-12;
        // Slack on the inclusive region boundary (atan2 rounding)
        constexpr double kBoundarySlack = 1e-12;

        cplx unit_phasor(int index, int order)
        {
            // Exact values on the axes: the sign conditions depend on them being zero
            if ((4 * index) % order == 0)
            {
                switch ((4 * index / order) % 4)
                {
                case 0:
                    return {1.0, 0.0};
                case 1:
                    return {0.0, 1.0};
                case 2:
                    return {-1.0, 0.0};
                default:
                    return {0.0, -1.0};
                }
            }
            return std::polar(1.0, 2.0 * kPi * index / order);
        }

        bool sign_compatible(double target, double received)
        {
            if (std::abs(target) <= kZeroComponent)
                return true;
            return target * received > 0.0;
        }
    } // namespace

    double wrap_angle(double angle)
    {
        double a = std::remainder(angle, 2.0 * kPi); // [-pi, pi]
        if (a <= -kPi)
            a += 2.0 * kPi;
        return a;
    }

    bool is_valid_order(int order)
    {
        return order >= 2 && (order & (order - 1)) == 0;
    }

    PskSymbol::PskSymbol(int index, int order) : index_(index), order_(order)
    {
        if (!is_valid_order(order))
            throw std::invalid_argument("PSK order must be a power of two >= 2, got " + std::to_string(order));
        if (index < 0 || index >= order)
            throw std::invalid_argument("PSK index " + std::to_string(index) + " out of range [0, " + std::to_string(order) + ")");
        value_ = unit_phasor(index, order);
    }

    double PskSymbol::phase() const
    {
        return wrap_angle(2.0 * kPi * index_ / order_);
    }

    PskSymbol mpsk_symbol(int index, int order) { return PskSymbol(index, order); }

    cplx phase_difference(const PskSymbol &a, const PskSymbol &b)
    {
        if (a.order() != b.order())
            throw std::invalid_argument("phase_difference: mixed modulation orders");
        const int m = ((a.index() - b.index()) % a.order() + a.order()) % a.order();
        return unit_phasor(m, a.order());
    }

    SymbolVector::SymbolVector(std::vector<int> indices, int order) : order_(order)
    {
        if (indices.empty())
            throw std::invalid_argument("SymbolVector: no symbols");
        symbols_.reserve(indices.size());
        for (int m : indices)
            symbols_.emplace_back(m, order);
    }

    std::vector<int> SymbolVector::indices() const
    {
        std::vector<int> out;
        out.reserve(symbols_.size());
        for (const auto &s : symbols_)
            out.push_back(s.index());
        return out;
    }

    CVector SymbolVector::values() const
    {
        CVector v(static_cast<Eigen::Index>(symbols_.size()));
        for (std::size_t j = 0; j < symbols_.size(); ++j)
            v(static_cast<Eigen::Index>(j)) = symbols_[j].value();
        return v;
    }

    bool detection_region_contains(const PskSymbol &target, cplx point)
    {
        if (point == cplx(0.0, 0.0))
            throw std::invalid_argument("detection_region_contains: zero point has no angle");
        const double distance = std::abs(wrap_angle(std::arg(point) - target.phase()));
        return distance <= kPi / target.order() + kBoundarySlack;
    }

    bool is_constructive(cplx psi, const PskSymbol &interferer, const PskSymbol &target)
    {
        if (interferer.order() != target.order())
            throw std::invalid_argument("is_constructive: mixed modulation orders");
        if (!std::isfinite(psi.real()) || !std::isfinite(psi.imag()))
            throw std::invalid_argument("is_constructive: psi must be finite");
        const cplx received = psi * interferer.value();
        if (received == cplx(0.0, 0.0))
            return false;
        if (!detection_region_contains(target, received))
            return false;
        const cplx d = target.value();
        return sign_compatible(d.real(), received.real()) && sign_compatible(d.imag(), received.imag());
    }

    double relative_phase(cplx rho, const PskSymbol &d_i, const PskSymbol &d_j)
    {
        if (rho == cplx(0.0, 0.0))
            throw std::invalid_argument("relative_phase: zero correlation has no phase");
        return wrap_angle(d_j.phase() - std::arg(rho * d_i.value()));
    }

    CMatrix AlignmentMatrix::dense() const
    {
        return diag.asDiagonal();
    }

    CMatrix AlignmentMatrix::apply(const CMatrix &H) const
    {
        if (H.rows() != diag.size())
            throw std::invalid_argument("AlignmentMatrix::apply: row count mismatch");
        return diag.asDiagonal() * H;
    }

    AlignmentMatrix alignment_matrix(const SymbolVector &symbols, const PskSymbol &reference)
    {
        if (symbols.order() != reference.order())
            throw std::invalid_argument("alignment_matrix: reference order differs from symbol order");
        CVector diag(static_cast<Eigen::Index>(symbols.size()));
        for (std::size_t j = 0; j < symbols.size(); ++j)
            diag(static_cast<Eigen::Index>(j)) = phase_difference(reference, symbols[j]);
        return {std::move(diag), reference};
    }

} // namespace symprec
