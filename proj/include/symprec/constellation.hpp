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

#ifndef SYMPREC_CONSTELLATION_HPP
#define SYMPREC_CONSTELLATION_HPP

#include "symprec/common.hpp"

#include <cstddef>
#include <vector>

namespace symprec
{
    // True for M >= 2 and M a power of two
    bool is_valid_order(int order);

    // M-PSK symbol d_m = exp(i 2 pi m / M). Axis points (multiples of pi/2) are exact.
    class PskSymbol
    {
    public:
        PskSymbol(int index, int order);

        int index() const { return index_; }
        int order() const { return order_; }
        cplx value() const { return value_; }
        double phase() const; // in (-pi, pi]

        bool operator==(const PskSymbol &other) const = default;

    private:
        int index_;
        int order_;
        cplx value_;
    };

    PskSymbol mpsk_symbol(int index, int order);

    // Phase of exp(i 2 pi (a - b) / M), computed on indices so equal symbols give exactly 1
    cplx phase_difference(const PskSymbol &a, const PskSymbol &b);

    // K symbols sharing one modulation order
    class SymbolVector
    {
    public:
        SymbolVector(std::vector<int> indices, int order);

        std::size_t size() const { return symbols_.size(); }
        int order() const { return order_; }
        const PskSymbol &operator[](std::size_t j) const { return symbols_[j]; }
        const std::vector<PskSymbol> &symbols() const { return symbols_; }
        std::vector<int> indices() const;
        CVector values() const;

    private:
        int order_;
        std::vector<PskSymbol> symbols_;
    };

    // Angular sector [arg d - pi/M, arg d + pi/M] around `target`, boundary inclusive.
    // Throws std::invalid_argument for a zero point.
    bool detection_region_contains(const PskSymbol &target, cplx point);

    // Constructive-interference predicate: the contribution psi * interferer, as seen by the
    // user whose symbol is `target`, lies in the target's detection region and matches its
    // real/imaginary signs. A zero component of the target carries no quadrant information
    // and its sign condition is skipped.
    bool is_constructive(cplx psi, const PskSymbol &interferer, const PskSymbol &target);

    // Rotation that moves rho * d_i onto the phase of d_j: arg d_j - arg(rho d_i), in (-pi, pi]
    double relative_phase(cplx rho, const PskSymbol &d_i, const PskSymbol &d_j);

    // Diagonal phase alignment A with A(j,j) = exp(i (arg ref - arg d_j))
    struct AlignmentMatrix
    {
        CVector diag;
        PskSymbol reference;

        CMatrix dense() const;

        // A * H (row j of H scaled by diag(j))
        CMatrix apply(const CMatrix &H) const;
    };

    AlignmentMatrix alignment_matrix(const SymbolVector &symbols, const PskSymbol &reference);

} // namespace symprec

#endif
