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

#ifndef SYMPREC_COMMON_HPP
#define SYMPREC_COMMON_HPP

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace symprec
{
    using cplx = std::complex<double>;
    using CMatrix = Eigen::MatrixXcd;
    using CVector = Eigen::VectorXcd;
    using CRowVector = Eigen::RowVectorXcd;
    using RMatrix = Eigen::MatrixXd;
    using RVector = Eigen::VectorXd;

    inline constexpr double kPi = 3.14159265358979323846;

    // Relative singular-value floor below which a channel is treated as rank deficient
    inline constexpr double kRankTolerance = 1e-10;

    // Channel is rank deficient or otherwise unusable for the requested precoder
    class DegenerateChannel : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Constraint system has no (numerically reliable) solution
    class Infeasible : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Wraps an angle into (-pi, pi]
    double wrap_angle(double angle);

} // namespace symprec

#endif
