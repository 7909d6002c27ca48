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

#ifndef SYMPREC_REPORT_HPP
#define SYMPREC_REPORT_HPP

#include "symprec/montecarlo.hpp"

#include <string>

namespace symprec
{
    // Shortest round-trip decimal form, '.' separator regardless of locale
    std::string format_number(double value);

    // technique,axis_name,axis_value,mean_power,mean_sum_rate,eta,ser,failures,trials,ci_halfwidth_eta
    std::string csv_header();
    std::string sweep_csv(const SweepResult &result);

    // gnuplot script plotting the CSV next to it
    std::string gnuplot_script(const SweepResult &result, const std::string &csv_path);

} // namespace symprec

#endif
