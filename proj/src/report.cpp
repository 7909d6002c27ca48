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

#include "symprec/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace symprec
{
    std::string format_number(double value)
    {
        if (std::isnan(value))
            return "nan";
        if (std::isinf(value))
            return value > 0 ? "inf" : "-inf";
        char buf[64];
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
        return std::string(buf, ptr);
    }

    std::string csv_header()
    {
        return "technique,axis_name,axis_value,mean_power,mean_sum_rate,eta,ser,failures,trials,ci_halfwidth_eta";
    }

    std::string sweep_csv(const SweepResult &result)
    {
        std::string out = csv_header() + "\n";
        for (const TechniquePoint &row : result.rows)
        {
            out += std::string(technique_name(row.technique)) + "," + std::string(axis_name(result.axis)) + "," +
                   format_number(row.axis_value) + "," + format_number(row.mean_power) + "," +
                   format_number(row.mean_sum_rate) + "," + format_number(row.eta) + "," + format_number(row.ser) +
                   "," + std::to_string(row.failures) + "," + std::to_string(row.trials) + "," +
                   format_number(row.ci_halfwidth_eta) + "\n";
        }
        return out;
    }

    std::string gnuplot_script(const SweepResult &result, const std::string &csv_path)
    {
        std::vector<std::string_view> names;
        for (const TechniquePoint &row : result.rows)
            if (std::find(names.begin(), names.end(), technique_name(row.technique)) == names.end())
                names.push_back(technique_name(row.technique));
        std::string list;
        for (const auto n : names)
            list += (list.empty() ? "" : " ") + std::string(n);

        const bool rate_axis = result.axis == SweepAxis::TargetRate;
        const std::string stem = csv_path.size() > 4 && csv_path.substr(csv_path.size() - 4) == ".csv"
                                     ? csv_path.substr(0, csv_path.size() - 4)
                                     : csv_path;
        std::ostringstream os;
        os << "# gnuplot script for " << csv_path << "\n";
        os << "set datafile separator ','\n";
        os << "set terminal pngcairo size 900,600\n";
        os << "set key outside right\n";
        os << "set grid\n";
        os << "techniques = \"" << list << "\"\n";
        os << "set xlabel '" << (rate_axis ? "target rate (bit/symbol)" : "average SNR gamma_0 (dB)") << "'\n";
        os << "set ylabel 'energy efficiency (sum rate / total power)'\n";
        os << "set output '" << stem << "_eta.png'\n";
        os << "plot for [t in techniques] '" << csv_path
           << "' using (strcol(1) eq t ? $3 : NaN):6:10 with yerrorlines title t\n";
        if (rate_axis)
        {
            os << "set ylabel 'mean transmit power'\n";
            os << "set logscale y\n";
            os << "set output '" << stem << "_power.png'\n";
            os << "plot for [t in techniques] '" << csv_path
               << "' using (strcol(1) eq t ? $3 : NaN):4 with linespoints title t\n";
        }
        else
        {
            os << "set ylabel 'symbol error rate'\n";
            os << "set logscale y\n";
            os << "set output '" << stem << "_ser.png'\n";
            os << "plot for [t in techniques] '" << csv_path
               << "' using (strcol(1) eq t ? $3 : NaN):7 with linespoints title t\n";
        }
        return os.str();
    }

} // namespace symprec
