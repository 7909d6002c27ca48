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

#ifndef SYMPREC_MONTECARLO_HPP
#define SYMPREC_MONTECARLO_HPP

#include "symprec/downlink_precoders.hpp"
#include "symprec/multicast_duality.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace symprec
{
    enum class Technique
    {
        NMRT,
        CRZF,
        CIMRT,
        CCMC,
        CIDC,
        OPTMC
    };

    std::string_view technique_name(Technique t);
    std::optional<Technique> parse_technique(std::string_view name);
    const std::vector<Technique> &all_techniques();

    enum class SweepAxis
    {
        SnrDb,     // points are gamma0 in dB, common target rate fixed
        TargetRate // points are common target rates in bit/symbol, gamma0 fixed
    };

    std::string_view axis_name(SweepAxis axis);

    struct ExperimentConfig
    {
        int users = 0;
        int antennas = 0;
        int order = 4;
        std::vector<Technique> techniques;
        SweepAxis axis = SweepAxis::SnrDb;
        std::vector<double> points;
        double gamma0_db = 10.0;           // used on the rate axis
        std::optional<double> target_rate; // used on the SNR axis; default log2(M)
        std::size_t trials = 2000;
        std::uint64_t master_seed = 1;
        int workers = 0; // 0: OpenMP default

        RotationSolverOptions rotation;
        SdpOptions sdp;

        double default_target_rate() const;

        // Throws std::invalid_argument naming the offending field
        void validate() const;
    };

    // One technique on one trial at one operating point
    struct TrialSample
    {
        bool ok = false;
        double power = 0.0;
        double sum_rate = 0.0;
        int errors = 0;
        int symbols = 0;
    };

    struct TechniquePoint
    {
        Technique technique = Technique::NMRT;
        double axis_value = 0.0;
        double mean_power = 0.0;
        double mean_sum_rate = 0.0;
        double eta = 0.0; // mean_sum_rate / mean_power
        double ser = 0.0; // NaN where undefined (OPT-MC carries no per-user symbols)
        std::size_t failures = 0;
        std::size_t trials = 0;
        double ci_halfwidth_eta = 0.0;
        double ci_halfwidth_power = 0.0;
        double ci_halfwidth_sum_rate = 0.0;
        std::vector<TrialSample> samples; // indexed by trial
    };

    struct SweepResult
    {
        SweepAxis axis = SweepAxis::SnrDb;
        std::uint64_t master_seed = 0;
        std::vector<double> points;
        std::vector<TechniquePoint> rows; // point-major, techniques in config order

        const TechniquePoint &at(Technique t, std::size_t point_index) const;
        std::size_t total_failures() const;
        std::size_t total_trials() const;
    };

    inline constexpr double kConfidenceZ = 1.959963984540054; // 95% two-sided

    // Trial `trial` draws H' ~ CN(0, 1), symbol indices and a noise vector from the stream
    // derive_seed(master_seed, trial). Every operating point and technique of that trial
    // reuses them (paired comparison, common random numbers across points).
    std::vector<TrialSample> run_trial(const ExperimentConfig &config, std::size_t trial);

    // Reference implementation: trials in order on the calling thread
    SweepResult run_sweep_serial(const ExperimentConfig &config);

    // OpenMP over trials; output is bit-identical to run_sweep_serial for any worker count
    SweepResult run_sweep(const ExperimentConfig &config);

    // run_sweep on the target-rate axis
    SweepResult sweep_rate(ExperimentConfig config);

    // Aggregates per-trial samples (laid out [trial][point][technique]) in trial order
    SweepResult aggregate(const ExperimentConfig &config, const std::vector<std::vector<TrialSample>> &per_trial);

    // Paired comparison eta_a - eta_b over trials where both techniques succeeded, with a
    // 95% delta-method half-width
    struct PairedDifference
    {
        double difference = 0.0;
        double halfwidth = 0.0;
        std::size_t pairs = 0;
    };

    PairedDifference paired_eta_difference(const TechniquePoint &a, const TechniquePoint &b);

} // namespace symprec

#endif
