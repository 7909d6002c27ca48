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

#include "symprec/montecarlo.hpp"
#include "symprec/linkmodel.hpp"

#include <cctype>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include <omp.h>

namespace symprec
{
    namespace
    {
        constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

        const std::vector<std::pair<Technique, std::string_view>> &technique_table()
        {
            static const std::vector<std::pair<Technique, std::string_view>> table = {
                {Technique::NMRT, "nMRT"}, {Technique::CRZF, "CRZF"}, {Technique::CIMRT, "CIMRT"},
                {Technique::CCMC, "CCMC"}, {Technique::CIDC, "CIDC"}, {Technique::OPTMC, "OPT-MC"}};
            return table;
        }

        bool needs_row_rank(Technique t)
        {
            return t == Technique::CIMRT || t == Technique::CIDC || t == Technique::CCMC;
        }

        TrialSample per_user_sample(const ChannelMatrix &H, const PerUserPrecoder &p, const SymbolVector &d,
                                    const CVector &noise)
        {
            const PrecoderOutput out = p;
            const ReceivedVector clean = received_signal(H, out, d);
            const ReceivedVector noisy = received_signal(H, out, d, noise);
            const MetricsRecord m = metrics(out, received_snr(clean));
            const SerEstimate ser = count_symbol_errors(detect(noisy, d.order()), d);
            return {true, m.total_power, m.sum_rate(), static_cast<int>(ser.errors), static_cast<int>(ser.symbols)};
        }

        TrialSample single_vector_sample(const ChannelMatrix &H, const CVector &w, const SymbolVector &expected,
                                         const QosTargets &qos, const CVector &noise)
        {
            const PrecoderOutput out = SingleVectorPrecoder{w};
            const ReceivedVector noisy = received_signal(H, out, expected, noise);
            const MetricsRecord m = metrics(out, qos.snr());
            const SerEstimate ser = count_symbol_errors(detect(noisy, expected.order()), expected);
            return {true, m.total_power, m.sum_rate(), static_cast<int>(ser.errors), static_cast<int>(ser.symbols)};
        }

        TrialSample run_technique(Technique t, const ExperimentConfig &config, const ChannelMatrix &H,
                                  const SymbolVector &d, const QosTargets &qos, const CVector &noise)
        {
            switch (t)
            {
            case Technique::NMRT:
            {
                PerUserPrecoder p = nmrt(H);
                p.powers = constructive_power_allocation(H, qos).powers;
                return per_user_sample(H, p, d, noise);
            }
            case Technique::CRZF:
                return per_user_sample(H, crzf(H, d, crzf_qos_budget(H, d, qos)).precoder, d, noise);
            case Technique::CIMRT:
                return per_user_sample(H, cimrt(H, d, qos, config.rotation).precoder, d, noise);
            case Technique::CCMC:
            {
                const MulticastPrecoder m = ccmc(H, d[0], qos);
                const SymbolVector common(std::vector<int>(d.size(), d[0].index()), d.order());
                return single_vector_sample(H, m.w, common, qos, noise);
            }
            case Technique::CIDC:
                return single_vector_sample(H, cidc(H, d, qos).w, d, qos, noise);
            case Technique::OPTMC:
            {
                const CovarianceSolution s = optimal_multicast(H, qos, config.sdp);
                const MetricsRecord m = metrics_for_power(s.power, qos.snr());
                return {true, m.total_power, m.sum_rate(), 0, 0};
            }
            }
            throw std::logic_error("unknown technique");
        }

        struct Moments
        {
            std::size_t n = 0;
            double mean_p = 0.0;
            double mean_r = 0.0;
            double var_p = 0.0;
            double var_r = 0.0;
            double cov = 0.0;
        };

        // Two-pass moments in trial order
        template <typename Power, typename Rate>
        Moments moments(std::size_t count, Power power, Rate rate, const std::vector<bool> &use)
        {
            Moments m;
            for (std::size_t i = 0; i < count; ++i)
            {
                if (!use[i])
                    continue;
                ++m.n;
                m.mean_p += power(i);
                m.mean_r += rate(i);
            }
            if (m.n == 0)
                return m;
            m.mean_p /= static_cast<double>(m.n);
            m.mean_r /= static_cast<double>(m.n);
            if (m.n < 2)
                return m;
            for (std::size_t i = 0; i < count; ++i)
            {
                if (!use[i])
                    continue;
                const double dp = power(i) - m.mean_p;
                const double dr = rate(i) - m.mean_r;
                m.var_p += dp * dp;
                m.var_r += dr * dr;
                m.cov += dp * dr;
            }
            const double denom = static_cast<double>(m.n - 1);
            m.var_p /= denom;
            m.var_r /= denom;
            m.cov /= denom;
            return m;
        }
    } // namespace

    std::string_view technique_name(Technique t)
    {
        for (const auto &[tech, name] : technique_table())
            if (tech == t)
                return name;
        return "?";
    }

    std::optional<Technique> parse_technique(std::string_view name)
    {
        auto lower = [](std::string_view s)
        {
            std::string out;
            for (const char c : s)
                if (c != '-' && c != '_')
                    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
            return out;
        };
        const std::string key = lower(name);
        for (const auto &[tech, label] : technique_table())
            if (lower(label) == key)
                return tech;
        return std::nullopt;
    }

    const std::vector<Technique> &all_techniques()
    {
        static const std::vector<Technique> all = {Technique::NMRT, Technique::CRZF, Technique::CIMRT,
                                                   Technique::CCMC, Technique::CIDC, Technique::OPTMC};
        return all;
    }

    std::string_view axis_name(SweepAxis axis)
    {
        return axis == SweepAxis::SnrDb ? "snr_db" : "target_rate";
    }

    double ExperimentConfig::default_target_rate() const
    {
        return target_rate.value_or(std::log2(static_cast<double>(order)));
    }

    void ExperimentConfig::validate() const
    {
        if (users < 1)
            throw std::invalid_argument("K: must be >= 1");
        if (antennas < 1)
            throw std::invalid_argument("nt: must be >= 1");
        if (!is_valid_order(order))
            throw std::invalid_argument("M: must be a power of two >= 2");
        if (techniques.empty())
            throw std::invalid_argument("techniques: at least one technique is required");
        if (points.empty())
            throw std::invalid_argument(std::string(axis == SweepAxis::SnrDb ? "snr_db" : "rates") +
                                        ": at least one operating point is required");
        if (trials < 1)
            throw std::invalid_argument("trials: must be >= 1");
        if (workers < 0)
            throw std::invalid_argument("workers: must be >= 0");
        for (const Technique t : techniques)
            if (needs_row_rank(t) && users > antennas)
                throw std::invalid_argument("K: " + std::string(technique_name(t)) + " needs K <= nt");
        for (const double p : points)
        {
            if (!std::isfinite(p))
                throw std::invalid_argument(std::string(axis == SweepAxis::SnrDb ? "snr_db" : "rates") +
                                            ": operating points must be finite");
            if (axis == SweepAxis::TargetRate && !(p > 0.0))
                throw std::invalid_argument("rates: target rates must be positive");
        }
        if (!std::isfinite(gamma0_db))
            throw std::invalid_argument("gamma0_db: must be finite");
        if (target_rate && !(*target_rate > 0.0 && std::isfinite(*target_rate)))
            throw std::invalid_argument("target_rate: must be positive");
        if (rotation.grid < 1)
            throw std::invalid_argument("rotation_grid: must be >= 1");
        if (!(sdp.relative_gap > 0.0) || !(sdp.accept_gap >= sdp.relative_gap))
            throw std::invalid_argument("sdp_gap: must be positive");
    }

    const TechniquePoint &SweepResult::at(Technique t, std::size_t point_index) const
    {
        for (const TechniquePoint &row : rows)
            if (row.technique == t && row.axis_value == points.at(point_index))
                return row;
        throw std::out_of_range("SweepResult::at: technique not in sweep");
    }

    std::size_t SweepResult::total_failures() const
    {
        std::size_t n = 0;
        for (const auto &row : rows)
            n += row.failures;
        return n;
    }

    std::size_t SweepResult::total_trials() const
    {
        std::size_t n = 0;
        for (const auto &row : rows)
            n += row.trials;
        return n;
    }

    std::vector<TrialSample> run_trial(const ExperimentConfig &config, std::size_t trial)
    {
        Rng rng(derive_seed(config.master_seed, trial));
        const ChannelMatrix base = generate_rayleigh(config.users, config.antennas, 1.0, rng);
        std::vector<int> indices(static_cast<std::size_t>(config.users));
        for (int &i : indices)
            i = rng.uniform_int(config.order);
        const SymbolVector d(std::move(indices), config.order);
        CVector noise(config.users);
        for (Eigen::Index j = 0; j < noise.size(); ++j)
            noise(j) = rng.complex_normal(1.0);

        std::vector<TrialSample> out;
        out.reserve(config.points.size() * config.techniques.size());
        for (const double point : config.points)
        {
            const double gamma_db = config.axis == SweepAxis::SnrDb ? point : config.gamma0_db;
            const double rate = config.axis == SweepAxis::SnrDb ? config.default_target_rate() : point;
            const double gamma0 = std::pow(10.0, gamma_db / 10.0);
            const ChannelMatrix H(std::sqrt(gamma0) * base.entries(), gamma0);
            const QosTargets qos = QosTargets::uniform_rate(static_cast<std::size_t>(config.users), rate);
            for (const Technique t : config.techniques)
            {
                try
                {
                    out.push_back(run_technique(t, config, H, d, qos, noise));
                }
                catch (const std::runtime_error &)
                {
                    out.push_back(TrialSample{});
                }
            }
        }
        return out;
    }

    SweepResult aggregate(const ExperimentConfig &config, const std::vector<std::vector<TrialSample>> &per_trial)
    {
        const std::size_t n_tech = config.techniques.size();
        const std::size_t trials = per_trial.size();
        SweepResult result;
        result.axis = config.axis;
        result.master_seed = config.master_seed;
        result.points = config.points;
        for (std::size_t p = 0; p < config.points.size(); ++p)
        {
            for (std::size_t t = 0; t < n_tech; ++t)
            {
                const std::size_t slot = p * n_tech + t;
                TechniquePoint row;
                row.technique = config.techniques[t];
                row.axis_value = config.points[p];
                row.trials = trials;
                row.samples.reserve(trials);
                std::vector<bool> use(trials);
                std::size_t errors = 0;
                std::size_t symbols = 0;
                for (std::size_t i = 0; i < trials; ++i)
                {
                    const TrialSample &s = per_trial[i].at(slot);
                    row.samples.push_back(s);
                    use[i] = s.ok;
                    if (!s.ok)
                    {
                        ++row.failures;
                        continue;
                    }
                    errors += static_cast<std::size_t>(s.errors);
                    symbols += static_cast<std::size_t>(s.symbols);
                }
                const Moments m = moments(
                    trials, [&](std::size_t i) { return row.samples[i].power; },
                    [&](std::size_t i) { return row.samples[i].sum_rate; }, use);
                if (m.n == 0)
                {
                    row.mean_power = row.mean_sum_rate = row.eta = row.ser = kNaN;
                    row.ci_halfwidth_eta = row.ci_halfwidth_power = row.ci_halfwidth_sum_rate = kNaN;
                }
                else
                {
                    const double n = static_cast<double>(m.n);
                    row.mean_power = m.mean_p;
                    row.mean_sum_rate = m.mean_r;
                    row.eta = m.mean_r / m.mean_p;
                    row.ser = symbols == 0 ? kNaN : static_cast<double>(errors) / static_cast<double>(symbols);
                    const double P = m.mean_p;
                    const double R = m.mean_r;
                    const double var_eta =
                        (m.var_r / (P * P) - 2.0 * R * m.cov / (P * P * P) + R * R * m.var_p / (P * P * P * P)) / n;
                    row.ci_halfwidth_eta = kConfidenceZ * std::sqrt(std::max(var_eta, 0.0));
                    row.ci_halfwidth_power = kConfidenceZ * std::sqrt(m.var_p / n);
                    row.ci_halfwidth_sum_rate = kConfidenceZ * std::sqrt(m.var_r / n);
                }
                result.rows.push_back(std::move(row));
            }
        }
        return result;
    }

    SweepResult run_sweep_serial(const ExperimentConfig &config)
    {
        config.validate();
        std::vector<std::vector<TrialSample>> per_trial(config.trials);
        for (std::size_t i = 0; i < config.trials; ++i)
            per_trial[i] = run_trial(config, i);
        return aggregate(config, per_trial);
    }

    SweepResult run_sweep(const ExperimentConfig &config)
    {
        config.validate();
        std::vector<std::vector<TrialSample>> per_trial(config.trials);
        const int threads = config.workers > 0 ? config.workers : omp_get_max_threads();
        const auto n = static_cast<std::ptrdiff_t>(config.trials);
        std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
        for (std::ptrdiff_t i = 0; i < n; ++i)
        {
            try
            {
                per_trial[static_cast<std::size_t>(i)] = run_trial(config, static_cast<std::size_t>(i));
            }
            catch (...)
            {
#pragma omp critical(symprec_sweep_error)
                if (!error)
                    error = std::current_exception();
            }
        }
        if (error)
            std::rethrow_exception(error);
        return aggregate(config, per_trial);
    }

    SweepResult sweep_rate(ExperimentConfig config)
    {
        config.axis = SweepAxis::TargetRate;
        return run_sweep(config);
    }

    PairedDifference paired_eta_difference(const TechniquePoint &a, const TechniquePoint &b)
    {
        if (a.samples.size() != b.samples.size())
            throw std::invalid_argument("paired_eta_difference: rows come from different sweeps");
        const std::size_t n = a.samples.size();
        std::vector<bool> both(n);
        for (std::size_t i = 0; i < n; ++i)
            both[i] = a.samples[i].ok && b.samples[i].ok;
        const Moments ma = moments(
            n, [&](std::size_t i) { return a.samples[i].power; }, [&](std::size_t i) { return a.samples[i].sum_rate; },
            both);
        const Moments mb = moments(
            n, [&](std::size_t i) { return b.samples[i].power; }, [&](std::size_t i) { return b.samples[i].sum_rate; },
            both);
        PairedDifference out;
        out.pairs = ma.n;
        if (out.pairs == 0)
        {
            out.difference = out.halfwidth = kNaN;
            return out;
        }
        const double eta_a = ma.mean_r / ma.mean_p;
        const double eta_b = mb.mean_r / mb.mean_p;
        out.difference = eta_a - eta_b;
        if (out.pairs < 2)
        {
            out.halfwidth = kNaN;
            return out;
        }
        // Linearized influence of each trial on eta_a - eta_b
        double mean = 0.0;
        std::vector<double> infl;
        infl.reserve(out.pairs);
        for (std::size_t i = 0; i < n; ++i)
        {
            if (!both[i])
                continue;
            const double ia = (a.samples[i].sum_rate - eta_a * a.samples[i].power) / ma.mean_p;
            const double ib = (b.samples[i].sum_rate - eta_b * b.samples[i].power) / mb.mean_p;
            infl.push_back(ia - ib);
            mean += ia - ib;
        }
        mean /= static_cast<double>(out.pairs);
        double var = 0.0;
        for (const double v : infl)
            var += (v - mean) * (v - mean);
        var /= static_cast<double>(out.pairs - 1);
        out.halfwidth = kConfidenceZ * std::sqrt(var / static_cast<double>(out.pairs));
        return out;
    }

} // namespace symprec
