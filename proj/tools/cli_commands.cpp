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

#include "cli_commands.hpp"

#include "symprec/experiment_config.hpp"
#include "symprec/linkmodel.hpp"
#include "symprec/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace symprec::cli
{
    namespace
    {
        using nlohmann::json;

        struct SweepFlags
        {
            std::string config;
            std::optional<std::string> K, nt, M, techniques, points, trials, seed, workers, gamma0_db, target_rate;
            std::string out;
            bool json = false;
        };

        struct SingleFlags
        {
            std::string technique;
            std::string channel;
            std::optional<int> K, nt;
            int M = 4;
            double gamma0_db = 10.0;
            std::uint64_t seed = 1;
            std::string symbols;
            std::string zeta;
            std::optional<double> rate;
            std::optional<double> budget;
            std::string out = "single";
            bool json = false;
        };

        std::string utc_timestamp()
        {
            const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
            std::tm tm{};
            gmtime_r(&now, &tm);
            char buf[32];
            std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
            return buf;
        }

        std::string stem_of(const std::string &path)
        {
            return path.size() > 4 && path.substr(path.size() - 4) == ".csv" ? path.substr(0, path.size() - 4) : path;
        }

        bool write_file(const std::string &path, const std::string &text, std::ostream &err)
        {
            std::ofstream f(path, std::ios::binary);
            f << text;
            if (!f)
            {
                err << "error: cannot write '" << path << "'\n";
                return false;
            }
            return true;
        }

        json number(double v)
        {
            return std::isfinite(v) ? json(v) : json(nullptr);
        }

        json complex_json(cplx z)
        {
            return json::array({z.real(), z.imag()});
        }

        std::string show(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.12g", v);
            return buf;
        }

        // Display form; components below 1e-12 of the magnitude are dropped
        std::string show(cplx z)
        {
            const double mag = std::abs(z);
            const double re = std::abs(z.real()) <= 1e-12 * mag ? 0.0 : z.real();
            const double im = std::abs(z.imag()) <= 1e-12 * mag ? 0.0 : z.imag();
            if (im == 0.0)
                return show(re);
            const std::string imag = im == 1.0 ? "i" : im == -1.0 ? "-i" : show(im) + "i";
            if (re == 0.0)
                return imag;
            return show(re) + (im > 0 ? "+" : "") + imag;
        }

        json config_json(const ExperimentConfig &c)
        {
            json techniques = json::array();
            for (const Technique t : c.techniques)
                techniques.push_back(std::string(technique_name(t)));
            return {{"K", c.users},
                    {"nt", c.antennas},
                    {"M", c.order},
                    {"techniques", techniques},
                    {"axis", std::string(axis_name(c.axis))},
                    {"points", c.points},
                    {"gamma0_db", c.gamma0_db},
                    {"target_rate", c.default_target_rate()},
                    {"trials", c.trials},
                    {"seed", c.master_seed},
                    {"workers", c.workers},
                    {"rotation_grid", c.rotation.grid},
                    {"sdp_gap", c.sdp.relative_gap}};
        }

        json result_json(const SweepResult &r)
        {
            json rows = json::array();
            for (const TechniquePoint &row : r.rows)
            {
                rows.push_back({{"technique", std::string(technique_name(row.technique))},
                                {"axis_name", std::string(axis_name(r.axis))},
                                {"axis_value", row.axis_value},
                                {"mean_power", number(row.mean_power)},
                                {"mean_sum_rate", number(row.mean_sum_rate)},
                                {"eta", number(row.eta)},
                                {"ser", number(row.ser)},
                                {"failures", row.failures},
                                {"trials", row.trials},
                                {"ci_halfwidth_eta", number(row.ci_halfwidth_eta)},
                                {"ci_halfwidth_power", number(row.ci_halfwidth_power)},
                                {"ci_halfwidth_sum_rate", number(row.ci_halfwidth_sum_rate)}});
            }
            return {{"axis", std::string(axis_name(r.axis))}, {"seed", r.master_seed}, {"rows", rows}};
        }

        int cmd_sweep(SweepAxis axis, const SweepFlags &f, std::ostream &out, std::ostream &err)
        {
            KeyValueConfig kv;
            ExperimentConfig config;
            try
            {
                if (!f.config.empty())
                {
                    std::ifstream in(f.config);
                    if (!in)
                        throw ConfigError("config", 0, "cannot read '" + f.config + "'");
                    kv = parse_key_values(in);
                }
                const std::string points_key = axis == SweepAxis::SnrDb ? "snr_db" : "rates";
                const std::pair<const char *, const std::optional<std::string> *> overrides[] = {
                    {"K", &f.K},
                    {"nt", &f.nt},
                    {"M", &f.M},
                    {"techniques", &f.techniques},
                    {points_key.c_str(), &f.points},
                    {"trials", &f.trials},
                    {"seed", &f.seed},
                    {"workers", &f.workers},
                    {"gamma0_db", &f.gamma0_db},
                    {"target_rate", &f.target_rate}};
                for (const auto &[key, value] : overrides)
                    if (*value)
                        kv.set(key, **value);
                config = to_experiment_config(kv, axis);
            }
            catch (const ConfigError &e)
            {
                err << "config error: " << e.what() << "\n";
                return kExitConfig;
            }

            const SweepResult result = run_sweep(config);
            const std::string csv_path =
                f.out.empty() ? (axis == SweepAxis::SnrDb ? "sweep_snr.csv" : "sweep_rate.csv") : f.out;
            const std::string plot_path = stem_of(csv_path) + ".gp";
            const std::string manifest_path = csv_path + ".manifest.json";
            const std::string csv = sweep_csv(result);

            const json manifest = {{"tool", "symprec"},
                                   {"version", kVersion},
                                   {"command", axis == SweepAxis::SnrDb ? "sweep-snr" : "sweep-rate"},
                                   {"config", config_json(config)},
                                   {"config_text", format_experiment_config(config)},
                                   {"master_seed", config.master_seed},
                                   {"timestamp", utc_timestamp()},
                                   {"outputs", {{"csv", csv_path}, {"gnuplot", plot_path}, {"manifest", manifest_path}}}};
            if (!write_file(csv_path, csv, err) || !write_file(plot_path, gnuplot_script(result, csv_path), err) ||
                !write_file(manifest_path, manifest.dump(2) + "\n", err))
                return kExitUsage;

            if (f.json)
                out << result_json(result).dump(2) << "\n";
            else
                out << csv;

            if (result.total_failures() == result.total_trials())
            {
                err << "error: every trial was infeasible or degenerate for every technique\n";
                return kExitInfeasible;
            }
            return kExitOk;
        }

        std::vector<std::string> split(const std::string &s, const std::string &separators)
        {
            std::vector<std::string> out;
            std::string item;
            for (const char c : s + separators.substr(0, 1))
            {
                if (separators.find(c) != std::string::npos)
                {
                    if (!item.empty())
                        out.push_back(item);
                    item.clear();
                }
                else
                {
                    item.push_back(c);
                }
            }
            return out;
        }

        double parse_double(const std::string &text, const std::string &key)
        {
            double v = 0.0;
            const char *end = text.data() + text.size();
            const auto [ptr, ec] = std::from_chars(text.data(), end, v);
            if (ec != std::errc() || ptr != end)
                throw ConfigError(key, 0, "cannot parse '" + text + "'");
            return v;
        }

        int cmd_single(const SingleFlags &f, std::ostream &out, std::ostream &err)
        {
            const auto technique = parse_technique(f.technique);
            std::optional<ChannelMatrix> H;
            std::optional<SymbolVector> d;
            std::optional<QosTargets> qos;
            Rng rng(derive_seed(f.seed, 0));
            try
            {
                if (!technique)
                    throw ConfigError("technique", 0, "unknown technique '" + f.technique + "'");
                if (!is_valid_order(f.M))
                    throw ConfigError("M", 0, "must be a power of two >= 2");
                if (!f.channel.empty())
                {
                    try
                    {
                        H.emplace(parse_matrix(f.channel));
                    }
                    catch (const std::invalid_argument &e)
                    {
                        throw ConfigError("channel", 0, e.what());
                    }
                }
                else
                {
                    if (!f.K)
                        throw ConfigError("K", 0, "missing: give --channel or --K and --nt");
                    if (!f.nt)
                        throw ConfigError("nt", 0, "missing: give --channel or --K and --nt");
                    if (*f.K < 1 || *f.nt < 1)
                        throw ConfigError("K", 0, "K and nt must be >= 1");
                    H.emplace(generate_rayleigh(*f.K, *f.nt, std::pow(10.0, f.gamma0_db / 10.0), rng));
                }
                const auto K = static_cast<std::size_t>(H->users());

                std::vector<int> indices;
                if (!f.symbols.empty())
                {
                    for (const std::string &s : split(f.symbols, ", "))
                    {
                        const double v = parse_double(s, "symbols");
                        if (v != std::floor(v) || v < 0 || v >= f.M)
                            throw ConfigError("symbols", 0, "index '" + s + "' outside [0, M)");
                        indices.push_back(static_cast<int>(v));
                    }
                }
                else
                {
                    for (std::size_t j = 0; j < K; ++j)
                        indices.push_back(rng.uniform_int(f.M));
                }
                if (indices.size() != K)
                    throw ConfigError("symbols", 0, "expected " + std::to_string(K) + " symbol indices");
                d.emplace(indices, f.M);

                if (!f.zeta.empty())
                {
                    std::vector<double> z;
                    for (const std::string &s : split(f.zeta, ", "))
                        z.push_back(parse_double(s, "zeta"));
                    if (z.size() != K)
                        throw ConfigError("zeta", 0, "expected " + std::to_string(K) + " targets");
                    try
                    {
                        qos.emplace(z);
                    }
                    catch (const std::invalid_argument &e)
                    {
                        throw ConfigError("zeta", 0, e.what());
                    }
                }
                else
                {
                    const double rate = f.rate.value_or(std::log2(static_cast<double>(f.M)));
                    if (!(rate > 0.0))
                        throw ConfigError("rate", 0, "must be positive");
                    qos.emplace(QosTargets::uniform_rate(K, rate));
                }
                if (f.budget && !(*f.budget > 0.0))
                    throw ConfigError("budget", 0, "must be positive");
            }
            catch (const ConfigError &e)
            {
                err << "config error: " << e.what() << "\n";
                return kExitConfig;
            }

            PrecoderOutput precoder;
            SymbolVector expected = *d;
            std::optional<double> covariance_power;
            try
            {
                switch (*technique)
                {
                case Technique::NMRT:
                {
                    PerUserPrecoder p = nmrt(*H);
                    p.powers = constructive_power_allocation(*H, *qos).powers;
                    precoder = p;
                    break;
                }
                case Technique::CRZF:
                    precoder = crzf(*H, *d, f.budget.value_or(crzf_qos_budget(*H, *d, *qos))).precoder;
                    break;
                case Technique::CIMRT:
                    precoder = cimrt(*H, *d, *qos).precoder;
                    break;
                case Technique::CCMC:
                    precoder = SingleVectorPrecoder{ccmc(*H, (*d)[0], *qos).w};
                    expected = SymbolVector(std::vector<int>(d->size(), (*d)[0].index()), d->order());
                    break;
                case Technique::CIDC:
                    precoder = SingleVectorPrecoder{cidc(*H, *d, *qos).w};
                    break;
                case Technique::OPTMC:
                {
                    const CovarianceSolution s = optimal_multicast(*H, *qos);
                    Rng extraction = rng.split(1);
                    precoder = SingleVectorPrecoder{extract_rank_one(s, *H, *qos, extraction)};
                    covariance_power = s.power;
                    break;
                }
                }
            }
            catch (const DegenerateChannel &e)
            {
                err << "degenerate channel: " << e.what() << "\n";
                return kExitInfeasible;
            }
            catch (const std::runtime_error &e)
            {
                err << "infeasible: " << e.what() << "\n";
                return kExitInfeasible;
            }

            const ReceivedVector y = received_signal(*H, precoder, *d);
            const double power = total_power(precoder);
            const CMatrix W = std::holds_alternative<PerUserPrecoder>(precoder)
                                  ? std::get<PerUserPrecoder>(precoder).scaled()
                                  : CMatrix(std::get<SingleVectorPrecoder>(precoder).w);
            const bool has_symbols = *technique != Technique::OPTMC;

            json report = {{"technique", std::string(technique_name(*technique))}, {"power", power}};
            if (covariance_power)
                report["covariance_power"] = *covariance_power;
            json wj = json::array();
            for (Eigen::Index r = 0; r < W.rows(); ++r)
            {
                json row = json::array();
                for (Eigen::Index c = 0; c < W.cols(); ++c)
                    row.push_back(complex_json(W(r, c)));
                wj.push_back(row);
            }
            report["precoder"] = wj;
            json users = json::array();
            for (std::size_t j = 0; j < d->size(); ++j)
            {
                const cplx yj = y.y(static_cast<Eigen::Index>(j));
                json u = {{"user", j + 1}, {"received", complex_json(yj)}, {"symbol", expected[j].index()}};
                u["in_region"] = has_symbols ? json(detection_region_contains(expected[j], yj)) : json(nullptr);
                users.push_back(u);
            }
            report["users"] = users;

            if (f.json)
            {
                out << report.dump(2) << "\n";
            }
            else
            {
                out << "technique: " << technique_name(*technique) << "\n";
                out << "power: " << show(power) << "\n";
                if (covariance_power)
                    out << "covariance power: " << show(*covariance_power) << "\n";
                out << "precoder (" << W.rows() << "x" << W.cols() << "):\n";
                for (Eigen::Index r = 0; r < W.rows(); ++r)
                {
                    out << " ";
                    for (Eigen::Index c = 0; c < W.cols(); ++c)
                        out << " " << show(W(r, c));
                    out << "\n";
                }
                for (std::size_t j = 0; j < d->size(); ++j)
                {
                    const cplx yj = y.y(static_cast<Eigen::Index>(j));
                    out << "user " << j + 1 << ": y = " << show(yj) << ", symbol " << expected[j].index();
                    if (has_symbols)
                        out << ", in region: " << (detection_region_contains(expected[j], yj) ? "yes" : "no");
                    out << "\n";
                }
            }

            json channel = json::array();
            for (Eigen::Index r = 0; r < H->users(); ++r)
            {
                json row = json::array();
                for (Eigen::Index c = 0; c < H->antennas(); ++c)
                    row.push_back(complex_json(H->entries()(r, c)));
                channel.push_back(row);
            }
            const std::string manifest_path = f.out + ".manifest.json";
            const json manifest = {{"tool", "symprec"},
                                   {"version", kVersion},
                                   {"command", "single"},
                                   {"inputs",
                                    {{"technique", std::string(technique_name(*technique))},
                                     {"channel", channel},
                                     {"symbols", d->indices()},
                                     {"M", f.M},
                                     {"zeta", std::vector<double>(qos->snr().data(), qos->snr().data() + qos->size())},
                                     {"seed", f.seed}}},
                                   {"master_seed", f.seed},
                                   {"timestamp", utc_timestamp()},
                                   {"result", report},
                                   {"outputs", {{"manifest", manifest_path}}}};
            if (!write_file(manifest_path, manifest.dump(2) + "\n", err))
                return kExitUsage;
            return kExitOk;
        }
    } // namespace

    cplx parse_complex(const std::string &raw)
    {
        std::string text;
        for (const char c : raw)
            if (c != ' ')
                text.push_back(c);
        if (text.empty())
            throw std::invalid_argument("empty complex number");
        auto number = [&](const std::string &s) -> double
        {
            if (s.empty() || s == "+")
                return 1.0;
            if (s == "-")
                return -1.0;
            const std::string body = s[0] == '+' ? s.substr(1) : s;
            double v = 0.0;
            const char *end = body.data() + body.size();
            const auto [ptr, ec] = std::from_chars(body.data(), end, v);
            if (ec != std::errc() || ptr != end)
                throw std::invalid_argument("cannot parse '" + raw + "' as a complex number");
            return v;
        };
        const char last = text.back();
        if (last != 'i' && last != 'j')
            return {number(text), 0.0};
        text.pop_back();
        // Split at the last sign that is not an exponent sign
        std::size_t split = std::string::npos;
        for (std::size_t p = text.size(); p-- > 1;)
        {
            if ((text[p] == '+' || text[p] == '-') && text[p - 1] != 'e' && text[p - 1] != 'E')
            {
                split = p;
                break;
            }
        }
        if (split == std::string::npos)
            return {0.0, number(text)};
        const std::string re = text.substr(0, split);
        if (re.empty() || re == "+" || re == "-")
            throw std::invalid_argument("cannot parse '" + raw + "' as a complex number");
        return {number(re), number(text.substr(split))};
    }

    CMatrix parse_matrix(const std::string &text)
    {
        std::vector<std::vector<cplx>> rows;
        for (const std::string &row : split(text, ";"))
        {
            std::vector<cplx> entries;
            for (const std::string &item : split(row, ", \t"))
                entries.push_back(parse_complex(item));
            if (!entries.empty())
                rows.push_back(std::move(entries));
        }
        if (rows.empty())
            throw std::invalid_argument("empty matrix");
        CMatrix M(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
        for (std::size_t r = 0; r < rows.size(); ++r)
        {
            if (rows[r].size() != rows[0].size())
                throw std::invalid_argument("rows have different lengths");
            for (std::size_t c = 0; c < rows[r].size(); ++c)
                M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
        return M;
    }

    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"symbol-level precoding laboratory for the MISO downlink", "symprec"};
        app.require_subcommand(1);
        app.set_version_flag("--version", kVersion);

        SweepFlags snr;
        SweepFlags rate;
        auto add_sweep = [&](CLI::App *sub, SweepFlags &f, const char *points_help)
        {
            sub->add_option("--config", f.config, "key = value config file");
            sub->add_option("--K", f.K, "number of users");
            sub->add_option("--nt", f.nt, "number of transmit antennas");
            sub->add_option("--M", f.M, "PSK order");
            sub->add_option("--techniques", f.techniques, "comma list: nMRT,CRZF,CIMRT,CCMC,CIDC,OPT-MC");
            sub->add_option("--points", f.points, points_help);
            sub->add_option("--trials", f.trials, "Monte Carlo trials per point");
            sub->add_option("--seed", f.seed, "master seed");
            sub->add_option("--workers", f.workers, "OpenMP threads (0: default)");
            sub->add_option("--gamma0-db", f.gamma0_db, "average channel power in dB (rate sweep)");
            sub->add_option("--target-rate", f.target_rate, "common target rate (SNR sweep), default log2 M");
            sub->add_option("--out", f.out, "CSV output path");
            sub->add_flag("--json", f.json, "print results as JSON instead of CSV");
        };
        CLI::App *sweep_snr = app.add_subcommand("sweep-snr", "energy efficiency versus average SNR");
        add_sweep(sweep_snr, snr, "comma list of average SNRs in dB");
        CLI::App *sweep_rate = app.add_subcommand("sweep-rate", "power and energy efficiency versus target rate");
        add_sweep(sweep_rate, rate, "comma list of target rates in bit/symbol");

        SingleFlags single;
        CLI::App *one = app.add_subcommand("single", "run one precoder on one channel and print everything");
        one->add_option("--technique", single.technique, "nMRT, CRZF, CIMRT, CCMC, CIDC or OPT-MC")->required();
        one->add_option("--channel", single.channel, "rows separated by ';', entries like 1, 0.5-2i, i");
        one->add_option("--K", single.K, "users (random channel)");
        one->add_option("--nt", single.nt, "antennas (random channel)");
        one->add_option("--gamma0-db", single.gamma0_db, "average channel power in dB (random channel)");
        one->add_option("--seed", single.seed, "seed for the random channel and symbols");
        one->add_option("--M", single.M, "PSK order");
        one->add_option("--symbols", single.symbols, "comma list of symbol indices");
        one->add_option("--zeta", single.zeta, "comma list of linear SNR targets");
        one->add_option("--rate", single.rate, "common target rate, default log2 M");
        one->add_option("--budget", single.budget, "CRZF power budget, default the least meeting the targets");
        one->add_option("--out", single.out, "manifest path prefix");
        one->add_flag("--json", single.json, "machine-readable output");

        std::vector<const char *> argv{"symprec"};
        for (const std::string &a : args)
            argv.push_back(a.c_str());
        try
        {
            app.parse(static_cast<int>(argv.size()), argv.data());
        }
        catch (const CLI::CallForHelp &)
        {
            out << app.help();
            return kExitOk;
        }
        catch (const CLI::CallForVersion &)
        {
            out << kVersion << "\n";
            return kExitOk;
        }
        catch (const CLI::ParseError &e)
        {
            err << "config error: " << e.what() << "\n";
            return kExitConfig;
        }

        if (sweep_snr->parsed())
            return cmd_sweep(SweepAxis::SnrDb, snr, out, err);
        if (sweep_rate->parsed())
            return cmd_sweep(SweepAxis::TargetRate, rate, out, err);
        return cmd_single(single, out, err);
    }

} // namespace symprec::cli
