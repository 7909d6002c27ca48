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

#include "symprec/experiment_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace symprec
{
    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto first = s.find_first_not_of(" \t\r");
            if (first == std::string::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r");
            return s.substr(first, last - first + 1);
        }

        std::vector<std::string> split_list(const std::string &s)
        {
            std::vector<std::string> out;
            std::string item;
            for (const char c : s + ",")
            {
                if (c == ',' || c == ' ' || c == '\t')
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

        template <typename T>
        T parse_value(const std::string &text, const std::string &key, int line)
        {
            T value{};
            const char *end = text.data() + text.size();
            const auto [ptr, ec] = std::from_chars(text.data(), end, value);
            if (ec != std::errc() || ptr != end || text.empty())
                throw ConfigError(key, line, "cannot parse '" + text + "'");
            return value;
        }

        std::vector<double> parse_doubles(const KeyValueConfig::Entry &e, const std::string &key)
        {
            std::vector<double> out;
            for (const std::string &item : split_list(e.value))
                out.push_back(parse_value<double>(item, key, e.line));
            if (out.empty())
                throw ConfigError(key, e.line, "empty list");
            return out;
        }

        const std::vector<std::string> &known_keys()
        {
            static const std::vector<std::string> keys = {"K",      "nt",          "M",     "techniques", "snr_db",
                                                          "rates",  "gamma0_db",   "target_rate", "trials",
                                                          "seed",   "workers",     "rotation_grid", "sdp_gap"};
            return keys;
        }

        std::string join(const std::vector<double> &v)
        {
            std::ostringstream os;
            os.imbue(std::locale::classic());
            os.precision(17);
            for (std::size_t i = 0; i < v.size(); ++i)
                os << (i ? ", " : "") << v[i];
            return os.str();
        }
    } // namespace

    ConfigError::ConfigError(const std::string &key, int line, const std::string &message)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + key + ": " + message
                                      : key + ": " + message),
          key_(key), line_(line)
    {
    }

    void KeyValueConfig::set(const std::string &key, const std::string &value, int line)
    {
        entries[key] = Entry{value, line};
    }

    KeyValueConfig parse_key_values(std::istream &in)
    {
        KeyValueConfig kv;
        std::string raw;
        int line = 0;
        while (std::getline(in, raw))
        {
            ++line;
            const auto hash = raw.find('#');
            const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (text.empty())
                continue;
            const auto eq = text.find('=');
            if (eq == std::string::npos)
                throw ConfigError(trim(text), line, "expected 'key = value'");
            const std::string key = trim(text.substr(0, eq));
            if (key.empty())
                throw ConfigError("", line, "missing key before '='");
            kv.set(key, trim(text.substr(eq + 1)), line);
        }
        return kv;
    }

    ExperimentConfig to_experiment_config(const KeyValueConfig &kv, SweepAxis axis)
    {
        for (const auto &[key, entry] : kv.entries)
            if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end())
                throw ConfigError(key, entry.line, "unknown key");
        for (const char *required : {"K", "nt"})
            if (!kv.has(required))
                throw ConfigError(required, 0, std::string("missing required key '") + required + "'");

        auto entry = [&](const std::string &key) -> const KeyValueConfig::Entry & { return kv.entries.at(key); };
        auto get_int = [&](const std::string &key)
        { return parse_value<int>(entry(key).value, key, entry(key).line); };
        auto get_double = [&](const std::string &key)
        { return parse_value<double>(entry(key).value, key, entry(key).line); };

        ExperimentConfig c;
        c.axis = axis;
        c.users = get_int("K");
        c.antennas = get_int("nt");
        if (kv.has("M"))
            c.order = get_int("M");
        if (kv.has("techniques"))
        {
            for (const std::string &name : split_list(entry("techniques").value))
            {
                const auto t = parse_technique(name);
                if (!t)
                    throw ConfigError("techniques", entry("techniques").line, "unknown technique '" + name + "'");
                c.techniques.push_back(*t);
            }
        }
        else
        {
            c.techniques = all_techniques();
        }

        const std::string points_key = axis == SweepAxis::SnrDb ? "snr_db" : "rates";
        if (kv.has(points_key))
            c.points = parse_doubles(entry(points_key), points_key);
        else if (axis == SweepAxis::SnrDb)
            c.points = {0.0, 5.0, 10.0, 15.0, 20.0};
        else
            c.points = {0.5, 1.0, 2.0, 3.0, 4.0};

        if (kv.has("gamma0_db"))
            c.gamma0_db = get_double("gamma0_db");
        if (kv.has("target_rate"))
            c.target_rate = get_double("target_rate");
        if (kv.has("trials"))
        {
            const long long n = parse_value<long long>(entry("trials").value, "trials", entry("trials").line);
            if (n < 1)
                throw ConfigError("trials", entry("trials").line, "must be >= 1");
            c.trials = static_cast<std::size_t>(n);
        }
        if (kv.has("seed"))
            c.master_seed = parse_value<std::uint64_t>(entry("seed").value, "seed", entry("seed").line);
        if (kv.has("workers"))
            c.workers = get_int("workers");
        if (kv.has("rotation_grid"))
            c.rotation.grid = get_int("rotation_grid");
        if (kv.has("sdp_gap"))
        {
            c.sdp.relative_gap = get_double("sdp_gap");
            c.sdp.accept_gap = std::max(c.sdp.accept_gap, c.sdp.relative_gap);
        }

        try
        {
            c.validate();
        }
        catch (const std::invalid_argument &e)
        {
            const std::string what = e.what();
            const auto colon = what.find(':');
            const std::string key = colon == std::string::npos ? std::string() : what.substr(0, colon);
            const int line = kv.has(key) ? entry(key).line : 0;
            throw ConfigError(key, line, colon == std::string::npos ? what : trim(what.substr(colon + 1)));
        }
        return c;
    }

    std::string format_experiment_config(const ExperimentConfig &c)
    {
        std::ostringstream os;
        os.imbue(std::locale::classic());
        os.precision(17);
        os << "K = " << c.users << "\n";
        os << "nt = " << c.antennas << "\n";
        os << "M = " << c.order << "\n";
        os << "techniques = ";
        for (std::size_t i = 0; i < c.techniques.size(); ++i)
            os << (i ? ", " : "") << technique_name(c.techniques[i]);
        os << "\n";
        os << (c.axis == SweepAxis::SnrDb ? "snr_db" : "rates") << " = " << join(c.points) << "\n";
        os << "gamma0_db = " << c.gamma0_db << "\n";
        os << "target_rate = " << c.default_target_rate() << "\n";
        os << "trials = " << c.trials << "\n";
        os << "seed = " << c.master_seed << "\n";
        os << "workers = " << c.workers << "\n";
        os << "rotation_grid = " << c.rotation.grid << "\n";
        os << "sdp_gap = " << c.sdp.relative_gap << "\n";
        return os.str();
    }

} // namespace symprec
