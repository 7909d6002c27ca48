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

#ifndef SYMPREC_EXPERIMENT_CONFIG_HPP
#define SYMPREC_EXPERIMENT_CONFIG_HPP

#include "symprec/montecarlo.hpp"

#include <istream>
#include <map>
#include <stdexcept>
#include <string>

namespace symprec
{
    // Config problem with the key (and line, when read from a file) that caused it
    class ConfigError : public std::runtime_error
    {
    public:
        ConfigError(const std::string &key, int line, const std::string &message);

        const std::string &key() const { return key_; }
        int line() const { return line_; }

    private:
        std::string key_;
        int line_;
    };

    // Flat "key = value" text, '#' starts a comment. Later keys override earlier ones.
    struct KeyValueConfig
    {
        struct Entry
        {
            std::string value;
            int line = 0;
        };
        std::map<std::string, Entry> entries;

        void set(const std::string &key, const std::string &value, int line = 0);
        bool has(const std::string &key) const { return entries.count(key) != 0; }
    };

    KeyValueConfig parse_key_values(std::istream &in);

    // Recognized keys:
    //   K, nt, M, techniques, snr_db, rates, gamma0_db, target_rate, trials, seed, workers,
    //   rotation_grid, sdp_gap
    // K and nt are required. The point list key depends on the axis (snr_db or rates).
    ExperimentConfig to_experiment_config(const KeyValueConfig &kv, SweepAxis axis);

    // Echo of every field, in the same key-value format
    std::string format_experiment_config(const ExperimentConfig &config);

} // namespace symprec

#endif
