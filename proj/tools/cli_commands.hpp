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

#ifndef SYMPREC_CLI_COMMANDS_HPP
#define SYMPREC_CLI_COMMANDS_HPP

#include "symprec/common.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace symprec::cli
{
    inline constexpr const char *kVersion = "0.1.0";

    enum ExitCode : int
    {
        kExitOk = 0,
        kExitUsage = 1,
        kExitConfig = 2,
        kExitInfeasible = 3
    };

    // Entry point shared by the executable and the tests. args excludes the program name.
    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

    // "1", "-0.5+2i", "i", "3e-2-1e-1j"
    cplx parse_complex(const std::string &text);

    // Rows separated by ';', entries by ',' or whitespace
    CMatrix parse_matrix(const std::string &text);

} // namespace symprec::cli

#endif
