// SPDX-License-Identifier: Apache-2.0
//
// acn-toolkit: analog combining network design for nonisotropic antennas
// Copyright (C) 2026 The acn-toolkit authors
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

#ifndef ACN_TOOLS_COMMANDS_HPP
#define ACN_TOOLS_COMMANDS_HPP

#include "config.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace acn::cli
{
    inline constexpr const char *tool_version = "1.0.0";

    enum ExitCode : int
    {
        exit_ok = 0,
        exit_usage = 1,
        exit_infeasible = 2,
        exit_validation = 3
    };

    // Command line options shared by all subcommands.
    struct Options
    {
        std::string config_path;
        std::optional<std::uint64_t> seed;
        std::optional<int> grid;
        unsigned threads = 1;

        // design only, each overrides the config
        std::optional<int> antennas;
        std::optional<int> bursts;
        std::optional<double> period;
    };

    // Each command writes its result to `out` and returns an exit code; errors from the
    // library propagate as exceptions.
    int cmd_design(const Options &opt, std::ostream &out);
    int cmd_sweep_aoa(const Options &opt, std::ostream &out);
    int cmd_sweep_alpha(const Options &opt, std::ostream &out);
    int cmd_compare(const Options &opt, std::ostream &out);
    int cmd_montecarlo(const Options &opt, std::ostream &out);
    int cmd_verify_theory(const Options &opt, std::ostream &out);

    // Dispatch by subcommand name, mapping exceptions to exit codes and messages on `err`.
    int run_command(const std::string &name, const Options &opt, std::ostream &out, std::ostream &err);
}

#endif
