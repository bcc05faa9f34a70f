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

#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char **argv)
{
    using namespace acn::cli;

    CLI::App app{"Analog combining network design and evaluation"};
    app.set_version_flag("--version", std::string("acn ") + tool_version);
    app.require_subcommand(1);

    Options opt;
    std::string out_path;
    std::uint64_t seed = 0;
    int grid = 0;
    int antennas = 0, bursts = 0;
    double period = 0;

    struct Entry
    {
        const char *name;
        const char *help;
    };
    const Entry entries[] = {
        {"design", "smallest optimal phase-shift rates for L antennas and burst length K"},
        {"sweep-aoa", "rho and burst error probability of every scheme over the AOA grid"},
        {"sweep-alpha", "worst-offset burst error probability versus alpha*T for two antennas"},
        {"compare", "worst-case rho and burst error probability per scheme"},
        {"montecarlo", "burst trials and isotropic scattering statistics against the analytic values"},
        {"verify-theory", "property checks of the kernel, rate design and combining identities"},
    };
    std::vector<CLI::App *> subs;
    for (const auto &e : entries)
    {
        auto *sub = app.add_subcommand(e.name, e.help);
        sub->add_option("--config", opt.config_path, "YAML experiment config")->check(CLI::ExistingFile);
        sub->add_option("--out", out_path, "output file (default: stdout)");
        sub->add_option("--seed", seed, "override the config seed");
        sub->add_option("--grid", grid, "override the primary grid resolution")->check(CLI::PositiveNumber);
        sub->add_option("--threads", opt.threads, "worker threads")->check(CLI::Range(1u, 1024u));
        if (std::string(e.name) == "design")
        {
            sub->add_option("--antennas", antennas, "number of antennas L")->check(CLI::PositiveNumber);
            sub->add_option("--bursts", bursts, "burst length K")->check(CLI::PositiveNumber);
            sub->add_option("--period", period, "message period T in seconds")->check(CLI::PositiveNumber);
        }
        subs.push_back(sub);
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    CLI::App *chosen = app.get_subcommands().front();
    auto given = [&](const char *name)
    {
        const CLI::Option *o = chosen->get_option_no_throw(name);
        return o != nullptr && o->count() > 0;
    };
    if (given("--seed"))
        opt.seed = seed;
    if (given("--grid"))
        opt.grid = grid;
    if (given("--antennas"))
        opt.antennas = antennas;
    if (given("--bursts"))
        opt.bursts = bursts;
    if (given("--period"))
        opt.period = period;

    // buffer so a failed command leaves no partial output file
    std::ostringstream buffer;
    const int code = run_command(chosen->get_name(), opt, buffer, std::cerr);
    if (code == exit_usage || code == exit_infeasible)
        return code;
    if (out_path.empty())
    {
        std::cout << buffer.str();
        return code;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file)
    {
        std::cerr << "error: cannot write " << out_path << '\n';
        return exit_usage;
    }
    file << buffer.str();
    return code;
}
