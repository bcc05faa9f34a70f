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

#include "acn/pattern_io.hpp"
#include "acn/format.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

using namespace acn;
using P = FarFieldPattern<double>;

namespace
{
    P read(const std::string &text)
    {
        std::istringstream in(text);
        return read_pattern_csv(in);
    }

    int error_line(const std::string &text)
    {
        try
        {
            read(text);
        }
        catch (const ParseError &e)
        {
            return e.line();
        }
        return -1;
    }
}

TEST_CASE("four-row file")
{
    const auto p = read("phi_deg,mag,phase_deg\n0,1,0\n90,0,90\n180,1,180\n270,0,270\n");
    REQUIRE(p.kind() == PatternKind::tabulated);
    REQUIRE(p.samples().size() == 4);
    CHECK(p.samples()[2].phi_deg == 180);
    CHECK(p(pi_v<double>) == std::polar(1.0, pi_v<double>));
}

TEST_CASE("comments and blank lines are ignored")
{
    const auto p = read("# exported\n\nphi_deg,mag,phase_deg\n# a note\n0,1,0\n\n180,0.5,10\n");
    CHECK(p.samples().size() == 2);
}

TEST_CASE("parse errors carry line numbers")
{
    CHECK_THROWS_AS(read(""), ParseError);
    CHECK_THROWS_AS(read("phi_deg,mag,phase_deg\n"), ParseError);
    CHECK(error_line("phi,mag,phase\n0,1,0\n") == 1);
    CHECK(error_line("phi_deg,mag,phase_deg\n0,1,0\n10,abc,0\n") == 3);
    CHECK(error_line("phi_deg,mag,phase_deg\n0,1,0\n10,1\n") == 3);
    CHECK(error_line("phi_deg,mag,phase_deg\n0,1,0\n# c\n0,1,0\n") == 4);
    CHECK(error_line("phi_deg,mag,phase_deg\n0,1,0\n360,1,0\n") == 3);
    CHECK(error_line("phi_deg,mag,phase_deg\n-1,1,0\n") == 2);
    CHECK(error_line("phi_deg,mag,phase_deg\n0,-1,0\n") == 2);
    CHECK(error_line("phi_deg,mag,phase_deg\n10,1,0\n5,1,0\n") == 3);
    CHECK(error_line("phi_deg,mag,phase_deg\n0,nan,0\n") == 2);

    try
    {
        read("phi_deg,mag,phase_deg\n0,1,0\n0,1,0\n");
        FAIL("expected a parse error");
    }
    catch (const ParseError &e)
    {
        CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
    }
}

TEST_CASE("save then load is bit exact")
{
    const auto p = sample_pattern(P::cardioid(0.3, 0.85), 360);
    const auto path = std::filesystem::temp_directory_path() / "acn_roundtrip_pattern.csv";
    save_pattern_csv(p, path);
    const auto q = load_pattern_csv(path);
    std::filesystem::remove(path);
    REQUIRE(q.samples().size() == p.samples().size());
    double worst = 0;
    for (std::size_t i = 0; i < p.samples().size(); ++i)
    {
        CHECK(q.samples()[i].phi_deg == p.samples()[i].phi_deg);
        CHECK(q.samples()[i].magnitude == p.samples()[i].magnitude);
        CHECK(q.samples()[i].phase_deg == p.samples()[i].phase_deg);
        const double phi = deg_to_rad(p.samples()[i].phi_deg);
        worst = std::max(worst, std::abs(q(phi) - p(phi)));
    }
    CHECK(worst == 0.0);
}

TEST_CASE("analytic patterns cannot be saved directly")
{
    std::ostringstream out;
    CHECK_THROWS_AS(write_pattern_csv(P::isotropic(), out), InvalidPattern);
}

TEST_CASE("shortest round-trip formatting")
{
    for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 123456789.125, 5e-324})
    {
        const auto s = format_double(v);
        const auto back = parse_double(s);
        REQUIRE(back.has_value());
        CHECK(*back == v);
    }
    CHECK(format_double(0.1) == "0.1");
    CHECK_FALSE(parse_double("1.0x").has_value());
    CHECK_FALSE(parse_double("").has_value());
    CHECK(parse_double(" +2.5 ").value() == 2.5);
}
