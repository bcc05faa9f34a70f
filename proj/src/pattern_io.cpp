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

#include <fstream>
#include <string>
#include <vector>

namespace acn
{
    namespace
    {
        constexpr std::string_view header = "phi_deg,mag,phase_deg";

        std::vector<std::string_view> split_fields(std::string_view line)
        {
            std::vector<std::string_view> out;
            std::size_t start = 0;
            while (true)
            {
                const auto comma = line.find(',', start);
                out.push_back(trim(line.substr(start, comma - start)));
                if (comma == std::string_view::npos)
                    break;
                start = comma + 1;
            }
            return out;
        }

        bool is_header(std::string_view line)
        {
            const auto fields = split_fields(line);
            return fields.size() == 3 && fields[0] == "phi_deg" && fields[1] == "mag" && fields[2] == "phase_deg";
        }
    }

    FarFieldPattern<double> read_pattern_csv(std::istream &in)
    {
        std::vector<PatternSample<double>> rows;
        std::string raw;
        std::size_t line_no = 0;
        bool seen_header = false;
        while (std::getline(in, raw))
        {
            ++line_no;
            const std::string_view line = trim(raw);
            if (line.empty() || line.front() == '#')
                continue;
            if (!seen_header)
            {
                if (!is_header(line))
                    throw ParseError("expected header '" + std::string(header) + "'", line_no);
                seen_header = true;
                continue;
            }

            const auto fields = split_fields(line);
            if (fields.size() != 3)
                throw ParseError("expected 3 fields, found " + std::to_string(fields.size()), line_no);
            const auto phi = parse_double(fields[0]);
            const auto mag = parse_double(fields[1]);
            const auto phase = parse_double(fields[2]);
            if (!phi || !mag || !phase)
                throw ParseError("non-numeric field", line_no);
            if (!std::isfinite(*phi) || !std::isfinite(*mag) || !std::isfinite(*phase))
                throw ParseError("non-finite field", line_no);
            if (*phi < 0.0 || *phi >= 360.0)
                throw ParseError("angle " + format_double(*phi) + " outside [0, 360)", line_no);
            if (*mag < 0.0)
                throw ParseError("negative magnitude", line_no);
            if (!rows.empty())
            {
                if (*phi == rows.back().phi_deg)
                    throw ParseError("duplicate angle " + format_double(*phi), line_no);
                if (*phi < rows.back().phi_deg)
                    throw ParseError("angles must be strictly increasing", line_no);
            }
            rows.push_back({*phi, *mag, *phase});
        }
        if (rows.empty())
            throw ParseError("no pattern samples", line_no);
        return FarFieldPattern<double>::tabulated(std::move(rows));
    }

    FarFieldPattern<double> load_pattern_csv(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ParseError("cannot open pattern file " + path.string(), 0);
        return read_pattern_csv(in);
    }

    void write_pattern_csv(const FarFieldPattern<double> &pattern, std::ostream &out)
    {
        if (pattern.kind() != PatternKind::tabulated)
            throw InvalidPattern("only tabulated patterns can be written; sample the pattern first");
        out << header << '\n';
        for (const auto &s : pattern.samples())
            out << format_double(s.phi_deg) << ',' << format_double(s.magnitude) << ',' << format_double(s.phase_deg) << '\n';
    }

    void save_pattern_csv(const FarFieldPattern<double> &pattern, const std::filesystem::path &path)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw ConfigError("cannot write pattern file " + path.string());
        write_pattern_csv(pattern, out);
    }
}
