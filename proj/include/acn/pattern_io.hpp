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

#ifndef ACN_PATTERN_IO_HPP
#define ACN_PATTERN_IO_HPP

#include "patterns.hpp"

#include <filesystem>
#include <istream>
#include <ostream>

namespace acn
{
    /*
     * Pattern CSV
     *
     *   # comment lines start with '#'
     *   phi_deg,mag,phase_deg
     *   0,1,0
     *   90,0.5,45
     *
     * phi_deg must be strictly increasing in [0, 360). Every problem is reported as a
     * ParseError carrying the offending line number.
     */
    FarFieldPattern<double> read_pattern_csv(std::istream &in);
    FarFieldPattern<double> load_pattern_csv(const std::filesystem::path &path);

    // Only tabulated patterns can be written; sample analytic ones first with sample_pattern().
    void write_pattern_csv(const FarFieldPattern<double> &pattern, std::ostream &out);
    void save_pattern_csv(const FarFieldPattern<double> &pattern, const std::filesystem::path &path);
}

#endif
