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

#ifndef ACN_FORMAT_HPP
#define ACN_FORMAT_HPP

#include <optional>
#include <string>
#include <string_view>

namespace acn
{
    // Shortest decimal string that parses back to exactly `value`.
    std::string format_double(double value);

    // Strict full-string parse; surrounding spaces are allowed, anything else is rejected.
    std::optional<double> parse_double(std::string_view text);

    std::string_view trim(std::string_view text);
}

#endif
