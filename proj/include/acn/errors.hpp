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

#ifndef ACN_ERRORS_HPP
#define ACN_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace acn
{
    // Base of every error raised by the library.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class InvalidPattern : public Error
    {
    public:
        using Error::Error;
    };

    class ConfigError : public Error
    {
    public:
        using Error::Error;
    };

    class DomainError : public Error
    {
    public:
        using Error::Error;
    };

    class IndexError : public Error
    {
    public:
        using Error::Error;
    };

    class ResolutionError : public Error
    {
    public:
        using Error::Error;
    };

    // No schedule places every pairwise rate difference in X* (requires L <= K).
    class Infeasible : public Error
    {
    public:
        using Error::Error;
    };

    // Malformed input file; `line()` is 1-based, 0 when the error is not tied to a line.
    class ParseError : public Error
    {
    public:
        ParseError(const std::string &message, std::size_t line)
            : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line)
        {
        }

        std::size_t line() const noexcept { return line_; }

    private:
        std::size_t line_;
    };
}

#endif
