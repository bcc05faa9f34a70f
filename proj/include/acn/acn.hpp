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

#ifndef ACN_ACN_HPP
#define ACN_ACN_HPP

#include "combining.hpp"
#include "design.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "kernel.hpp"
#include "montecarlo.hpp"
#include "numeric.hpp"
#include "pattern_io.hpp"
#include "patterns.hpp"
#include "pep.hpp"

#endif
