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

#ifndef ACN_TOOLS_CONFIG_HPP
#define ACN_TOOLS_CONFIG_HPP

#include "acn/acn.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace acn::cli
{
    enum class ScheduleMode
    {
        designed,
        explicit_rates
    };

    struct AlphaAxis
    {
        double from_deg = 0;
        double to_deg = 720;
        int points = 721;
    };

    /*
     * Experiment description read from YAML. Angles are in degrees and powers in dB in
     * the file; accessors return radians and linear values.
     *
     *   array:
     *     wavelength_m: 0.05
     *     elements:
     *       - {pattern: dipole-cosine, pointing_deg: 0, position_m: [0, 0]}
     *       - {pattern: cardioid, pointing_deg: 180, depth: 0.8, position_m: [0.025, 0]}
     *       - {pattern: patch-lobe, pointing_deg: 90, beamwidth_deg: 70, back_lobe: 0.1}
     *       - {pattern: file, path: rear.csv}          # relative to the config file
     *   budget: {snr_db: 10, burst_length: 5, period_s: 0.1}
     *   pep: {model: exponential, a: 1, b: 0.2}       # or qpsk-awgn / qpsk-rayleigh with bits
     *   schedule: {mode: design}                    # or explicit with rates_deg_per_s, offsets_deg
     *   omega: zero                                   # or geometric
     *   sweep:
     *     aoa_points: 360
     *     phi_deg: worst                              # or a number
     *     alpha_t_deg: {from: 0, to: 720, points: 721}
     *     periods: [1, 2, 3, 4, 5]
     *   montecarlo: {trials: 100000, phi_deg: worst, paths: 64, samples: 0, branch_powers_db: [0, 0]}
     *   verify: {override_x_deg: 180}
     *   seed: 1
     */
    struct ExperimentConfig
    {
        std::vector<FarFieldPattern<double>> elements;
        std::vector<double> position_x;
        std::vector<double> position_y;
        double wavelength = 1;

        double snr_db = 10;
        int burst_length = 5;
        double period = 0.1;

        PepModel<double> pep = ExponentialPep<double>{};

        ScheduleMode schedule_mode = ScheduleMode::designed;
        std::vector<double> rates_deg_per_s;
        std::vector<double> offsets_deg;

        OmegaMode omega = OmegaMode::zero;

        int aoa_points = 360;
        std::optional<double> sweep_phi_deg; // empty: worst-case AOA
        AlphaAxis alpha_axis;
        std::vector<int> periods{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

        std::size_t trials = 100000;
        std::optional<double> montecarlo_phi_deg;
        int paths = 64;
        std::size_t samples = 0; // zero skips the isotropic scattering run
        std::vector<double> branch_powers_db;

        std::optional<double> override_x_deg;

        std::uint64_t seed = 1;

        // SHA-256 of the raw config bytes, empty when no file was read.
        std::string sha256;

        AntennaArray<double> array() const;
        LinkBudget<double> budget() const;
        PhaseSchedule<double> schedule() const;
    };

    ExperimentConfig parse_config(const std::string &text, const std::filesystem::path &base_dir);
    ExperimentConfig load_config(const std::filesystem::path &path);

    std::string sha256_hex(const std::string &bytes);
}

#endif
