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

#ifndef ACN_MONTECARLO_HPP
#define ACN_MONTECARLO_HPP

#include "combining.hpp"
#include "patterns.hpp"
#include "pep.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace acn
{
    /*
     * Reproducible random substream. The engine is std::mt19937_64, whose output sequence
     * is fixed by the C++ standard, seeded through std::seed_seq from the four 32-bit
     * halves of (seed, stream). Uniforms use the top 53 bits; normals use the Marsaglia
     * polar method. None of the <random> distributions are used because their output is
     * implementation defined.
     */
    class RandomStream
    {
    public:
        RandomStream(std::uint64_t seed, std::uint64_t stream);

        double uniform();
        double normal();
        // Circularly symmetric complex Gaussian with E|z|^2 = variance.
        std::complex<double> complex_normal(double variance);

    private:
        std::mt19937_64 engine_;
        std::optional<double> spare_;
    };

    // Work is split into blocks of this many trials/samples; block b always draws from
    // substream b, so results do not depend on the worker count.
    inline constexpr std::size_t monte_carlo_block = 4096;

    struct BinomialInterval
    {
        double low;
        double high;
    };

    // Wilson score interval for `successes` out of `trials` at normal quantile z.
    BinomialInterval wilson_interval(std::size_t successes, std::size_t trials, double z);

    // Two-sided 99% normal quantile.
    inline constexpr double z_99 = 2.5758293035489004;

    struct BurstTrialConfig
    {
        std::size_t trials = 100000;
        std::uint64_t seed = 1;
        double phi = 0;
        PhaseSchedule<double> schedule;
        LinkBudget<double> budget;
        PepModel<double> pep = ExponentialPep<double>{};
        OmegaMode omega = OmegaMode::zero;
        unsigned workers = 1;
    };

    struct BurstTrialResult
    {
        std::size_t trials = 0;
        std::size_t bursts = 0; // trials in which all K packets failed
        double rate = 0;
        BinomialInterval ci{0, 0};
        double analytic = 0;
        bool analytic_within_ci = false;
    };

    // Draw K independent packet errors per trial with probabilities P_e(snr_k) and count
    // the trials in which every packet failed. The interval is the 99% Wilson interval.
    BurstTrialResult simulate_bursts(const AntennaArray<double> &array, const BurstTrialConfig &cfg);

    struct ScatteringConfig
    {
        int paths = 64;
        std::vector<double> branch_powers; // P_r,l; empty means 1 for every branch
        double noise_power = 1;
        std::size_t samples = 1000000;
        std::uint64_t seed = 1;
        double period = 0.1; // sample s is taken at t = s * period
        unsigned workers = 1;
    };

    struct ScatteringResult
    {
        std::vector<double> snr;
        double mean = 0;
        double analytic_mean = 0;   // sum_l P_r,l / (L P_n)
        double isotropic_mean = 0;  // single isotropic antenna with the reference path power
        double ks_statistic = 0;    // against exponential(analytic_mean)
        double ks_critical = 0;     // 1% level, asymptotic Kolmogorov
    };

    /*
     * Isotropic scattering: each sample draws `paths` AOAs uniform on [0, 2 pi) and
     * i.i.d. circular complex Gaussian path gains of total power one. Branch l is
     * h_l = s_l sum_n a_n g_l(phi_n) exp(-j Omega_l(phi_n)) with s_l scaling its mean power
     * to P_r,l; the combiner applies the schedule phases at the sample time.
     */
    ScatteringResult simulate_scattering(const AntennaArray<double> &array, const ScatteringConfig &cfg,
                                       const PhaseSchedule<double> &schedule);

    // Kolmogorov-Smirnov distance between the samples and the exponential CDF 1 - exp(-x/mean).
    double ks_statistic_exponential(std::vector<double> samples, double mean);

    // Asymptotic critical value sqrt(-ln(alpha/2) / 2) / sqrt(n).
    double ks_critical_value(double alpha, std::size_t n);

    // Largest |packet_avg_snr - P_r/(L P_n) |r_k|^2| over the burst, where r_k is the
    // combiner output for a noiseless unit signal built from element gains and geometry
    // without going through effective_farfield.
    double validate_packet_snr(const AntennaArray<double> &array, const PhaseSchedule<double> &schedule,
                               const LinkBudget<double> &budget, double phi, OmegaMode mode);
}

#endif
