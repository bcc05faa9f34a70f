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

#include "acn/montecarlo.hpp"

#include "acn/errors.hpp"
#include "acn/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace acn
{
    RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        engine_.seed(seq);
    }

    double RandomStream::uniform()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double RandomStream::normal()
    {
        if (spare_)
        {
            const double v = *spare_;
            spare_.reset();
            return v;
        }
        double u, v, s;
        do
        {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        return u * m;
    }

    std::complex<double> RandomStream::complex_normal(double variance)
    {
        const double sd = std::sqrt(variance / 2.0);
        const double re = normal();
        const double im = normal();
        return {sd * re, sd * im};
    }

    BinomialInterval wilson_interval(std::size_t successes, std::size_t trials, double z)
    {
        if (trials == 0)
            throw ConfigError("binomial interval needs at least one trial");
        const double n = static_cast<double>(trials);
        const double p = static_cast<double>(successes) / n;
        const double z2 = z * z;
        const double denom = 1.0 + z2 / n;
        const double centre = (p + z2 / (2.0 * n)) / denom;
        const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
        // the bounds are exact at the ends of the range; rounding would otherwise exclude p
        const double low = successes == 0 ? 0.0 : std::max(0.0, centre - half);
        const double high = successes == trials ? 1.0 : std::min(1.0, centre + half);
        return {low, high};
    }

    BurstTrialResult simulate_bursts(const AntennaArray<double> &array, const BurstTrialConfig &cfg)
    {
        if (cfg.trials < 1000)
            throw ConfigError("burst simulation needs at least 1000 trials");
        const auto snrs = packet_snrs(array, cfg.schedule, cfg.budget, cfg.phi, cfg.omega);
        std::vector<double> pe(static_cast<std::size_t>(snrs.size()));
        for (std::size_t k = 0; k < pe.size(); ++k)
            pe[k] = pep(cfg.pep, snrs[static_cast<Eigen::Index>(k)]);

        const std::size_t blocks = (cfg.trials + monte_carlo_block - 1) / monte_carlo_block;
        std::vector<std::size_t> counts(blocks, 0);
        parallel_for(blocks, cfg.workers, [&](std::size_t b)
                     {
                         RandomStream rng(cfg.seed, b);
                         const std::size_t begin = b * monte_carlo_block;
                         const std::size_t end = std::min(cfg.trials, begin + monte_carlo_block);
                         std::size_t hits = 0;
                         for (std::size_t t = begin; t < end; ++t)
                         {
                             bool all_failed = true;
                             // every packet draws, so the stream layout is fixed per trial
                             for (double p : pe)
                                 all_failed = (rng.uniform() < p) && all_failed;
                             hits += all_failed ? 1 : 0;
                         }
                         counts[b] = hits; });

        BurstTrialResult r;
        r.trials = cfg.trials;
        for (std::size_t c : counts)
            r.bursts += c;
        r.rate = static_cast<double>(r.bursts) / static_cast<double>(r.trials);
        r.ci = wilson_interval(r.bursts, r.trials, z_99);
        r.analytic = burst_error_prob_from_snrs(cfg.pep, snrs);
        r.analytic_within_ci = r.analytic >= r.ci.low && r.analytic <= r.ci.high;
        return r;
    }

    ScatteringResult simulate_scattering(const AntennaArray<double> &array, const ScatteringConfig &cfg,
                                       const PhaseSchedule<double> &schedule)
    {
        const Eigen::Index count = array.size();
        if (cfg.paths < 8)
            throw ConfigError("isotropic scattering needs at least 8 paths");
        if (cfg.samples < 10000)
            throw ConfigError("isotropic scattering needs at least 10^4 samples");
        if (!(cfg.noise_power > 0))
            throw ConfigError("noise power must be positive");
        if (!cfg.branch_powers.empty() && static_cast<Eigen::Index>(cfg.branch_powers.size()) != count)
            throw ConfigError("branch power list must have one entry per antenna");
        schedule.validate(count);

        std::vector<double> powers = cfg.branch_powers;
        if (powers.empty())
            powers.assign(static_cast<std::size_t>(count), 1.0);
        std::vector<double> scale(static_cast<std::size_t>(count));
        for (Eigen::Index l = 0; l < count; ++l)
        {
            const double ms = mean_square_gain(array.element(l));
            if (!(ms > 0))
                throw ConfigError("antenna pattern has zero azimuth gain");
            scale[static_cast<std::size_t>(l)] = std::sqrt(powers[static_cast<std::size_t>(l)] / ms);
        }

        const double path_variance = 1.0 / cfg.paths;
        const double norm = 1.0 / (static_cast<double>(count) * cfg.noise_power);
        ScatteringResult out;
        out.snr.resize(cfg.samples);
        const std::size_t blocks = (cfg.samples + monte_carlo_block - 1) / monte_carlo_block;
        parallel_for(blocks, cfg.workers, [&](std::size_t b)
                     {
                         RandomStream rng(cfg.seed, b);
                         const std::size_t begin = b * monte_carlo_block;
                         const std::size_t end = std::min(cfg.samples, begin + monte_carlo_block);
                         VectorXc<double> h(count);
                         for (std::size_t s = begin; s < end; ++s)
                         {
                             h.setZero();
                             for (int n = 0; n < cfg.paths; ++n)
                             {
                                 const double phi = two_pi_v<double> * rng.uniform();
                                 const auto a = rng.complex_normal(path_variance);
                                 for (Eigen::Index l = 0; l < count; ++l)
                                     h[l] += a * array.element(l)(phi) * std::polar(1.0, -plane_wave_phase(array, l, phi));
                             }
                             const double t = static_cast<double>(s) * cfg.period;
                             std::complex<double> combined(0, 0);
                             for (Eigen::Index l = 0; l < count; ++l)
                                 combined += scale[static_cast<std::size_t>(l)] * h[l] *
                                             std::polar(1.0, schedule.rates[l] * t + schedule.offsets[l]);
                             out.snr[s] = std::norm(combined) * norm;
                         } });

        double total = 0;
        for (double v : out.snr)
            total += v;
        out.mean = total / static_cast<double>(out.snr.size());
        double power_sum = 0;
        for (double p : powers)
            power_sum += p;
        out.analytic_mean = power_sum * norm;
        out.isotropic_mean = 1.0 / cfg.noise_power;
        out.ks_statistic = ks_statistic_exponential(out.snr, out.analytic_mean);
        out.ks_critical = ks_critical_value(0.01, out.snr.size());
        return out;
    }

    double ks_statistic_exponential(std::vector<double> samples, double mean)
    {
        if (samples.empty())
            throw ConfigError("KS statistic needs samples");
        if (!(mean > 0))
            throw ConfigError("exponential mean must be positive");
        std::sort(samples.begin(), samples.end());
        const double n = static_cast<double>(samples.size());
        double d = 0;
        for (std::size_t i = 0; i < samples.size(); ++i)
        {
            const double cdf = -std::expm1(-samples[i] / mean);
            d = std::max(d, std::max(static_cast<double>(i + 1) / n - cdf, cdf - static_cast<double>(i) / n));
        }
        return d;
    }

    double ks_critical_value(double alpha, std::size_t n)
    {
        return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
    }

    double validate_packet_snr(const AntennaArray<double> &array, const PhaseSchedule<double> &schedule,
                               const LinkBudget<double> &budget, double phi, OmegaMode mode)
    {
        budget.validate();
        schedule.validate(array.size());
        const auto &pos = array.positions();
        const double wavenumber = two_pi_v<double> / array.wavelength();
        const double scale = budget.received_power / (static_cast<double>(array.size()) * budget.noise_power);
        double worst = 0;
        for (int k = 0; k < budget.burst_length; ++k)
        {
            const double t = k * budget.period;
            double re = 0, im = 0;
            for (Eigen::Index l = 0; l < array.size(); ++l)
            {
                // propagation delay relative to element 0 along the arrival direction
                double delay_phase = 0;
                if (mode == OmegaMode::geometric)
                    delay_phase = wavenumber * ((pos(0, l) - pos(0, 0)) * std::cos(phi) + (pos(1, l) - pos(1, 0)) * std::sin(phi));
                const auto g = array.element(l)(phi);
                const double theta = delay_phase + schedule.rates[l] * t + schedule.offsets[l];
                re += g.real() * std::cos(theta) - g.imag() * std::sin(theta);
                im += g.real() * std::sin(theta) + g.imag() * std::cos(theta);
            }
            const double direct = scale * (re * re + im * im);
            worst = std::max(worst, std::abs(direct - packet_avg_snr(array, schedule, budget, phi, k, mode)));
        }
        return worst;
    }
}
