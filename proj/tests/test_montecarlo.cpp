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

#include "acn/design.hpp"
#include "acn/montecarlo.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace acn;
using P = FarFieldPattern<double>;

namespace
{
    BurstTrialConfig constant_pep_config(double p, int K, std::size_t trials)
    {
        // L = 1 isotropic at SNR s gives P_e = exp(-b s); choose b for the wanted p
        BurstTrialConfig cfg;
        cfg.trials = trials;
        cfg.seed = 99;
        cfg.schedule = PhaseSchedule<double>::zeros(1);
        cfg.budget.received_power = 1;
        cfg.budget.burst_length = K;
        cfg.pep = ExponentialPep<double>{1, p > 0 ? -std::log(p) : 800.0};
        return cfg;
    }

    // Exponential CDF distance computed without sorting tricks, for small samples.
    double ks_reference(std::vector<double> s, double mean)
    {
        std::sort(s.begin(), s.end());
        double d = 0;
        const double n = static_cast<double>(s.size());
        for (std::size_t i = 0; i < s.size(); ++i)
        {
            const double F = 1 - std::exp(-s[i] / mean);
            d = std::max({d, std::abs((i + 1) / n - F), std::abs(i / n - F)});
        }
        return d;
    }
}

TEST_CASE("random streams are reproducible and distinct")
{
    RandomStream a(5, 0), b(5, 0), c(5, 1), d(6, 0);
    bool differ_c = false, differ_d = false;
    for (int i = 0; i < 1000; ++i)
    {
        const double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        differ_c = differ_c || u != c.uniform();
        differ_d = differ_d || u != d.uniform();
    }
    CHECK(differ_c);
    CHECK(differ_d);

    RandomStream g(1, 2);
    double sum = 0, sq = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i)
    {
        const double v = g.normal();
        sum += v;
        sq += v * v;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(std::abs(sq / n - 1) < 0.02);

    RandomStream z(3, 3);
    double p = 0;
    for (int i = 0; i < n; ++i)
        p += std::norm(z.complex_normal(2.5));
    CHECK(p / n == doctest::Approx(2.5).epsilon(0.02));
}

TEST_CASE("Wilson interval")
{
    const auto ci = wilson_interval(50, 100, 1.959963984540054);
    CHECK(ci.low == doctest::Approx(0.40383).epsilon(1e-4));
    CHECK(ci.high == doctest::Approx(0.59617).epsilon(1e-4));
    const auto zero = wilson_interval(0, 1000, z_99);
    CHECK(zero.low == 0.0);
    CHECK(zero.high > 0.0);
    const auto all = wilson_interval(1000, 1000, z_99);
    CHECK(all.high == 1.0);
    CHECK(all.low < 1.0);
    CHECK_THROWS_AS(wilson_interval(0, 0, z_99), ConfigError);
}

TEST_CASE("simulate_bursts: worked examples")
{
    const AntennaArray<double> one({P::isotropic()});
    auto ones = constant_pep_config(1.0, 5, 10000);
    ones.pep = ExponentialPep<double>{1, 1e-300};
    const auto r1 = simulate_bursts(one, ones);
    CHECK(r1.rate == 1.0);
    CHECK(r1.analytic == 1.0);

    auto zeros = constant_pep_config(0.0, 5, 10000);
    zeros.budget.received_power = 1e6;
    const auto r0 = simulate_bursts(one, zeros);
    CHECK(r0.rate == 0.0);

    const auto r = simulate_bursts(one, constant_pep_config(0.3, 2, 100000));
    CHECK(r.analytic == doctest::Approx(0.09).epsilon(1e-12));
    CHECK(r.analytic_within_ci);
    CHECK(r.ci.low <= 0.09);
    CHECK(r.ci.high >= 0.09);

    auto few = constant_pep_config(0.3, 2, 999);
    CHECK_THROWS_AS(simulate_bursts(one, few), ConfigError);
}

TEST_CASE("simulate_bursts is independent of the worker count")
{
    const AntennaArray<double> arr({P::cardioid(0, 0.7), P::isotropic()});
    BurstTrialConfig cfg;
    cfg.trials = 50000;
    cfg.seed = 1234;
    cfg.phi = 2.0;
    cfg.schedule = PhaseSchedule<double>::from_rates(design_rates<double>(2, 4, 0.1));
    cfg.budget.burst_length = 4;
    cfg.budget.received_power = 4;
    cfg.workers = 1;
    const auto a = simulate_bursts(arr, cfg);
    cfg.workers = 3;
    const auto b = simulate_bursts(arr, cfg);
    CHECK(a.bursts == b.bursts);
    CHECK(a.rate == b.rate);
}

TEST_CASE("KS statistic and critical value")
{
    oracle::Rng rng(3);
    std::vector<double> s;
    for (int i = 0; i < 2000; ++i)
        s.push_back(-2.0 * std::log(1 - rng.uniform()));
    CHECK(ks_statistic_exponential(s, 2.0) == doctest::Approx(ks_reference(s, 2.0)).epsilon(1e-12));
    CHECK(ks_statistic_exponential(s, 2.0) < ks_critical_value(0.01, s.size()));
    CHECK(ks_statistic_exponential(s, 4.0) > ks_critical_value(0.01, s.size()));
    CHECK(ks_critical_value(0.01, 1000000) == doctest::Approx(1.6276236307187293e-3).epsilon(1e-12));
}

TEST_CASE("isotropic scattering: isotropic pair mean and single-branch reduction")
{
    Eigen::Matrix2Xd pos(2, 2);
    pos << 0, 1, 0, 0;
    const AntennaArray<double> pair({P::isotropic(), P::isotropic()}, pos, 1.0);
    ScatteringConfig cfg;
    cfg.samples = 200000;
    cfg.seed = 4;
    const auto r = simulate_scattering(pair, cfg, PhaseSchedule<double>::from_rates(design_rates<double>(2, 5, 0.1)));
    CHECK(r.analytic_mean == 1.0);
    CHECK(r.mean == doctest::Approx(1.0).epsilon(0.02));
    CHECK(r.snr.size() == 200000);

    const AntennaArray<double> one({P::isotropic()});
    ScatteringConfig c1;
    c1.samples = 200000;
    c1.branch_powers = {3.0};
    c1.noise_power = 1.5;
    const auto r1 = simulate_scattering(one, c1, PhaseSchedule<double>::zeros(1));
    CHECK(r1.analytic_mean == doctest::Approx(2.0));
    CHECK(r1.mean == doctest::Approx(2.0).epsilon(0.02));
    // a single Rayleigh branch is exponential
    CHECK(r1.ks_statistic < ks_critical_value(0.01, r1.snr.size()));
}

TEST_CASE("isotropic scattering: determinism and partitioning")
{
    const AntennaArray<double> pair({P::cardioid(0, 0.5), P::cardioid(pi_v<double>, 0.5)});
    ScatteringConfig cfg;
    cfg.samples = 20000;
    cfg.paths = 16;
    cfg.seed = 77;
    const auto sched = PhaseSchedule<double>::from_rates(design_rates<double>(2, 3, 0.1));
    const auto a = simulate_scattering(pair, cfg, sched);
    cfg.workers = 4;
    const auto b = simulate_scattering(pair, cfg, sched);
    CHECK(a.snr == b.snr);
    CHECK(a.mean == b.mean);
    CHECK(a.ks_statistic == b.ks_statistic);
}

TEST_CASE("isotropic scattering: configuration errors")
{
    const AntennaArray<double> one({P::isotropic()});
    ScatteringConfig cfg;
    cfg.paths = 7;
    CHECK_THROWS_AS(simulate_scattering(one, cfg, PhaseSchedule<double>::zeros(1)), ConfigError);
    cfg = ScatteringConfig{};
    cfg.samples = 9999;
    CHECK_THROWS_AS(simulate_scattering(one, cfg, PhaseSchedule<double>::zeros(1)), ConfigError);
    cfg = ScatteringConfig{};
    cfg.branch_powers = {1.0, 1.0};
    CHECK_THROWS_AS(simulate_scattering(one, cfg, PhaseSchedule<double>::zeros(1)), ConfigError);
}

TEST_CASE("validate_packet_snr")
{
    oracle::Rng rng(30);
    const AntennaArray<double> one({P::patch_lobe(0.2, 1.0, 0.1)});
    LinkBudget<double> b;
    CHECK(validate_packet_snr(one, PhaseSchedule<double>::zeros(1), b, 0.3, OmegaMode::geometric) == 0.0);

    for (int trial = 0; trial < 200; ++trial)
    {
        const int L = rng.integer(2, 3);
        std::vector<P> el{P::cardioid(rng.uniform(0, 6), rng.uniform(0, 1)), P::patch_lobe(rng.uniform(0, 6), 1.2, 0.1),
                          P::dipole_cosine(rng.uniform(0, 6))};
        el.resize(static_cast<std::size_t>(L));
        Eigen::Matrix2Xd pos(2, L);
        for (int l = 0; l < L; ++l)
            pos.col(l) << rng.uniform(-1, 1), rng.uniform(-1, 1);
        const AntennaArray<double> arr(el, pos, 0.3);
        b.burst_length = 5;
        auto s = PhaseSchedule<double>::from_rates(design_rates<double>(L, 5, b.period));
        for (int l = 1; l < L; ++l)
            s.offsets[l] = rng.uniform(0, 6.28);
        for (auto mode : {OmegaMode::zero, OmegaMode::geometric})
            CHECK(validate_packet_snr(arr, s, b, rng.uniform(0, 6.28), mode) <= 1e-12);
    }
}
