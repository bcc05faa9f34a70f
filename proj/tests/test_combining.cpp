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

#include "acn/combining.hpp"
#include "acn/design.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace acn;
using P = FarFieldPattern<double>;

namespace
{
    P random_pattern(oracle::Rng &rng)
    {
        switch (rng.integer(0, 4))
        {
        case 0:
            return P::isotropic();
        case 1:
            return P::dipole_cosine(rng.uniform(0, 6.28));
        case 2:
            return P::cardioid(rng.uniform(0, 6.28), rng.uniform(0, 1));
        case 3:
            return P::patch_lobe(rng.uniform(0, 6.28), rng.uniform(0.3, 2.5), rng.uniform(0, 0.3));
        default:
        {
            std::vector<PatternSample<double>> rows;
            for (int i = 0; i < 36; ++i)
                rows.push_back({10.0 * i, rng.uniform(0, 2), rng.uniform(-180, 180)});
            return P::tabulated(rows);
        }
        }
    }

    AntennaArray<double> random_array(oracle::Rng &rng, int L)
    {
        std::vector<P> el;
        Eigen::Matrix2Xd pos(2, L);
        for (int l = 0; l < L; ++l)
        {
            el.push_back(random_pattern(rng));
            pos.col(l) << rng.uniform(-1, 1), rng.uniform(-1, 1);
        }
        return AntennaArray<double>(el, pos, rng.uniform(0.05, 1));
    }

    LinkBudget<double> budget_of(double snr, int K, double T = 0.1)
    {
        LinkBudget<double> b;
        b.received_power = snr;
        b.burst_length = K;
        b.period = T;
        return b;
    }
}

TEST_CASE("effective_farfield: worked examples")
{
    const AntennaArray<double> one({P::cardioid(0.2, 0.6)});
    PhaseSchedule<double> s1 = PhaseSchedule<double>::zeros(1);
    for (double t : {0.0, 0.3, 7.0})
        CHECK(effective_farfield(one, s1, 1.1, t) == P::cardioid(0.2, 0.6)(1.1));

    const AntennaArray<double> two({P::isotropic(), P::isotropic()});
    auto s2 = PhaseSchedule<double>::zeros(2);
    CHECK(effective_farfield(two, s2, 0.4, 2.5) == std::complex<double>(2, 0));
    s2.offsets[1] = pi_v<double>;
    CHECK(std::abs(effective_farfield(two, s2, 0.4, 0.0)) < 1e-15);

    CHECK_THROWS_AS(effective_farfield(two, PhaseSchedule<double>::zeros(3), 0.0, 0.0), ConfigError);
}

TEST_CASE("packet_avg_snr: worked examples")
{
    const AntennaArray<double> two({P::isotropic(), P::isotropic()});
    const auto b = budget_of(1, 5);
    CHECK(packet_avg_snr(two, PhaseSchedule<double>::zeros(2), b, 0.0, 0) == doctest::Approx(2.0));

    const AntennaArray<double> nulls({P::dipole_cosine(0), P::dipole_cosine(0)});
    CHECK(packet_avg_snr(nulls, PhaseSchedule<double>::zeros(2), b, pi_v<double> / 2, 3) < 1e-30);

    CHECK_THROWS_AS(packet_avg_snr(two, PhaseSchedule<double>::zeros(2), b, 0.0, 5), IndexError);
    CHECK_THROWS_AS(packet_avg_snr(two, PhaseSchedule<double>::zeros(2), b, 0.0, -1), IndexError);
}

TEST_CASE("packet_avg_snr: co-phasing g = (1, j)")
{
    // constant tabulated gains 1 and j
    const auto one = P::tabulated({{0, 1, 0}, {180, 1, 0}});
    const auto jay = P::tabulated({{0, 1, 90}, {180, 1, 90}});
    const AntennaArray<double> pair({one, jay});
    const auto b = budget_of(1, 5);
    auto s = PhaseSchedule<double>::zeros(2);

    // The example's |1 + j e^{-j pi/2}|^2 = 4 needs the rotation e^{-j pi/2}; with the
    // e^{+j beta} schedule convention that is beta = 3 pi / 2.
    s.offsets[1] = 3 * pi_v<double> / 2;
    CHECK(packet_avg_snr(pair, s, b, 0.7, 0) == doctest::Approx(2.0));
    s.offsets[1] = pi_v<double> / 2;
    CHECK(packet_avg_snr(pair, s, b, 0.7, 0) < 1e-30);
}

TEST_CASE("packet_avg_snr matches the direct oracle")
{
    oracle::Rng rng(21);
    for (int trial = 0; trial < 300; ++trial)
    {
        const int L = rng.integer(1, 5);
        const auto arr = random_array(rng, L);
        const auto b = budget_of(rng.uniform(0.1, 20), rng.integer(1, 9), rng.uniform(0.01, 1));
        PhaseSchedule<double> s = PhaseSchedule<double>::zeros(L);
        for (int l = 1; l < L; ++l)
        {
            s.rates[l] = rng.uniform(-50, 50);
            s.offsets[l] = rng.uniform(0, 6.283);
        }
        const double phi = rng.uniform(0, 6.283);
        const auto mode = trial % 2 ? OmegaMode::geometric : OmegaMode::zero;
        std::vector<std::complex<double>> g;
        std::vector<double> omega, rates, offsets;
        for (int l = 0; l < L; ++l)
        {
            g.push_back(arr.element(l)(phi));
            omega.push_back(mode == OmegaMode::geometric ? plane_wave_phase(arr, l, phi) : 0.0);
            rates.push_back(s.rates[l]);
            offsets.push_back(s.offsets[l]);
        }
        const auto expect = oracle::packet_snrs(g, omega, rates, offsets, b.snr(), b.burst_length, b.period);
        const auto got = packet_snrs(arr, s, b, phi, mode);
        for (int k = 0; k < b.burst_length; ++k)
            CHECK(got[k] == doctest::Approx(expect[static_cast<std::size_t>(k)]).epsilon(1e-12).scale(1e-12));
    }
}

TEST_CASE("L = 1 is schedule independent")
{
    const AntennaArray<double> one({P::patch_lobe(1.0, 1.2, 0.1)});
    const auto b = budget_of(3, 6);
    const double expect = 3 * std::norm(one.element(0)(0.4));
    for (int k = 0; k < 6; ++k)
        CHECK(packet_avg_snr(one, PhaseSchedule<double>::zeros(1), b, 0.4, k) == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("rho: worked examples")
{
    const AntennaArray<double> two({P::isotropic(), P::isotropic()});
    const auto b = budget_of(1, 5);
    CHECK(rho(Scheme::mrc(), two, b, 0.3) == doctest::Approx(10));
    CHECK(rho(Scheme::acn(), two, b, 0.3) == doctest::Approx(5));
    CHECK(rho(Scheme::egc(), two, b, 0.3) == doctest::Approx(10));
    CHECK(rho(Scheme::sc(), two, b, 0.3) == doctest::Approx(5));
    CHECK(rho(Scheme::isotropic(), two, b, 0.3) == doctest::Approx(5));
    CHECK(rho(Scheme::single(1), two, b, 0.3) == doctest::Approx(5));
    CHECK_THROWS_AS(rho(Scheme::single(2), two, b, 0.3), IndexError);

    const AntennaArray<double> nulls({P::dipole_cosine(0), P::dipole_cosine(pi_v<double>)});
    const double phi = pi_v<double> / 2;
    for (auto s : {Scheme::mrc(), Scheme::egc(), Scheme::sc(), Scheme::acn(), Scheme::single(0)})
        CHECK(rho(s, nulls, b, phi) < 1e-30);
    CHECK(rho(Scheme::isotropic(), nulls, b, phi) == doctest::Approx(5));
}

TEST_CASE("rho ordering and the MRC/ACN ratio")
{
    oracle::Rng rng(3);
    for (int trial = 0; trial < 10000; ++trial)
    {
        const int L = rng.integer(1, 6);
        const auto arr = random_array(rng, L);
        const auto b = budget_of(rng.uniform(0.01, 100), rng.integer(1, 10));
        const double phi = rng.uniform(0, 6.283);
        const double mrc = rho(Scheme::mrc(), arr, b, phi);
        const double egc = rho(Scheme::egc(), arr, b, phi);
        const double sc = rho(Scheme::sc(), arr, b, phi);
        const double acn = rho(Scheme::acn(), arr, b, phi);
        const double slack = 1e-12 * std::max(1.0, mrc);
        CHECK(mrc - egc >= -slack);
        CHECK(egc - acn >= -slack);
        CHECK(mrc - sc >= -slack);
        CHECK(sc - acn >= -slack);
        CHECK(std::abs(mrc - L * acn) <= 4 * std::numeric_limits<double>::epsilon() * mrc);
    }
}

TEST_CASE("optimal schedules: summed packet SNR is offset and geometry independent")
{
    oracle::Rng rng(8);
    for (int trial = 0; trial < 40; ++trial)
    {
        const int K = rng.integer(2, 8);
        const int L = rng.integer(2, K);
        const auto arr = random_array(rng, L);
        const auto b = budget_of(rng.uniform(0.5, 10), K, rng.uniform(0.05, 0.5));
        const double phi = rng.uniform(0, 6.283);
        const double ref = rho(Scheme::acn(), arr, b, phi);
        auto s = PhaseSchedule<double>::from_rates(design_rates<double>(L, K, b.period));
        double spread = 0;
        for (int i = 0; i < 100; ++i)
        {
            for (int l = 1; l < L; ++l)
                s.offsets[l] = rng.uniform(0, 6.283);
            const auto mode = i % 2 ? OmegaMode::geometric : OmegaMode::zero;
            spread = std::max(spread, std::abs(rho_from_packets(arr, s, b, phi, mode) - ref));
        }
        CHECK(spread <= 1e-9 * std::max(ref, 1e-300));
    }
}

TEST_CASE("schedule and budget validation")
{
    auto s = PhaseSchedule<double>::zeros(2);
    s.rates[0] = 1;
    CHECK_THROWS_AS(s.validate(2), ConfigError);
    s = PhaseSchedule<double>::zeros(2);
    s.offsets[1] = 7;
    CHECK_THROWS_AS(s.validate(2), ConfigError);
    LinkBudget<double> b;
    b.noise_power = 0;
    CHECK_THROWS_AS(b.validate(), ConfigError);
    b = LinkBudget<double>{};
    b.burst_length = 0;
    CHECK_THROWS_AS(b.validate(), ConfigError);
    b = LinkBudget<double>{};
    b.period = 0;
    CHECK_THROWS_AS(b.validate(), ConfigError);
}
