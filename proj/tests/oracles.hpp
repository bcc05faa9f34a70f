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

// Reference implementations written straight from the defining sums. They share no code
// with the library beyond the standard library.

#ifndef ACN_TESTS_ORACLES_HPP
#define ACN_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

namespace oracle
{
    constexpr double pi = 3.14159265358979323846;

    // sum_{k=0}^{K-1} cos(y - 2 k x)
    inline double kernel(double x, double y, int K)
    {
        long double s = 0;
        for (int k = 0; k < K; ++k)
            s += std::cos(static_cast<long double>(y) - 2.0L * k * static_cast<long double>(x));
        return static_cast<double>(s);
    }

    // K sum |g_l|^2 + 2 sum_{l<m} |g_l||g_m| sum_k cos(psi_m - psi_l - 2 k (x_m - x_l))
    inline double objective(const std::vector<double> &mag, const std::vector<double> &x, const std::vector<double> &psi, int K)
    {
        double j = 0;
        for (double m : mag)
            j += K * m * m;
        for (std::size_t l = 0; l < mag.size(); ++l)
            for (std::size_t m = l + 1; m < mag.size(); ++m)
                for (int k = 0; k < K; ++k)
                    j += 2 * mag[l] * mag[m] * std::cos(psi[m] - psi[l] - 2.0 * k * (x[m] - x[l]));
        return j;
    }

    // Minimum of `objective` over psi on a uniform grid with psi_0 = 0.
    inline double inf_psi_grid(const std::vector<double> &mag, const std::vector<double> &x, int K, int points)
    {
        const std::size_t L = mag.size();
        std::uint64_t total = 1;
        for (std::size_t l = 1; l < L; ++l)
            total *= static_cast<std::uint64_t>(points);
        std::vector<double> psi(L, 0.0);
        double best = std::numeric_limits<double>::infinity();
        for (std::uint64_t n = 0; n < total; ++n)
        {
            std::uint64_t r = n;
            for (std::size_t l = L - 1; l >= 1; --l)
            {
                psi[l] = 2 * pi * static_cast<double>(r % static_cast<std::uint64_t>(points)) / points;
                r /= static_cast<std::uint64_t>(points);
            }
            best = std::min(best, objective(mag, x, psi, K));
        }
        return best;
    }

    // Per-packet average SNR from the combiner output for a unit signal.
    inline std::vector<double> packet_snrs(const std::vector<std::complex<double>> &g, const std::vector<double> &omega,
                                           const std::vector<double> &rates, const std::vector<double> &offsets,
                                           double snr, int K, double T)
    {
        std::vector<double> out;
        const double L = static_cast<double>(g.size());
        for (int k = 0; k < K; ++k)
        {
            std::complex<double> r = 0;
            for (std::size_t l = 0; l < g.size(); ++l)
                r += g[l] * std::exp(std::complex<double>(0, -(omega[l] - rates[l] * k * T - offsets[l])));
            out.push_back(snr / L * std::norm(r));
        }
        return out;
    }

    inline double exponential_pep(double a, double b, double snr) { return std::min(1.0, a * std::exp(-b * snr)); }

    // extended precision keeps 1 - (1 - p)^bits accurate for small bit error rates
    inline double qpsk_awgn_pep(int bits, double snr)
    {
        const long double p = 0.5L * std::erfc(std::sqrt(static_cast<long double>(snr)) / std::sqrt(2.0L));
        return static_cast<double>(1.0L - std::pow(1.0L - p, bits));
    }

    inline double qpsk_rayleigh_pep(int bits, double snr)
    {
        const long double s = snr;
        return static_cast<double>(1.0L - std::pow(0.5L + 0.5L * std::sqrt(s / (2.0L + s)), bits));
    }

    // Tiny deterministic generator for test inputs (SplitMix64).
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : s_(seed) {}
        double uniform()
        {
            std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            z ^= z >> 31;
            return static_cast<double>(z >> 11) * 0x1.0p-53;
        }
        double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
        int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }

    private:
        std::uint64_t s_;
    };
}

#endif
