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

#ifndef ACN_KERNEL_HPP
#define ACN_KERNEL_HPP

#include "errors.hpp"
#include "numeric.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace acn
{
    namespace detail
    {
        inline void check_burst(int bursts)
        {
            if (bursts < 2)
                throw ConfigError("burst length K must be at least 2");
        }
    }

    // f(x, y) = amplitude * cos(y - shift).
    template <typename Scalar>
    struct KernelTerms
    {
        Scalar amplitude;
        Scalar shift;
    };

    /*
     * Closed form of f(x, y) = sum_{k=0}^{K-1} cos(y - 2 k x):
     *   x in X = {q pi}:  K cos(y)
     *   otherwise:        sin(K x) / sin(x) * cos(y - (K - 1) x)
     * The ratio is evaluated on x reduced modulo pi so it stays accurate close to X.
     */
    template <typename Scalar>
    KernelTerms<Scalar> kernel_terms(Scalar x, int bursts)
    {
        detail::check_burst(bursts);
        const Scalar r = std::remainder(x, pi_v<Scalar>);
        if (r == Scalar(0))
            return {Scalar(bursts), Scalar(0)};
        const auto q = static_cast<std::int64_t>(std::llround((x - r) / pi_v<Scalar>));
        const bool flip = (q % 2 != 0) && ((bursts - 1) % 2 != 0);
        const Scalar ratio = std::sin(Scalar(bursts) * r) / std::sin(r);
        return {flip ? -ratio : ratio, Scalar(bursts - 1) * x};
    }

    template <typename Scalar>
    Scalar f_kernel(Scalar x, Scalar y, int bursts)
    {
        const auto t = kernel_terms(x, bursts);
        return t.amplitude * std::cos(y - t.shift);
    }

    // Defining sum, K cosine terms.
    template <typename Scalar>
    Scalar f_kernel_sum(Scalar x, Scalar y, int bursts)
    {
        detail::check_burst(bursts);
        Scalar acc = 0;
        for (int k = 0; k < bursts; ++k)
            acc += std::cos(y - Scalar(2 * k) * x);
        return acc;
    }

    // x in X* = {q pi / K} \ {q pi}, to within `tol` rad.
    template <typename Scalar>
    bool x_star_membership(Scalar x, int bursts, Scalar tol = Scalar(1e-9))
    {
        detail::check_burst(bursts);
        const Scalar unit = pi_v<Scalar> / Scalar(bursts);
        const Scalar q = std::round(x / unit);
        if (std::abs(x - q * unit) > tol)
            return false;
        return std::fmod(q, Scalar(bursts)) != Scalar(0);
    }

    // Representatives of X* in [0, 2*pi): q pi / K for q = 1..2K-1, q != K.
    template <typename Scalar>
    std::vector<Scalar> x_star_set(int bursts)
    {
        detail::check_burst(bursts);
        std::vector<Scalar> out;
        for (int q = 1; q < 2 * bursts; ++q)
            if (q != bursts)
                out.push_back(Scalar(q) * pi_v<Scalar> / Scalar(bursts));
        return out;
    }

    // X** = {pi/K, ..., (K-1) pi/K}: the residues of X* modulo pi.
    template <typename Scalar>
    std::vector<Scalar> x_double_star_set(int bursts)
    {
        detail::check_burst(bursts);
        std::vector<Scalar> out;
        for (int q = 1; q < bursts; ++q)
            out.push_back(Scalar(q) * pi_v<Scalar> / Scalar(bursts));
        return out;
    }

    template <typename Scalar>
    struct PairTerm
    {
        Eigen::Index l;
        Eigen::Index m;
        Scalar weight;    // c_w = 2 |g_l| |g_m|
        Scalar x;         // x_m - x_l
        Scalar amplitude; // d_w = c_w * kernel amplitude
        Scalar shift;     // e_w
    };

    /*
     * Pair expansion of the cross terms of J: w <-> (l, m), l < m, W = L (L - 1) / 2, with
     *   sum_w c_w f(x_m - x_l, psi_m - psi_l) = sum_w d_w cos(psi_m - psi_l - e_w).
     */
    template <typename Scalar>
    class PairIndexMap
    {
    public:
        PairIndexMap(const VectorX<Scalar> &magnitudes, const VectorX<Scalar> &x, int bursts)
            : count_(magnitudes.size())
        {
            if (x.size() != count_)
                throw ConfigError("rate vector length does not match the number of antennas");
            pairs_.reserve(static_cast<std::size_t>(count_ * (count_ - 1) / 2));
            for (Eigen::Index l = 0; l + 1 < count_; ++l)
                for (Eigen::Index m = l + 1; m < count_; ++m)
                {
                    const Scalar c = Scalar(2) * magnitudes[l] * magnitudes[m];
                    const Scalar dx = x[m] - x[l];
                    const auto t = kernel_terms(dx, bursts);
                    pairs_.push_back({l, m, c, dx, c * t.amplitude, t.shift});
                }
        }

        Eigen::Index antennas() const noexcept { return count_; }
        std::size_t size() const noexcept { return pairs_.size(); }
        const std::vector<PairTerm<Scalar>> &pairs() const noexcept { return pairs_; }

        Scalar cross_sum(const VectorX<Scalar> &psi) const
        {
            Scalar acc = 0;
            for (const auto &p : pairs_)
                acc += p.amplitude * std::cos(psi[p.m] - psi[p.l] - p.shift);
            return acc;
        }

        Scalar max_amplitude() const
        {
            Scalar out = 0;
            for (const auto &p : pairs_)
                out = std::max(out, std::abs(p.amplitude));
            return out;
        }

    private:
        Eigen::Index count_;
        std::vector<PairTerm<Scalar>> pairs_;
    };
}

#endif
