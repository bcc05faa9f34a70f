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

#ifndef ACN_NUMERIC_HPP
#define ACN_NUMERIC_HPP

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <cstddef>
#include <exception>
#include <numbers>
#include <thread>
#include <vector>

namespace acn
{
    template <typename Scalar>
    using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    template <typename Scalar>
    using VectorXc = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

    template <typename Scalar>
    inline constexpr Scalar pi_v = std::numbers::pi_v<Scalar>;

    template <typename Scalar>
    inline constexpr Scalar two_pi_v = Scalar(2) * std::numbers::pi_v<Scalar>;

    template <typename Scalar>
    constexpr Scalar deg_to_rad(Scalar deg) { return deg * (pi_v<Scalar> / Scalar(180)); }

    template <typename Scalar>
    constexpr Scalar rad_to_deg(Scalar rad) { return rad * (Scalar(180) / pi_v<Scalar>); }

    template <typename Scalar>
    Scalar db_to_linear(Scalar db) { return std::pow(Scalar(10), db / Scalar(10)); }

    // Reduce an angle into [0, 2*pi).
    template <typename Scalar>
    Scalar wrap_two_pi(Scalar angle)
    {
        Scalar r = std::fmod(angle, two_pi_v<Scalar>);
        if (r < Scalar(0))
            r += two_pi_v<Scalar>;
        // fmod of a tiny negative value can round up to exactly 2*pi
        if (r >= two_pi_v<Scalar>)
            r = Scalar(0);
        return r;
    }

    // Golden-section search for a minimiser of a unimodal function on [lo, hi].
    template <typename Scalar, typename Fn>
    Scalar golden_section_minimize(Fn &&fn, Scalar lo, Scalar hi, Scalar tol)
    {
        const Scalar inv_phi = (std::sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
        Scalar a = lo, b = hi;
        Scalar c = b - inv_phi * (b - a);
        Scalar d = a + inv_phi * (b - a);
        Scalar fc = fn(c), fd = fn(d);
        while (b - a > tol)
        {
            if (fc <= fd)
            {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = fn(c);
            }
            else
            {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = fn(d);
            }
        }
        return fc <= fd ? c : d;
    }

    // Calls fn(i) for i in [0, n) on `workers` threads with a static strided partition.
    // Callers write into per-index slots so the result does not depend on the worker count.
    template <typename Fn>
    void parallel_for(std::size_t n, unsigned workers, Fn &&fn)
    {
        if (workers <= 1 || n < 2)
        {
            for (std::size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }
        if (workers > n)
            workers = static_cast<unsigned>(n);

        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w]
                              {
                                  try
                                  {
                                      for (std::size_t i = w; i < n; i += workers)
                                          fn(i);
                                  }
                                  catch (...)
                                  {
                                      errors[w] = std::current_exception();
                                  } });
        for (auto &t : pool)
            t.join();
        for (auto &e : errors)
            if (e)
                std::rethrow_exception(e);
    }
}

#endif
