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

#ifndef ACN_DESIGN_HPP
#define ACN_DESIGN_HPP

#include "combining.hpp"
#include "errors.hpp"
#include "kernel.hpp"
#include "numeric.hpp"
#include "patterns.hpp"
#include "pep.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace acn
{
    /*
     * Smallest nonnegative optimal rates: rate_l = l * 2 pi / (K T). Every pairwise
     * (rate_m - rate_l) T / 2 = (m - l) pi / K then lies in X*, which is possible only
     * when L <= K.
     */
    template <typename Scalar>
    VectorX<Scalar> design_rates(Eigen::Index antennas, int bursts, Scalar period)
    {
        if (antennas < 2)
            throw ConfigError("rate design needs at least two antennas");
        detail::check_burst(bursts);
        if (!(period > Scalar(0)))
            throw ConfigError("message period must be positive");
        if (antennas > bursts)
            throw Infeasible("infeasible design: L = " + std::to_string(antennas) + " exceeds K = " +
                             std::to_string(bursts) + "; pairwise rate differences can all lie in X* only when L <= K");
        VectorX<Scalar> rates(antennas);
        for (Eigen::Index l = 0; l < antennas; ++l)
            rates[l] = Scalar(l) * two_pi_v<Scalar> / (Scalar(bursts) * period);
        return rates;
    }

    // x_l = rate_l T / 2.
    template <typename Scalar>
    VectorX<Scalar> rates_to_x(const VectorX<Scalar> &rates, Scalar period)
    {
        return rates * (period / Scalar(2));
    }

    template <typename Scalar>
    VectorX<Scalar> x_to_rates(const VectorX<Scalar> &x, Scalar period)
    {
        return x * (Scalar(2) / period);
    }

    // J = K sum |g_l|^2 + sum_{l<m} 2 |g_l| |g_m| f(x_m - x_l, psi_m - psi_l).
    template <typename Scalar>
    Scalar objective_J(const VectorX<Scalar> &magnitudes, const VectorX<Scalar> &x, const VectorX<Scalar> &psi, int bursts)
    {
        if (psi.size() != magnitudes.size())
            throw ConfigError("psi vector length does not match the number of antennas");
        const PairIndexMap<Scalar> pairs(magnitudes, x, bursts);
        return Scalar(bursts) * magnitudes.squaredNorm() + pairs.cross_sum(psi);
    }

    template <typename Scalar>
    Scalar objective_J(const AntennaArray<Scalar> &array, Scalar phi, const VectorX<Scalar> &x,
                       const VectorX<Scalar> &psi, int bursts)
    {
        return objective_J(array.magnitudes(phi), x, psi, bursts);
    }

    template <typename Scalar = double>
    struct InfPsiResult
    {
        VectorX<Scalar> psi; // psi[0] == 0; only differences matter
        Scalar value;
    };

    // Given c_w, x_w and arbitrary y_w, set the ceil(W/2) entries with the largest |d_w| so
    // that cos(y_w - e_w) = -sgn(d_w). The resulting sum c_w f(x_w, y_w) is <= 0.
    template <typename Scalar>
    VectorX<Scalar> pair_phase_assignment(const VectorX<Scalar> &weights, const VectorX<Scalar> &x, int bursts, VectorX<Scalar> y)
    {
        const Eigen::Index count = weights.size();
        if (x.size() != count || y.size() != count)
            throw ConfigError("weights, x and y must have equal length");
        std::vector<Scalar> amplitude(static_cast<std::size_t>(count)), shift(static_cast<std::size_t>(count));
        for (Eigen::Index w = 0; w < count; ++w)
        {
            const auto t = kernel_terms(x[w], bursts);
            amplitude[static_cast<std::size_t>(w)] = weights[w] * t.amplitude;
            shift[static_cast<std::size_t>(w)] = t.shift;
        }
        std::vector<Eigen::Index> order(static_cast<std::size_t>(count));
        std::iota(order.begin(), order.end(), Eigen::Index(0));
        std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b)
                         { return std::abs(amplitude[static_cast<std::size_t>(a)]) > std::abs(amplitude[static_cast<std::size_t>(b)]); });
        const Eigen::Index take = (count + 1) / 2;
        for (Eigen::Index i = 0; i < take; ++i)
        {
            const auto w = static_cast<std::size_t>(order[static_cast<std::size_t>(i)]);
            y[static_cast<Eigen::Index>(w)] = shift[w] + (amplitude[w] > Scalar(0) ? pi_v<Scalar> : Scalar(0));
        }
        return y;
    }

    namespace detail
    {
        // Realise the pair-phase construction on node phases: walk pairs by decreasing |d_w|,
        // fixing psi_m - psi_l = e_w (+ pi when d_w > 0) for up to ceil(W/2) pairs that do not
        // close a cycle. For L <= 3 every choice of ceil(W/2) pairs is acyclic.
        template <typename Scalar>
        VectorX<Scalar> pair_phase_psi(const PairIndexMap<Scalar> &map)
        {
            const Eigen::Index count = map.antennas();
            const auto &pairs = map.pairs();
            std::vector<std::size_t> order(pairs.size());
            std::iota(order.begin(), order.end(), std::size_t(0));
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b)
                             { return std::abs(pairs[a].amplitude) > std::abs(pairs[b].amplitude); });

            std::vector<Eigen::Index> parent(static_cast<std::size_t>(count));
            std::iota(parent.begin(), parent.end(), Eigen::Index(0));
            auto find = [&](Eigen::Index v)
            {
                while (parent[static_cast<std::size_t>(v)] != v)
                    v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
                return v;
            };

            struct Edge
            {
                Eigen::Index l, m;
                Scalar diff;
            };
            std::vector<Edge> edges;
            const std::size_t take = (pairs.size() + 1) / 2;
            for (std::size_t idx : order)
            {
                if (edges.size() == take)
                    break;
                const auto &p = pairs[idx];
                const Eigen::Index a = find(p.l), b = find(p.m);
                if (a == b)
                    continue;
                parent[static_cast<std::size_t>(b)] = a;
                edges.push_back({p.l, p.m, p.shift + (p.amplitude > Scalar(0) ? pi_v<Scalar> : Scalar(0))});
            }

            VectorX<Scalar> psi = VectorX<Scalar>::Zero(count);
            std::vector<bool> known(static_cast<std::size_t>(count), false);
            for (Eigen::Index root = 0; root < count; ++root)
            {
                if (known[static_cast<std::size_t>(root)])
                    continue;
                known[static_cast<std::size_t>(root)] = true;
                bool progress = true;
                while (progress)
                {
                    progress = false;
                    for (const auto &e : edges)
                    {
                        const bool kl = known[static_cast<std::size_t>(e.l)], km = known[static_cast<std::size_t>(e.m)];
                        if (kl && !km)
                        {
                            psi[e.m] = wrap_two_pi(psi[e.l] + e.diff);
                            known[static_cast<std::size_t>(e.m)] = progress = true;
                        }
                        else if (km && !kl)
                        {
                            psi[e.l] = wrap_two_pi(psi[e.m] - e.diff);
                            known[static_cast<std::size_t>(e.l)] = progress = true;
                        }
                    }
                }
            }
            // keep the reference at zero; J depends on differences only
            const Scalar shift0 = psi[0];
            for (Eigen::Index l = 0; l < count; ++l)
                psi[l] = wrap_two_pi(psi[l] - shift0);
            return psi;
        }

        // Exact coordinate minimisation: with the others fixed, the cross sum is
        // |Z| cos(psi_i - arg Z) + const, minimised at psi_i = arg Z + pi.
        template <typename Scalar>
        Scalar coordinate_descent(const PairIndexMap<Scalar> &map, Scalar base, VectorX<Scalar> &psi)
        {
            const Eigen::Index count = map.antennas();
            const auto &pairs = map.pairs();
            Scalar value = base + map.cross_sum(psi);
            for (int sweep = 0; sweep < 500; ++sweep)
            {
                for (Eigen::Index i = 1; i < count; ++i)
                {
                    std::complex<Scalar> z(0, 0);
                    for (const auto &p : pairs)
                    {
                        if (p.m == i)
                            z += std::polar(p.amplitude, psi[p.l] + p.shift);
                        else if (p.l == i)
                            z += std::polar(p.amplitude, psi[p.m] - p.shift);
                    }
                    if (std::abs(z) > Scalar(0))
                        psi[i] = wrap_two_pi(std::arg(z) + pi_v<Scalar>);
                }
                const Scalar next = base + map.cross_sum(psi);
                const bool settled = next >= value - Scalar(1e-15) * std::max(Scalar(1), std::abs(value));
                value = std::min(value, next);
                if (settled)
                    break;
            }
            return value;
        }

        // Calls fn(index) for every point of an n^dims grid, last index fastest.
        template <typename Fn>
        void for_each_grid_point(Eigen::Index dims, int n, Fn &&fn)
        {
            std::vector<int> index(static_cast<std::size_t>(dims), 0);
            while (true)
            {
                fn(index);
                Eigen::Index pos = dims - 1;
                while (pos >= 0 && ++index[static_cast<std::size_t>(pos)] == n)
                    index[static_cast<std::size_t>(pos--)] = 0;
                if (pos < 0)
                    return;
            }
        }
    }

    /*
     * inf over psi of J for fixed magnitudes and x.
     *  - every cross amplitude ~0 (e.g. all pairwise x in X*): J is constant.
     *  - L = 2: closed form, K sum |g|^2 - |d_1|.
     *  - L >= 3: uniform grid of `grid` points per free coordinate (fewer when the total
     *    would exceed `max_points`), exact coordinate descent from the best grid point, and
     *    the pair-phase construction as a second start. The smaller value wins.
     */
    template <typename Scalar>
    InfPsiResult<Scalar> inf_psi_J(const VectorX<Scalar> &magnitudes, const VectorX<Scalar> &x, int bursts,
                                   int grid = 64, std::size_t max_points = std::size_t(1) << 21)
    {
        const Eigen::Index count = magnitudes.size();
        if (count < 2)
            throw ConfigError("inf over psi needs at least two antennas");
        const PairIndexMap<Scalar> map(magnitudes, x, bursts);
        const Scalar base = Scalar(bursts) * magnitudes.squaredNorm();
        VectorX<Scalar> psi = VectorX<Scalar>::Zero(count);

        Scalar weight_max = 0;
        for (const auto &p : map.pairs())
            weight_max = std::max(weight_max, p.weight);
        if (map.max_amplitude() <= Scalar(1e-13) * (base + weight_max))
            return {psi, base + map.cross_sum(psi)};

        if (count == 2)
        {
            const auto &p = map.pairs().front();
            psi[1] = wrap_two_pi(p.shift + (p.amplitude > Scalar(0) ? pi_v<Scalar> : Scalar(0)));
            return {psi, base - std::abs(p.amplitude)};
        }

        int n = std::max(grid, 2);
        while (n > 2 && std::pow(Scalar(n), Scalar(count - 1)) > Scalar(max_points))
            --n;
        const Scalar step = two_pi_v<Scalar> / Scalar(n);
        Scalar best = std::numeric_limits<Scalar>::infinity();
        VectorX<Scalar> best_psi = psi;
        detail::for_each_grid_point(count - 1, n, [&](const std::vector<int> &idx)
                                    {
                                        for (Eigen::Index l = 1; l < count; ++l)
                                            psi[l] = Scalar(idx[static_cast<std::size_t>(l - 1)]) * step;
                                        const Scalar v = base + map.cross_sum(psi);
                                        if (v < best - Scalar(1e-12) * std::max(Scalar(1), std::abs(best)))
                                        {
                                            best = v;
                                            best_psi = psi;
                                        } });
        Scalar from_grid = detail::coordinate_descent(map, base, best_psi);

        VectorX<Scalar> constructed = detail::pair_phase_psi(map);
        const Scalar from_construction = detail::coordinate_descent(map, base, constructed);
        if (from_construction < from_grid)
            return {constructed, from_construction};
        return {best_psi, from_grid};
    }

    template <typename Scalar>
    InfPsiResult<Scalar> inf_psi_J(const AntennaArray<Scalar> &array, Scalar phi, const VectorX<Scalar> &x, int bursts,
                                   int grid = 64)
    {
        return inf_psi_J(array.magnitudes(phi), x, bursts, grid);
    }

    /*
     * Worst-case AOA under an X* schedule: argmin_phi sum_l |g_l(phi)|^2. Uniform grid of
     * `points` azimuths plus golden-section refinement within one step; ties resolve to the
     * smallest angle.
     */
    template <typename Scalar>
    Scalar worst_case_aoa(const AntennaArray<Scalar> &array, int points = 3600)
    {
        if (points < 360)
            throw ResolutionError("worst-case AOA search needs at least 360 azimuth points");
        auto power = [&](Scalar phi)
        { return array.gains(phi).cwiseAbs2().sum(); };
        auto better = [](Scalar v, Scalar incumbent)
        { return v < incumbent - Scalar(1e-12) * std::abs(incumbent); };

        const Scalar step = two_pi_v<Scalar> / Scalar(points);
        Scalar best_phi = 0, best = power(Scalar(0));
        for (int i = 1; i < points; ++i)
        {
            const Scalar phi = Scalar(i) * step;
            const Scalar v = power(phi);
            if (better(v, best))
            {
                best = v;
                best_phi = phi;
            }
        }
        const Scalar refined = golden_section_minimize(power, best_phi - step, best_phi + step, Scalar(1e-10));
        if (better(power(refined), best))
            best_phi = wrap_two_pi(refined);
        return best_phi;
    }

    // Search grids for the exhaustive minimax. x_points == 0 selects 64 K points per axis.
    struct MinimaxGrid
    {
        int x_points = 0;
        int phi_points = 3600;
        int psi_points = 64;
        // search x over [0, 2 pi) instead of the reduced [0, pi)
        bool full_period = false;
    };

    template <typename Scalar = double>
    struct MinimaxResult
    {
        VectorX<Scalar> x;
        VectorX<Scalar> rates;
        Scalar value;      // surrogate J or burst error probability at the worst AOA
        Scalar worst_phi;
    };

    namespace detail
    {
        template <typename Scalar>
        struct AzimuthTable
        {
            std::vector<Scalar> phi;
            std::vector<VectorX<Scalar>> magnitudes;
            std::vector<std::size_t> order; // ascending sum |g|^2, most critical first
        };

        template <typename Scalar>
        AzimuthTable<Scalar> make_azimuth_table(const AntennaArray<Scalar> &array, int points)
        {
            AzimuthTable<Scalar> t;
            std::vector<Scalar> power;
            for (int i = 0; i < points; ++i)
            {
                const Scalar phi = two_pi_v<Scalar> * Scalar(i) / Scalar(points);
                t.phi.push_back(phi);
                t.magnitudes.push_back(array.magnitudes(phi));
                power.push_back(t.magnitudes.back().squaredNorm());
            }
            t.order.resize(t.phi.size());
            std::iota(t.order.begin(), t.order.end(), std::size_t(0));
            std::stable_sort(t.order.begin(), t.order.end(), [&](std::size_t a, std::size_t b)
                             { return power[a] < power[b]; });
            return t;
        }

        inline int check_minimax(Eigen::Index antennas, int bursts, const MinimaxGrid &grid)
        {
            if (antennas < 2)
                throw ConfigError("minimax search needs at least two antennas");
            if (antennas > 4)
                throw ConfigError("exhaustive minimax search is limited to L <= 4");
            check_burst(bursts);
            const int n = grid.x_points > 0 ? grid.x_points : 64 * bursts;
            if (n < 8 || grid.phi_points < 8 || grid.psi_points < 8)
                throw ResolutionError("minimax grids need at least 8 points per axis");
            return n;
        }

        // design point as a grid index vector, when it lies on the x grid.
        inline std::optional<std::vector<int>> design_point_on_grid(Eigen::Index antennas, int bursts, int n)
        {
            if (antennas > bursts || n % bursts != 0)
                return std::nullopt;
            std::vector<int> idx;
            for (Eigen::Index l = 1; l < antennas; ++l)
                idx.push_back(static_cast<int>(l) * (n / bursts));
            return idx;
        }

        template <typename Scalar>
        VectorX<Scalar> grid_x(const std::vector<int> &idx, Scalar step)
        {
            VectorX<Scalar> x = VectorX<Scalar>::Zero(static_cast<Eigen::Index>(idx.size()) + 1);
            for (std::size_t i = 0; i < idx.size(); ++i)
                x[static_cast<Eigen::Index>(i) + 1] = Scalar(idx[i]) * step;
            return x;
        }
    }

    /*
     * sup over x of min over (phi, psi) of J, by exhaustive search over x_l in [0, pi).
     *
     * J depends on x only through kernel values f(x_m - x_l, .) and, up to the sign that
     * the inf over psi absorbs, f is pi-periodic in x; [0, pi) per coordinate therefore
     * covers every distinct value. The phi infimum uses `phi_points` azimuths plus
     * golden-section refinement for the winning x.
     *
     * The scan visits x in lexicographic order and keeps the first of (near-)equal optima.
     * Candidates are pruned as soon as one azimuth proves them worse than the incumbent or
     * than the design point, which does not change the result of the full scan.
     */
    template <typename Scalar>
    MinimaxResult<Scalar> minimax_rates(const AntennaArray<Scalar> &array, int bursts, Scalar period,
                                        const MinimaxGrid &grid = {})
    {
        const Eigen::Index count = array.size();
        const int n = detail::check_minimax(count, bursts, grid);
        if (!(period > Scalar(0)))
            throw ConfigError("message period must be positive");
        const Scalar upper = grid.full_period ? two_pi_v<Scalar> : pi_v<Scalar>;
        const Scalar step = upper / Scalar(n);
        const auto table = detail::make_azimuth_table(array, grid.phi_points);
        auto tol = [](Scalar v)
        { return Scalar(1e-12) * std::max(Scalar(1), std::abs(v)); };

        // min over the azimuth grid; stops early once the value is known to be <= cutoff
        auto evaluate = [&](const VectorX<Scalar> &x, Scalar cutoff, std::size_t *argmin) -> Scalar
        {
            Scalar m = std::numeric_limits<Scalar>::infinity();
            for (std::size_t o : table.order)
            {
                const auto &mags = table.magnitudes[o];
                const PairIndexMap<Scalar> map(mags, x, bursts);
                const Scalar base = Scalar(bursts) * mags.squaredNorm();
                const Scalar bound = base + map.cross_sum(detail::pair_phase_psi(map));
                if (bound <= cutoff)
                    return bound;
                const Scalar v = inf_psi_J(mags, x, bursts, grid.psi_points).value;
                if (v < m)
                {
                    m = v;
                    if (argmin)
                        *argmin = o;
                }
                if (m <= cutoff)
                    return m;
            }
            return m;
        };

        Scalar floor_value = -std::numeric_limits<Scalar>::infinity();
        if (const auto seed = detail::design_point_on_grid(count, bursts, n))
            floor_value = evaluate(detail::grid_x(*seed, step), -std::numeric_limits<Scalar>::infinity(), nullptr);

        bool have = false;
        Scalar best = -std::numeric_limits<Scalar>::infinity();
        VectorX<Scalar> best_x;
        std::size_t best_arg = 0;
        detail::for_each_grid_point(count - 1, n, [&](const std::vector<int> &idx)
                                    {
                                        const VectorX<Scalar> x = detail::grid_x(idx, step);
                                        Scalar cutoff = floor_value - tol(floor_value);
                                        if (have)
                                            cutoff = std::max(cutoff, best + tol(best));
                                        std::size_t arg = 0;
                                        const Scalar v = evaluate(x, cutoff, &arg);
                                        if (v <= cutoff)
                                            return;
                                        if (!have || v > best + tol(best))
                                        {
                                            have = true;
                                            best = v;
                                            best_x = x;
                                            best_arg = arg;
                                        } });

        Scalar worst_phi = table.phi[best_arg];
        const Scalar h = two_pi_v<Scalar> / Scalar(grid.phi_points);
        auto at = [&](Scalar phi)
        { return inf_psi_J(array.magnitudes(phi), best_x, bursts, grid.psi_points).value; };
        const Scalar refined = golden_section_minimize(at, worst_phi - h, worst_phi + h, Scalar(1e-10));
        const Scalar refined_value = at(refined);
        if (refined_value < best - tol(best))
        {
            best = refined_value;
            worst_phi = wrap_two_pi(refined);
        }
        return {best_x, x_to_rates(best_x, period), best, worst_phi};
    }

    /*
     * Direct minimax of the burst error probability for an arbitrary PEP model:
     * minimise over x the max over (phi, offsets) of P_B. The offset maximisation is
     * worst_offset_bep with `psi_points` grid points per axis. Same scan order, tie rule
     * and pruning as minimax_rates.
     */
    template <typename Scalar>
    MinimaxResult<Scalar> minimax_rates_bep(const AntennaArray<Scalar> &array, const LinkBudget<Scalar> &budget,
                                            const PepModel<Scalar> &model, const MinimaxGrid &grid = {},
                                            OmegaMode mode = OmegaMode::zero)
    {
        budget.validate();
        const Eigen::Index count = array.size();
        const int bursts = budget.burst_length;
        const int n = detail::check_minimax(count, bursts, grid);
        const Scalar upper = grid.full_period ? two_pi_v<Scalar> : pi_v<Scalar>;
        const Scalar step = upper / Scalar(n);
        const auto table = detail::make_azimuth_table(array, grid.phi_points);
        constexpr Scalar tie = Scalar(1e-12);

        auto worst_at = [&](const VectorX<Scalar> &x, Scalar phi)
        {
            return worst_offset_bep(array, x_to_rates(x, budget.period), budget, model, phi, mode, grid.psi_points).log_bep;
        };

        // max over the azimuth grid of log P_B; stops once the value is known to be >= cutoff
        auto evaluate = [&](const VectorX<Scalar> &x, Scalar cutoff, std::size_t *argmax) -> Scalar
        {
            Scalar m = -std::numeric_limits<Scalar>::infinity();
            for (std::size_t o : table.order)
            {
                const Scalar v = worst_at(x, table.phi[o]);
                if (v > m)
                {
                    m = v;
                    if (argmax)
                        *argmax = o;
                }
                if (m >= cutoff)
                    return m;
            }
            return m;
        };

        Scalar ceiling = std::numeric_limits<Scalar>::infinity();
        if (const auto seed = detail::design_point_on_grid(count, bursts, n))
            ceiling = evaluate(detail::grid_x(*seed, step), std::numeric_limits<Scalar>::infinity(), nullptr);

        bool have = false;
        Scalar best = std::numeric_limits<Scalar>::infinity();
        VectorX<Scalar> best_x;
        std::size_t best_arg = 0;
        detail::for_each_grid_point(count - 1, n, [&](const std::vector<int> &idx)
                                    {
                                        const VectorX<Scalar> x = detail::grid_x(idx, step);
                                        Scalar cutoff = ceiling + tie;
                                        if (have)
                                            cutoff = std::min(cutoff, best - tie);
                                        std::size_t arg = 0;
                                        const Scalar v = evaluate(x, cutoff, &arg);
                                        if (v >= cutoff)
                                            return;
                                        if (!have || v < best - tie)
                                        {
                                            have = true;
                                            best = v;
                                            best_x = x;
                                            best_arg = arg;
                                        } });

        Scalar worst_phi = table.phi[best_arg];
        const Scalar h = two_pi_v<Scalar> / Scalar(grid.phi_points);
        const Scalar refined = golden_section_minimize([&](Scalar phi)
                                                       { return -worst_at(best_x, phi); },
                                                       worst_phi - h, worst_phi + h, Scalar(1e-10));
        if (worst_at(best_x, refined) > best + tie)
            worst_phi = wrap_two_pi(refined);
        const auto rates = x_to_rates(best_x, budget.period);
        const Scalar value = worst_offset_bep(array, rates, budget, model, worst_phi, mode, grid.psi_points).bep;
        return {best_x, rates, value, worst_phi};
    }

    /*
     * Worst offsets for L = 2 under exponential PEP (a <= 1): minimise the summed SNR,
     * i.e. put f(x, psi_1 - psi_0) at its minimum -|sin(Kx)/sin(x)| with x = rate_1 T / 2.
     */
    template <typename Scalar>
    VectorX<Scalar> worst_offset_closed_form(const AntennaArray<Scalar> &array, const VectorX<Scalar> &rates,
                                             const LinkBudget<Scalar> &budget, Scalar phi,
                                             OmegaMode mode = OmegaMode::zero)
    {
        if (array.size() != 2 || rates.size() != 2)
            throw ConfigError("closed-form worst offset is defined for two antennas");
        const auto t = kernel_terms(rates[1] * budget.period / Scalar(2), budget.burst_length);
        const Scalar y = t.shift + (t.amplitude >= Scalar(0) ? pi_v<Scalar> : Scalar(0));
        const auto g = array.gains(phi);
        const Scalar omega = mode == OmegaMode::geometric ? plane_wave_phase(array, 1, phi) : Scalar(0);
        const Scalar psi0 = -std::arg(g[0]);
        VectorX<Scalar> offsets = VectorX<Scalar>::Zero(2);
        offsets[1] = wrap_two_pi(omega - std::arg(g[1]) - (psi0 + y));
        return offsets;
    }

    // Every pairwise difference x_m - x_l (l < m) lies in X*.
    template <typename Scalar>
    bool all_pairs_in_x_star(const VectorX<Scalar> &x, int bursts, Scalar tol = Scalar(1e-9))
    {
        for (Eigen::Index l = 0; l + 1 < x.size(); ++l)
            for (Eigen::Index m = l + 1; m < x.size(); ++m)
                if (!x_star_membership(x[m] - x[l], bursts, tol))
                    return false;
        return true;
    }

    /*
     * Exhaustive search for x (x_0 = 0, x_l = i_l * step on [0, 2 pi)) with all pairwise
     * differences in X*. Backtracking prunes a prefix as soon as one of its pairs fails,
     * which visits the same candidates as the full grid would.
     */
    template <typename Scalar>
    std::optional<VectorX<Scalar>> find_x_star_vector(Eigen::Index antennas, int bursts, Scalar step,
                                                      Scalar tol = Scalar(1e-6))
    {
        detail::check_burst(bursts);
        if (antennas < 2)
            throw ConfigError("search needs at least two antennas");
        if (!(step > Scalar(0)))
            throw ResolutionError("grid step must be positive");
        const auto n = static_cast<int>(std::ceil(two_pi_v<Scalar> / step - Scalar(1e-9)));
        VectorX<Scalar> x = VectorX<Scalar>::Zero(antennas);
        auto extend = [&](auto &self, Eigen::Index pos) -> bool
        {
            if (pos == antennas)
                return true;
            for (int i = 0; i < n; ++i)
            {
                x[pos] = Scalar(i) * step;
                bool ok = true;
                for (Eigen::Index l = 0; l < pos && ok; ++l)
                    ok = x_star_membership(x[pos] - x[l], bursts, tol);
                if (ok && self(self, pos + 1))
                    return true;
            }
            return false;
        };
        if (extend(extend, 1))
            return x;
        return std::nullopt;
    }

    template <typename Scalar = double>
    struct MismatchPoint
    {
        Scalar alpha_t;
        Scalar bep;
        VectorX<Scalar> offsets;
    };

    // Worst-offset burst error probability of a two-antenna combiner at fixed AOA for a
    // uniform grid of rate-period products alpha*T in [from, to].
    template <typename Scalar>
    std::vector<MismatchPoint<Scalar>> mismatch_sweep(const AntennaArray<Scalar> &array, const LinkBudget<Scalar> &budget,
                                                      const PepModel<Scalar> &model, Scalar phi, Scalar from, Scalar to,
                                                      int points, OmegaMode mode = OmegaMode::zero, int grid = 64,
                                                      unsigned workers = 1)
    {
        if (array.size() != 2)
            throw ConfigError("the rate mismatch sweep is defined for two antennas");
        if (points < 2)
            throw ResolutionError("the rate mismatch sweep needs at least two points");
        budget.validate();
        std::vector<MismatchPoint<Scalar>> out(static_cast<std::size_t>(points));
        parallel_for(out.size(), workers, [&](std::size_t i)
                     {
                         const Scalar at = from + (to - from) * Scalar(i) / Scalar(points - 1);
                         VectorX<Scalar> rates = VectorX<Scalar>::Zero(2);
                         rates[1] = at / budget.period;
                         const auto w = worst_offset_bep(array, rates, budget, model, phi, mode, grid);
                         out[i] = {at, w.bep, w.offsets}; });
        return out;
    }

    // For periods T_r = r T_1: is rate_1 still optimal, i.e. rate_1 r T_1 / 2 in X*?
    template <typename Scalar>
    std::vector<bool> multi_period_check(Scalar rate, int bursts, Scalar base_period, const std::vector<int> &multiples,
                                         Scalar tol = Scalar(1e-9))
    {
        std::vector<bool> out;
        out.reserve(multiples.size());
        for (int r : multiples)
        {
            if (r < 1)
                throw ConfigError("period multiples must be positive integers");
            out.push_back(x_star_membership(rate * Scalar(r) * base_period / Scalar(2), bursts, tol));
        }
        return out;
    }
}

#endif
