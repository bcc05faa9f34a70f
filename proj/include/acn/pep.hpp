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

#ifndef ACN_PEP_HPP
#define ACN_PEP_HPP

#include "combining.hpp"
#include "errors.hpp"
#include "numeric.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <type_traits>
#include <variant>
#include <vector>

namespace acn
{
    // P_e = min(1, a exp(-b snr)).
    template <typename Scalar = double>
    struct ExponentialPep
    {
        Scalar a = 1;
        Scalar b = Scalar(0.2);
    };

    // Uncoded Gray-coded QPSK over AWGN, independent bit errors: 1 - (1 - Q(sqrt(snr)))^bits.
    struct QpskAwgnPep
    {
        int bits = 3200;
    };

    // Uncoded Gray-coded QPSK, Rayleigh-averaged bit error: 1 - (1/2 + 1/2 sqrt(snr / (2 + snr)))^bits.
    struct QpskRayleighPep
    {
        int bits = 3200;
    };

    template <typename Scalar = double>
    using PepModel = std::variant<ExponentialPep<Scalar>, QpskAwgnPep, QpskRayleighPep>;

    // Q(x) = erfc(x / sqrt(2)) / 2.
    template <typename Scalar>
    Scalar q_function(Scalar x)
    {
        return std::erfc(x / std::sqrt(Scalar(2))) / Scalar(2);
    }

    namespace detail
    {
        template <typename Scalar>
        void check_snr(Scalar snr)
        {
            if (!(snr >= Scalar(0)))
                throw DomainError("average SNR must be >= 0");
        }

        template <typename Scalar>
        void check_bits(int bits)
        {
            if (bits < 1)
                throw ConfigError("packet must carry at least one bit");
        }

        // 1 - (1 - p)^n and its logarithm, accurate for small p.
        template <typename Scalar>
        Scalar packet_failure(Scalar bit_error, int bits)
        {
            return -std::expm1(Scalar(bits) * std::log1p(-bit_error));
        }

        template <typename Scalar>
        Scalar rayleigh_bit_error(Scalar snr)
        {
            return (Scalar(1) - std::sqrt(snr / (Scalar(2) + snr))) / Scalar(2);
        }
    }

    template <typename Scalar>
    Scalar pep(const PepModel<Scalar> &model, Scalar snr)
    {
        detail::check_snr(snr);
        return std::visit(
            [&](const auto &m) -> Scalar
            {
                using M = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<M, ExponentialPep<Scalar>>)
                    return std::min(Scalar(1), m.a * std::exp(-m.b * snr));
                else if constexpr (std::is_same_v<M, QpskAwgnPep>)
                {
                    detail::check_bits<Scalar>(m.bits);
                    return detail::packet_failure(q_function(std::sqrt(snr)), m.bits);
                }
                else
                {
                    detail::check_bits<Scalar>(m.bits);
                    return detail::packet_failure(detail::rayleigh_bit_error(snr), m.bits);
                }
            },
            model);
    }

    // log P_e without underflow for the exponential model.
    template <typename Scalar>
    Scalar log_pep(const PepModel<Scalar> &model, Scalar snr)
    {
        detail::check_snr(snr);
        if (const auto *e = std::get_if<ExponentialPep<Scalar>>(&model))
            return std::min(Scalar(0), std::log(e->a) - e->b * snr);
        return std::log(pep(model, snr));
    }

    template <typename Scalar>
    Scalar burst_error_prob_from_snrs(const PepModel<Scalar> &model, const VectorX<Scalar> &snrs)
    {
        Scalar p = 1;
        for (Eigen::Index k = 0; k < snrs.size(); ++k)
            p *= pep(model, snrs[k]);
        return p;
    }

    // P_B = prod_k P_e(snr_k), packet errors independent.
    template <typename Scalar>
    Scalar burst_error_prob(const AntennaArray<Scalar> &array, const PhaseSchedule<Scalar> &schedule,
                            const LinkBudget<Scalar> &budget, const PepModel<Scalar> &model, Scalar phi,
                            OmegaMode mode = OmegaMode::zero)
    {
        return burst_error_prob_from_snrs(model, packet_snrs(array, schedule, budget, phi, mode));
    }

    template <typename Scalar = double>
    struct WorstOffset
    {
        VectorX<Scalar> offsets; // offsets[0] == 0
        Scalar bep = 0;
        Scalar log_bep = 0;
    };

    /*
     * Precomputed burst evaluator for a fixed array, rates and AOA. Only the offsets vary,
     * which is what the worst-offset search needs.
     */
    template <typename Scalar>
    class BurstEvaluator
    {
    public:
        BurstEvaluator(const AntennaArray<Scalar> &array, const VectorX<Scalar> &rates, const LinkBudget<Scalar> &budget,
                       const PepModel<Scalar> &model, Scalar phi, OmegaMode mode)
            : model_(model), scale_(budget.snr() / Scalar(array.size()))
        {
            budget.validate();
            const Eigen::Index count = array.size();
            if (rates.size() != count)
                throw ConfigError("rate vector length does not match the number of antennas");
            const int bursts = budget.burst_length;
            terms_.resize(count, bursts);
            for (Eigen::Index l = 0; l < count; ++l)
            {
                const Scalar omega = mode == OmegaMode::geometric ? plane_wave_phase(array, l, phi) : Scalar(0);
                const auto g = array.element(l)(phi);
                for (int k = 0; k < bursts; ++k)
                    terms_(l, k) = g * std::polar(Scalar(1), rates[l] * Scalar(k) * budget.period - omega);
            }
        }

        Eigen::Index size() const noexcept { return terms_.rows(); }

        VectorX<Scalar> snrs(const VectorX<Scalar> &offsets) const
        {
            VectorXc<Scalar> phasors(size());
            for (Eigen::Index l = 0; l < size(); ++l)
                phasors[l] = std::polar(Scalar(1), offsets[l]);
            VectorX<Scalar> out(terms_.cols());
            for (Eigen::Index k = 0; k < terms_.cols(); ++k)
                out[k] = scale_ * std::norm((terms_.col(k).array() * phasors.array()).sum());
            return out;
        }

        Scalar log_bep(const VectorX<Scalar> &offsets) const
        {
            const VectorX<Scalar> s = snrs(offsets);
            Scalar acc = 0;
            for (Eigen::Index k = 0; k < s.size(); ++k)
                acc += log_pep(model_, s[k]);
            return acc;
        }

        Scalar bep(const VectorX<Scalar> &offsets) const { return burst_error_prob_from_snrs(model_, snrs(offsets)); }

    private:
        PepModel<Scalar> model_;
        Scalar scale_;
        Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> terms_;
    };

    /*
     * Worst-case initial offsets: maximise P_B over offsets in [0, 2*pi)^(L-1).
     * A uniform grid of `grid` points per coordinate is scanned in lexicographic order
     * (ties keep the earlier point), then each coordinate is refined by golden-section
     * search within one grid step. A refined point replaces the incumbent only when it is
     * strictly better.
     */
    template <typename Scalar>
    WorstOffset<Scalar> worst_offset_bep(const AntennaArray<Scalar> &array, const VectorX<Scalar> &rates,
                                         const LinkBudget<Scalar> &budget, const PepModel<Scalar> &model, Scalar phi,
                                         OmegaMode mode = OmegaMode::zero, int grid = 64, Scalar tol = Scalar(1e-8))
    {
        const Eigen::Index count = array.size();
        if (count < 2)
            throw ConfigError("worst-offset search needs at least two antennas");
        if (grid < 1)
            throw ResolutionError("offset grid needs at least one point per axis");
        const BurstEvaluator<Scalar> eval(array, rates, budget, model, phi, mode);
        const Scalar step = two_pi_v<Scalar> / Scalar(grid);
        const Scalar tie = Scalar(1e-12);

        VectorX<Scalar> beta = VectorX<Scalar>::Zero(count);
        VectorX<Scalar> best_beta = beta;
        Scalar best = -std::numeric_limits<Scalar>::infinity();
        bool first = true;

        std::vector<int> index(static_cast<std::size_t>(count - 1), 0);
        while (true)
        {
            for (Eigen::Index l = 1; l < count; ++l)
                beta[l] = Scalar(index[static_cast<std::size_t>(l - 1)]) * step;
            const Scalar v = eval.log_bep(beta);
            if (first || v > best + tie)
            {
                best = v;
                best_beta = beta;
                first = false;
            }
            // odometer, last coordinate fastest
            Eigen::Index pos = count - 2;
            while (pos >= 0 && ++index[static_cast<std::size_t>(pos)] == grid)
                index[static_cast<std::size_t>(pos--)] = 0;
            if (pos < 0)
                break;
        }

        for (int sweep = 0; sweep < 16; ++sweep)
        {
            bool improved = false;
            for (Eigen::Index l = 1; l < count; ++l)
            {
                VectorX<Scalar> trial = best_beta;
                const Scalar centre = best_beta[l];
                const Scalar arg = golden_section_minimize(
                    [&](Scalar b)
                    {
                        trial[l] = b;
                        return -eval.log_bep(trial);
                    },
                    centre - step, centre + step, tol);
                trial[l] = wrap_two_pi(arg);
                const Scalar v = eval.log_bep(trial);
                if (v > best + tie)
                {
                    best = v;
                    best_beta = trial;
                    improved = true;
                }
            }
            if (!improved)
                break;
        }

        return {best_beta, eval.bep(best_beta), best};
    }
}

#endif
