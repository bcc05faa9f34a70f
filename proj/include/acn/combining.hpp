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

#ifndef ACN_COMBINING_HPP
#define ACN_COMBINING_HPP

#include "errors.hpp"
#include "numeric.hpp"
#include "patterns.hpp"

#include <Eigen/Core>

#include <cmath>
#include <complex>

namespace acn
{
    // Whether the plane-wave phase of each element enters the combiner output. `zero`
    // folds it into the offsets, which is how the design space is analysed.
    enum class OmegaMode
    {
        zero,
        geometric
    };

    // Linear phase-shifter schedule phase_l(t) = rates[l] * t + offsets[l]; element 0 is
    // never rotated, so rates[0] = offsets[0] = 0.
    template <typename Scalar = double>
    struct PhaseSchedule
    {
        VectorX<Scalar> rates;   // rad/s
        VectorX<Scalar> offsets; // rad in [0, 2*pi)

        static PhaseSchedule zeros(Eigen::Index count)
        {
            return {VectorX<Scalar>::Zero(count), VectorX<Scalar>::Zero(count)};
        }

        static PhaseSchedule from_rates(VectorX<Scalar> rates)
        {
            const Eigen::Index n = rates.size();
            return {std::move(rates), VectorX<Scalar>::Zero(n)};
        }

        Eigen::Index size() const noexcept { return rates.size(); }

        void validate(Eigen::Index count) const
        {
            if (rates.size() != count || offsets.size() != count)
                throw ConfigError("phase schedule length does not match the number of antennas");
            if (count > 0 && (rates[0] != Scalar(0) || offsets[0] != Scalar(0)))
                throw ConfigError("the reference antenna must have zero rate and offset");
            for (Eigen::Index l = 0; l < count; ++l)
            {
                if (!std::isfinite(rates[l]))
                    throw ConfigError("phase rates must be finite");
                if (!(offsets[l] >= Scalar(0) && offsets[l] < two_pi_v<Scalar>))
                    throw ConfigError("phase offsets must lie in [0, 2*pi)");
            }
        }
    };

    template <typename Scalar = double>
    struct LinkBudget
    {
        Scalar received_power = 1; // P_r, linear
        Scalar noise_power = 1;    // P_n per antenna, linear
        int burst_length = 5;      // K
        Scalar period = Scalar(0.1); // T, s

        Scalar snr() const noexcept { return received_power / noise_power; }

        void validate() const
        {
            if (!(received_power >= Scalar(0)) || !std::isfinite(received_power))
                throw ConfigError("received power must be finite and >= 0");
            if (!(noise_power > Scalar(0)) || !std::isfinite(noise_power))
                throw ConfigError("noise power must be finite and > 0");
            if (burst_length < 1)
                throw ConfigError("burst length must be at least 1");
            if (!(period > Scalar(0)) || !std::isfinite(period))
                throw ConfigError("message period must be positive");
        }
    };

    // g(phi, t) = sum_l g_l(phi) exp(-j (Omega_l - rate_l t - offset_l)).
    template <typename Scalar>
    std::complex<Scalar> effective_farfield(const AntennaArray<Scalar> &array, const PhaseSchedule<Scalar> &schedule,
                                            Scalar phi, Scalar t, OmegaMode mode = OmegaMode::zero)
    {
        schedule.validate(array.size());
        std::complex<Scalar> acc(0, 0);
        for (Eigen::Index l = 0; l < array.size(); ++l)
        {
            const Scalar omega = mode == OmegaMode::geometric ? plane_wave_phase(array, l, phi) : Scalar(0);
            const Scalar rotation = schedule.rates[l] * t + schedule.offsets[l] - omega;
            acc += array.element(l)(phi) * std::polar(Scalar(1), rotation);
        }
        return acc;
    }

    // Average SNR of packet k: P_r / (L P_n) * |g(phi, kT)|^2.
    template <typename Scalar>
    Scalar packet_avg_snr(const AntennaArray<Scalar> &array, const PhaseSchedule<Scalar> &schedule,
                          const LinkBudget<Scalar> &budget, Scalar phi, int k, OmegaMode mode = OmegaMode::zero)
    {
        budget.validate();
        if (k < 0 || k >= budget.burst_length)
            throw IndexError("packet index outside [0, K)");
        const auto g = effective_farfield(array, schedule, phi, Scalar(k) * budget.period, mode);
        return budget.snr() / Scalar(array.size()) * std::norm(g);
    }

    // All K packet SNRs of a burst.
    template <typename Scalar>
    VectorX<Scalar> packet_snrs(const AntennaArray<Scalar> &array, const PhaseSchedule<Scalar> &schedule,
                                const LinkBudget<Scalar> &budget, Scalar phi, OmegaMode mode = OmegaMode::zero)
    {
        budget.validate();
        VectorX<Scalar> out(budget.burst_length);
        for (int k = 0; k < budget.burst_length; ++k)
            out[k] = packet_avg_snr(array, schedule, budget, phi, k, mode);
        return out;
    }

    enum class SchemeKind
    {
        single,
        isotropic,
        mrc,
        egc,
        sc,
        acn
    };

    struct Scheme
    {
        SchemeKind kind = SchemeKind::acn;
        Eigen::Index antenna = 0; // used by `single` only

        static Scheme single(Eigen::Index l) { return {SchemeKind::single, l}; }
        static Scheme isotropic() { return {SchemeKind::isotropic, 0}; }
        static Scheme mrc() { return {SchemeKind::mrc, 0}; }
        static Scheme egc() { return {SchemeKind::egc, 0}; }
        static Scheme sc() { return {SchemeKind::sc, 0}; }
        static Scheme acn() { return {SchemeKind::acn, 0}; }
    };

    /*
     * Sum over the K packets of the average SNR for a combining scheme, in closed form:
     *
     *   single l   K P_r/P_n |g_l|^2
     *   isotropic  K P_r/P_n
     *   MRC        K P_r/P_n sum |g_l|^2
     *   EGC        K P_r/(L P_n) (sum |g_l|)^2
     *   SC         K P_r/P_n max |g_l|^2
     *   ACN        K P_r/(L P_n) sum |g_l|^2   (any schedule with pairwise rate differences in X*)
     */
    template <typename Scalar>
    Scalar rho(const Scheme &scheme, const AntennaArray<Scalar> &array, const LinkBudget<Scalar> &budget, Scalar phi)
    {
        budget.validate();
        const Scalar k_snr = Scalar(budget.burst_length) * budget.snr();
        const Scalar count = Scalar(array.size());
        switch (scheme.kind)
        {
        case SchemeKind::single:
            if (scheme.antenna < 0 || scheme.antenna >= array.size())
                throw IndexError("single-antenna scheme index out of range");
            return k_snr * std::norm(array.element(scheme.antenna)(phi));
        case SchemeKind::isotropic:
            return k_snr;
        case SchemeKind::mrc:
            return k_snr * array.gains(phi).cwiseAbs2().sum();
        case SchemeKind::egc:
        {
            const Scalar s = array.magnitudes(phi).sum();
            return k_snr / count * s * s;
        }
        case SchemeKind::sc:
            return k_snr * array.gains(phi).cwiseAbs2().maxCoeff();
        case SchemeKind::acn:
            return k_snr / count * array.gains(phi).cwiseAbs2().sum();
        }
        return Scalar(0);
    }

    // Sum of simulated packet SNRs under `schedule`; cross-checks rho(acn) for X* schedules.
    template <typename Scalar>
    Scalar rho_from_packets(const AntennaArray<Scalar> &array, const PhaseSchedule<Scalar> &schedule,
                            const LinkBudget<Scalar> &budget, Scalar phi, OmegaMode mode = OmegaMode::zero)
    {
        return packet_snrs(array, schedule, budget, phi, mode).sum();
    }
}

#endif
