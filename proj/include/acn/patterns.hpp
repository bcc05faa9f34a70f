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

#ifndef ACN_PATTERNS_HPP
#define ACN_PATTERNS_HPP

#include "errors.hpp"
#include "numeric.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace acn
{
    enum class PatternKind
    {
        isotropic,
        dipole_cosine,
        cardioid,
        patch_lobe,
        tabulated
    };

    // One row of a tabulated pattern, kept in file units so that save/load is lossless.
    template <typename Scalar = double>
    struct PatternSample
    {
        Scalar phi_deg;
        Scalar magnitude;
        Scalar phase_deg;
    };

    /*
     * Complex azimuth far-field g(phi) of a single antenna. |g|^2 is the directive gain
     * relative to an isotropic radiator. Instances are immutable once built.
     *
     * Analytic families:
     *   dipole_cosine   g = cos(phi - phi0)
     *   cardioid        g = 1 - depth/2 * (1 - cos(phi - phi0)), depth in [0, 1]
     *   patch_lobe      |g| = max(back, cos(phi - phi0)^n) on the front half-plane and
     *                   `back` behind it, with n chosen so that |g|^2 = 1/2 at +-hpbw/2
     *
     * Tabulated patterns interpolate real and imaginary parts linearly between samples,
     * wrapping from the last sample across 2*pi to the first.
     */
    template <typename Scalar = double>
    class FarFieldPattern
    {
    public:
        using scalar_type = Scalar;
        using complex_type = std::complex<Scalar>;
        using sample_type = PatternSample<Scalar>;

        FarFieldPattern() = default;

        static FarFieldPattern isotropic() { return FarFieldPattern(PatternKind::isotropic); }

        static FarFieldPattern dipole_cosine(Scalar pointing)
        {
            FarFieldPattern p(PatternKind::dipole_cosine);
            p.pointing_ = pointing;
            return p;
        }

        static FarFieldPattern cardioid(Scalar pointing, Scalar depth)
        {
            if (!(depth >= Scalar(0) && depth <= Scalar(1)))
                throw InvalidPattern("cardioid depth must lie in [0, 1]");
            FarFieldPattern p(PatternKind::cardioid);
            p.pointing_ = pointing;
            p.depth_ = depth;
            return p;
        }

        static FarFieldPattern patch_lobe(Scalar pointing, Scalar half_power_beamwidth, Scalar back_lobe)
        {
            if (!(half_power_beamwidth > Scalar(0) && half_power_beamwidth < pi_v<Scalar>))
                throw InvalidPattern("patch half-power beamwidth must lie in (0, pi)");
            if (!(back_lobe >= Scalar(0)) || !std::isfinite(back_lobe))
                throw InvalidPattern("patch back-lobe level must be finite and >= 0");
            FarFieldPattern p(PatternKind::patch_lobe);
            p.pointing_ = pointing;
            p.beamwidth_ = half_power_beamwidth;
            p.back_lobe_ = back_lobe;
            p.lobe_exponent_ = -std::log(Scalar(2)) / (Scalar(2) * std::log(std::cos(half_power_beamwidth / Scalar(2))));
            return p;
        }

        // Angles must be strictly increasing in [0, 360). Fewer than two samples is accepted
        // here but such a pattern cannot be evaluated.
        static FarFieldPattern tabulated(std::vector<sample_type> samples)
        {
            FarFieldPattern p(PatternKind::tabulated);
            for (std::size_t i = 0; i < samples.size(); ++i)
            {
                const auto &s = samples[i];
                if (!std::isfinite(s.phi_deg) || !std::isfinite(s.magnitude) || !std::isfinite(s.phase_deg))
                    throw InvalidPattern("sample " + std::to_string(i) + " is not finite");
                if (s.phi_deg < Scalar(0) || s.phi_deg >= Scalar(360))
                    throw InvalidPattern("sample " + std::to_string(i) + " angle outside [0, 360)");
                if (s.magnitude < Scalar(0))
                    throw InvalidPattern("sample " + std::to_string(i) + " has negative magnitude");
                if (i > 0 && !(s.phi_deg > samples[i - 1].phi_deg))
                    throw InvalidPattern("sample angles must be strictly increasing");
            }
            p.angles_.reserve(samples.size());
            p.values_.reserve(samples.size());
            for (const auto &s : samples)
            {
                p.angles_.push_back(deg_to_rad(s.phi_deg));
                p.values_.push_back(std::polar(s.magnitude, deg_to_rad(s.phase_deg)));
            }
            p.samples_ = std::move(samples);
            return p;
        }

        PatternKind kind() const noexcept { return kind_; }
        Scalar pointing() const noexcept { return pointing_; }
        Scalar depth() const noexcept { return depth_; }
        Scalar beamwidth() const noexcept { return beamwidth_; }
        Scalar back_lobe() const noexcept { return back_lobe_; }
        Scalar scale() const noexcept { return scale_; }
        const std::vector<sample_type> &samples() const noexcept { return samples_; }

        // Copy with every gain multiplied by `factor` (tabulated magnitudes are rescaled in place).
        FarFieldPattern scaled(Scalar factor) const
        {
            if (kind_ != PatternKind::tabulated)
            {
                FarFieldPattern p = *this;
                p.scale_ *= factor;
                return p;
            }
            std::vector<sample_type> s = samples_;
            for (auto &row : s)
                row.magnitude *= factor;
            return tabulated(std::move(s));
        }

        complex_type operator()(Scalar phi) const
        {
            const Scalar a = wrap_two_pi(phi);
            switch (kind_)
            {
            case PatternKind::isotropic:
                return complex_type(scale_, 0);
            case PatternKind::dipole_cosine:
                return complex_type(scale_ * std::cos(a - pointing_), 0);
            case PatternKind::cardioid:
                return complex_type(scale_ * (Scalar(1) - depth_ / Scalar(2) * (Scalar(1) - std::cos(a - pointing_))), 0);
            case PatternKind::patch_lobe:
            {
                const Scalar c = std::cos(a - pointing_);
                const Scalar front = c > Scalar(0) ? std::pow(c, lobe_exponent_) : Scalar(0);
                return complex_type(scale_ * std::max(back_lobe_, front), 0);
            }
            case PatternKind::tabulated:
                return interpolate(a);
            }
            return {};
        }

    private:
        explicit FarFieldPattern(PatternKind kind) : kind_(kind) {}

        complex_type interpolate(Scalar a) const
        {
            const std::size_t n = angles_.size();
            if (n < 2)
                throw InvalidPattern("tabulated pattern needs at least two samples");

            // first sample strictly greater than a
            const auto upper = std::upper_bound(angles_.begin(), angles_.end(), a);
            std::size_t hi = static_cast<std::size_t>(upper - angles_.begin());
            Scalar lo_angle, hi_angle;
            std::size_t lo;
            if (hi == 0 || hi == n)
            {
                // seam segment between the last sample and the first one + 2*pi
                lo = n - 1;
                hi = 0;
                lo_angle = angles_[lo];
                hi_angle = angles_[hi] + two_pi_v<Scalar>;
                if (a < angles_[0])
                    a += two_pi_v<Scalar>;
            }
            else
            {
                lo = hi - 1;
                lo_angle = angles_[lo];
                hi_angle = angles_[hi];
            }
            if (a == lo_angle)
                return values_[lo];
            const Scalar t = (a - lo_angle) / (hi_angle - lo_angle);
            return values_[lo] + t * (values_[hi] - values_[lo]);
        }

        PatternKind kind_ = PatternKind::isotropic;
        Scalar pointing_ = 0;
        Scalar depth_ = 0;
        Scalar beamwidth_ = 0;
        Scalar back_lobe_ = 0;
        Scalar lobe_exponent_ = 1;
        Scalar scale_ = 1;
        std::vector<sample_type> samples_;
        std::vector<Scalar> angles_;
        std::vector<complex_type> values_;
    };

    template <typename Scalar>
    std::complex<Scalar> evaluate(const FarFieldPattern<Scalar> &pattern, Scalar phi)
    {
        return pattern(phi);
    }

    // Tabulate `pattern` on a uniform grid of `count` azimuth samples starting at 0.
    template <typename Scalar>
    FarFieldPattern<Scalar> sample_pattern(const FarFieldPattern<Scalar> &pattern, std::size_t count)
    {
        if (count < 2)
            throw InvalidPattern("sampling needs at least two points");
        std::vector<PatternSample<Scalar>> rows;
        rows.reserve(count);
        for (std::size_t i = 0; i < count; ++i)
        {
            const Scalar phi_deg = Scalar(360) * Scalar(i) / Scalar(count);
            const auto g = pattern(deg_to_rad(phi_deg));
            rows.push_back({phi_deg, std::abs(g), rad_to_deg(std::arg(g))});
        }
        return FarFieldPattern<Scalar>::tabulated(std::move(rows));
    }

    // Azimuth mean of |g|^2 on a uniform grid.
    template <typename Scalar>
    Scalar mean_square_gain(const FarFieldPattern<Scalar> &pattern, std::size_t count = 3600)
    {
        Scalar acc = 0;
        for (std::size_t i = 0; i < count; ++i)
            acc += std::norm(pattern(two_pi_v<Scalar> * Scalar(i) / Scalar(count)));
        return acc / Scalar(count);
    }

    // Rescale so the azimuth mean-square gain is one. This is a 2D proxy only; it is not a
    // full-sphere directivity normalisation.
    template <typename Scalar>
    FarFieldPattern<Scalar> normalize_mean_square(const FarFieldPattern<Scalar> &pattern, std::size_t count = 3600)
    {
        const Scalar ms = mean_square_gain(pattern, count);
        if (!(ms > Scalar(0)))
            throw InvalidPattern("cannot normalise a pattern with zero azimuth gain");
        return pattern.scaled(Scalar(1) / std::sqrt(ms));
    }

    // Ordered antenna elements with planar positions (m) and the carrier wavelength (m).
    // Element 0 is the phase reference.
    template <typename Scalar = double>
    class AntennaArray
    {
    public:
        using pattern_type = FarFieldPattern<Scalar>;
        using positions_type = Eigen::Matrix<Scalar, 2, Eigen::Dynamic>;

        AntennaArray() = default;

        // Co-located elements, unit wavelength.
        explicit AntennaArray(std::vector<pattern_type> elements)
            : AntennaArray(elements, positions_type::Zero(2, static_cast<Eigen::Index>(elements.size())), Scalar(1))
        {
        }

        AntennaArray(std::vector<pattern_type> elements, positions_type positions, Scalar wavelength)
            : elements_(std::move(elements)), positions_(std::move(positions)), wavelength_(wavelength)
        {
            if (elements_.empty())
                throw ConfigError("an antenna array needs at least one element");
            if (positions_.cols() != static_cast<Eigen::Index>(elements_.size()))
                throw ConfigError("positions must list one (x, y) pair per element");
            if (!(wavelength_ > Scalar(0)))
                throw ConfigError("wavelength must be positive");
        }

        Eigen::Index size() const noexcept { return static_cast<Eigen::Index>(elements_.size()); }
        const pattern_type &element(Eigen::Index l) const { return elements_.at(static_cast<std::size_t>(l)); }
        const std::vector<pattern_type> &elements() const noexcept { return elements_; }
        const positions_type &positions() const noexcept { return positions_; }
        Scalar wavelength() const noexcept { return wavelength_; }

        VectorXc<Scalar> gains(Scalar phi) const
        {
            VectorXc<Scalar> g(size());
            for (Eigen::Index l = 0; l < size(); ++l)
                g[l] = elements_[static_cast<std::size_t>(l)](phi);
            return g;
        }

        VectorX<Scalar> magnitudes(Scalar phi) const { return gains(phi).cwiseAbs(); }

        // Copy with elements 0 and l swapped, making l the phase reference.
        AntennaArray with_reference(Eigen::Index l) const
        {
            if (l < 0 || l >= size())
                throw IndexError("element index out of range");
            AntennaArray out = *this;
            std::swap(out.elements_[0], out.elements_[static_cast<std::size_t>(l)]);
            out.positions_.col(0).swap(out.positions_.col(l));
            return out;
        }

    private:
        std::vector<pattern_type> elements_;
        positions_type positions_;
        Scalar wavelength_ = 1;
    };

    // Plane-wave phase of element l relative to element 0 for arrival azimuth phi:
    // -(2*pi/lambda) * [(x_l - x_0) cos(phi) + (y_l - y_0) sin(phi)].
    template <typename Scalar>
    Scalar plane_wave_phase(const AntennaArray<Scalar> &array, Eigen::Index l, Scalar phi)
    {
        if (l < 0 || l >= array.size())
            throw IndexError("element index out of range");
        if (l == 0)
            return Scalar(0);
        const auto &pos = array.positions();
        const Scalar dx = pos(0, l) - pos(0, 0);
        const Scalar dy = pos(1, l) - pos(1, 0);
        return -(two_pi_v<Scalar> / array.wavelength()) * (dx * std::cos(phi) + dy * std::sin(phi));
    }
}

#endif
