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

#include "config.hpp"

#include <yaml-cpp/yaml.h>
#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace acn::cli
{
    namespace
    {
        std::string where(const YAML::Node &node)
        {
            const auto mark = node.Mark();
            if (mark.line < 0)
                return "";
            return " (line " + std::to_string(mark.line + 1) + ")";
        }

        void allow_keys(const YAML::Node &node, const std::string &section, std::initializer_list<const char *> keys)
        {
            if (!node.IsMap())
                throw ConfigError("'" + section + "' must be a mapping" + where(node));
            for (const auto &kv : node)
            {
                const auto key = kv.first.as<std::string>();
                bool known = false;
                for (const char *k : keys)
                    known = known || key == k;
                if (!known)
                    throw ConfigError("unknown key '" + key + "' in '" + section + "'" + where(kv.first));
            }
        }

        template <typename T>
        T get(const YAML::Node &node, const std::string &name)
        {
            try
            {
                return node.as<T>();
            }
            catch (const YAML::Exception &)
            {
                throw ConfigError("bad value for '" + name + "'" + where(node));
            }
        }

        double get_finite(const YAML::Node &node, const std::string &name)
        {
            const double v = get<double>(node, name);
            if (!std::isfinite(v))
                throw ConfigError("'" + name + "' must be finite" + where(node));
            return v;
        }

        std::vector<double> get_list(const YAML::Node &node, const std::string &name)
        {
            if (!node.IsSequence())
                throw ConfigError("'" + name + "' must be a list" + where(node));
            std::vector<double> out;
            for (const auto &v : node)
                out.push_back(get_finite(v, name));
            return out;
        }

        // "worst" or a number of degrees
        std::optional<double> get_phi(const YAML::Node &node, const std::string &name)
        {
            if (node.IsScalar() && node.Scalar() == "worst")
                return std::nullopt;
            return get_finite(node, name);
        }

        FarFieldPattern<double> parse_element(const YAML::Node &node, const std::filesystem::path &base_dir,
                                              double &px, double &py)
        {
            allow_keys(node, "array.elements",
                       {"pattern", "pointing_deg", "depth", "beamwidth_deg", "back_lobe", "path", "position_m"});
            if (!node["pattern"])
                throw ConfigError("element without 'pattern'" + where(node));
            const auto kind = get<std::string>(node["pattern"], "pattern");
            const double pointing = node["pointing_deg"] ? deg_to_rad(get_finite(node["pointing_deg"], "pointing_deg")) : 0.0;
            px = 0;
            py = 0;
            if (node["position_m"])
            {
                const auto p = get_list(node["position_m"], "position_m");
                if (p.size() != 2)
                    throw ConfigError("'position_m' needs two coordinates" + where(node["position_m"]));
                px = p[0];
                py = p[1];
            }
            if (kind == "isotropic")
                return FarFieldPattern<double>::isotropic();
            if (kind == "dipole-cosine")
                return FarFieldPattern<double>::dipole_cosine(pointing);
            if (kind == "cardioid")
            {
                const double depth = node["depth"] ? get_finite(node["depth"], "depth") : 1.0;
                return FarFieldPattern<double>::cardioid(pointing, depth);
            }
            if (kind == "patch-lobe")
            {
                const double hpbw = node["beamwidth_deg"] ? get_finite(node["beamwidth_deg"], "beamwidth_deg") : 70.0;
                const double back = node["back_lobe"] ? get_finite(node["back_lobe"], "back_lobe") : 0.1;
                return FarFieldPattern<double>::patch_lobe(pointing, deg_to_rad(hpbw), back);
            }
            if (kind == "file")
            {
                if (!node["path"])
                    throw ConfigError("file pattern without 'path'" + where(node));
                std::filesystem::path p = get<std::string>(node["path"], "path");
                if (p.is_relative())
                    p = base_dir / p;
                if (!std::filesystem::exists(p))
                    throw ConfigError("pattern file not found: " + p.string());
                return load_pattern_csv(p);
            }
            throw ConfigError("unknown pattern kind '" + kind + "'" + where(node["pattern"]));
        }

        void parse_array(const YAML::Node &node, const std::filesystem::path &base_dir, ExperimentConfig &cfg)
        {
            allow_keys(node, "array", {"wavelength_m", "elements"});
            if (node["wavelength_m"])
                cfg.wavelength = get_finite(node["wavelength_m"], "wavelength_m");
            const auto elements = node["elements"];
            if (!elements || !elements.IsSequence() || elements.size() == 0)
                throw ConfigError("'array.elements' must be a nonempty list" + where(node));
            for (const auto &e : elements)
            {
                double px = 0, py = 0;
                cfg.elements.push_back(parse_element(e, base_dir, px, py));
                cfg.position_x.push_back(px);
                cfg.position_y.push_back(py);
            }
        }

        void parse_pep(const YAML::Node &node, ExperimentConfig &cfg)
        {
            allow_keys(node, "pep", {"model", "a", "b", "bits"});
            const auto model = node["model"] ? get<std::string>(node["model"], "model") : std::string("exponential");
            if (model == "exponential")
            {
                ExponentialPep<double> p;
                if (node["a"])
                    p.a = get_finite(node["a"], "a");
                if (node["b"])
                    p.b = get_finite(node["b"], "b");
                if (!(p.a > 0) || !(p.b > 0))
                    throw ConfigError("exponential PEP needs a > 0 and b > 0" + where(node));
                cfg.pep = p;
                return;
            }
            const int bits = node["bits"] ? get<int>(node["bits"], "bits") : 3200;
            if (bits < 1)
                throw ConfigError("'bits' must be at least 1" + where(node["bits"]));
            if (model == "qpsk-awgn")
                cfg.pep = QpskAwgnPep{bits};
            else if (model == "qpsk-rayleigh")
                cfg.pep = QpskRayleighPep{bits};
            else
                throw ConfigError("unknown PEP model '" + model + "'" + where(node["model"]));
        }
    }

    ExperimentConfig parse_config(const std::string &text, const std::filesystem::path &base_dir)
    {
        YAML::Node root;
        try
        {
            root = YAML::Load(text);
        }
        catch (const YAML::ParserException &e)
        {
            throw ConfigError(std::string("malformed config: ") + e.what());
        }
        ExperimentConfig cfg;
        if (root.IsNull())
            throw ConfigError("empty config");
        allow_keys(root, "config", {"array", "budget", "pep", "schedule", "omega", "sweep", "montecarlo", "verify", "seed"});

        if (!root["array"])
            throw ConfigError("config has no 'array' section");
        parse_array(root["array"], base_dir, cfg);

        if (const auto b = root["budget"])
        {
            allow_keys(b, "budget", {"snr_db", "burst_length", "period_s"});
            if (b["snr_db"])
                cfg.snr_db = get_finite(b["snr_db"], "snr_db");
            if (b["burst_length"])
                cfg.burst_length = get<int>(b["burst_length"], "burst_length");
            if (b["period_s"])
                cfg.period = get_finite(b["period_s"], "period_s");
        }
        if (root["pep"])
            parse_pep(root["pep"], cfg);

        if (const auto s = root["schedule"])
        {
            allow_keys(s, "schedule", {"mode", "rates_deg_per_s", "offsets_deg"});
            const auto mode = s["mode"] ? get<std::string>(s["mode"], "mode") : std::string("design");
            if (mode == "design")
                cfg.schedule_mode = ScheduleMode::designed;
            else if (mode == "explicit")
                cfg.schedule_mode = ScheduleMode::explicit_rates;
            else
                throw ConfigError("unknown schedule mode '" + mode + "'" + where(s["mode"]));
            if (s["rates_deg_per_s"])
                cfg.rates_deg_per_s = get_list(s["rates_deg_per_s"], "rates_deg_per_s");
            if (s["offsets_deg"])
                cfg.offsets_deg = get_list(s["offsets_deg"], "offsets_deg");
            if (cfg.schedule_mode == ScheduleMode::explicit_rates && cfg.rates_deg_per_s.empty())
                throw ConfigError("explicit schedule needs 'rates_deg_per_s'" + where(s));
        }

        if (const auto o = root["omega"])
        {
            const auto mode = get<std::string>(o, "omega");
            if (mode == "zero")
                cfg.omega = OmegaMode::zero;
            else if (mode == "geometric")
                cfg.omega = OmegaMode::geometric;
            else
                throw ConfigError("unknown omega mode '" + mode + "'" + where(o));
        }

        if (const auto s = root["sweep"])
        {
            allow_keys(s, "sweep", {"aoa_points", "phi_deg", "alpha_t_deg", "periods"});
            if (s["aoa_points"])
                cfg.aoa_points = get<int>(s["aoa_points"], "aoa_points");
            if (s["phi_deg"])
                cfg.sweep_phi_deg = get_phi(s["phi_deg"], "phi_deg");
            if (const auto a = s["alpha_t_deg"])
            {
                allow_keys(a, "sweep.alpha_t_deg", {"from", "to", "points"});
                if (a["from"])
                    cfg.alpha_axis.from_deg = get_finite(a["from"], "from");
                if (a["to"])
                    cfg.alpha_axis.to_deg = get_finite(a["to"], "to");
                if (a["points"])
                    cfg.alpha_axis.points = get<int>(a["points"], "points");
            }
            if (const auto p = s["periods"])
            {
                if (!p.IsSequence() || p.size() == 0)
                    throw ConfigError("'periods' must be a nonempty list" + where(p));
                cfg.periods.clear();
                for (const auto &r : p)
                    cfg.periods.push_back(get<int>(r, "periods"));
            }
        }

        if (const auto m = root["montecarlo"])
        {
            allow_keys(m, "montecarlo", {"trials", "phi_deg", "paths", "samples", "branch_powers_db"});
            if (m["trials"])
                cfg.trials = get<std::size_t>(m["trials"], "trials");
            if (m["phi_deg"])
                cfg.montecarlo_phi_deg = get_phi(m["phi_deg"], "phi_deg");
            if (m["paths"])
                cfg.paths = get<int>(m["paths"], "paths");
            if (m["samples"])
                cfg.samples = get<std::size_t>(m["samples"], "samples");
            if (m["branch_powers_db"])
                cfg.branch_powers_db = get_list(m["branch_powers_db"], "branch_powers_db");
        }

        if (const auto v = root["verify"])
        {
            allow_keys(v, "verify", {"override_x_deg"});
            if (v["override_x_deg"])
                cfg.override_x_deg = get_finite(v["override_x_deg"], "override_x_deg");
        }

        if (root["seed"])
            cfg.seed = get<std::uint64_t>(root["seed"], "seed");

        if (cfg.aoa_points < 1 || cfg.alpha_axis.points < 1)
            throw ConfigError("sweep grids must be nonempty");
        // construct once so geometry and budget errors surface at load time
        (void)cfg.array();
        (void)cfg.budget();
        return cfg;
    }

    ExperimentConfig load_config(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ConfigError("cannot open config file: " + path.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        const std::string text = ss.str();
        auto cfg = parse_config(text, path.parent_path());
        cfg.sha256 = sha256_hex(text);
        return cfg;
    }

    AntennaArray<double> ExperimentConfig::array() const
    {
        Eigen::Matrix2Xd pos(2, static_cast<Eigen::Index>(elements.size()));
        for (std::size_t l = 0; l < elements.size(); ++l)
        {
            pos(0, static_cast<Eigen::Index>(l)) = position_x[l];
            pos(1, static_cast<Eigen::Index>(l)) = position_y[l];
        }
        return AntennaArray<double>(elements, pos, wavelength);
    }

    LinkBudget<double> ExperimentConfig::budget() const
    {
        LinkBudget<double> b;
        b.received_power = db_to_linear(snr_db);
        b.noise_power = 1;
        b.burst_length = burst_length;
        b.period = period;
        b.validate();
        return b;
    }

    PhaseSchedule<double> ExperimentConfig::schedule() const
    {
        const auto n = static_cast<Eigen::Index>(elements.size());
        PhaseSchedule<double> s;
        if (schedule_mode == ScheduleMode::designed)
        {
            s = n < 2 ? PhaseSchedule<double>::zeros(n)
                      : PhaseSchedule<double>::from_rates(design_rates<double>(n, burst_length, period));
        }
        else
        {
            if (rates_deg_per_s.size() != elements.size())
                throw ConfigError("'rates_deg_per_s' needs one entry per element");
            s = PhaseSchedule<double>::zeros(n);
            for (Eigen::Index l = 0; l < n; ++l)
                s.rates[l] = deg_to_rad(rates_deg_per_s[static_cast<std::size_t>(l)]);
        }
        if (!offsets_deg.empty())
        {
            if (offsets_deg.size() != elements.size())
                throw ConfigError("'offsets_deg' needs one entry per element");
            for (Eigen::Index l = 0; l < n; ++l)
                s.offsets[l] = wrap_two_pi(deg_to_rad(offsets_deg[static_cast<std::size_t>(l)]));
        }
        s.validate(n);
        return s;
    }

    std::string sha256_hex(const std::string &bytes)
    {
        unsigned char digest[EVP_MAX_MD_SIZE];
        unsigned int len = 0;
        if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
            throw Error("SHA-256 digest failed");
        static const char hex[] = "0123456789abcdef";
        std::string out;
        out.reserve(2 * len);
        for (unsigned int i = 0; i < len; ++i)
        {
            out.push_back(hex[digest[i] >> 4]);
            out.push_back(hex[digest[i] & 0xf]);
        }
        return out;
    }
}
