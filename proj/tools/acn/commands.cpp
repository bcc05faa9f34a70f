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

#include "commands.hpp"

#include <nlohmann/json.hpp>
#include <yaml-cpp/exceptions.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace acn::cli
{
    namespace
    {
        using Pattern = FarFieldPattern<double>;

        ExperimentConfig load(const Options &opt)
        {
            if (opt.config_path.empty())
                throw ConfigError("--config is required for this command");
            auto cfg = load_config(opt.config_path);
            if (opt.seed)
                cfg.seed = *opt.seed;
            return cfg;
        }

        void write_header(std::ostream &out, const char *command, const std::string &sha, std::uint64_t seed)
        {
            out << "# tool: acn " << tool_version << '\n'
                << "# command: " << command << '\n'
                << "# config_sha256: " << (sha.empty() ? "none" : sha) << '\n'
                << "# seed: " << seed << '\n';
        }

        std::string fmt(double v) { return format_double(v); }

        double resolve_phi(const std::optional<double> &phi_deg, const AntennaArray<double> &array)
        {
            return phi_deg ? wrap_two_pi(deg_to_rad(*phi_deg)) : worst_case_aoa(array);
        }

        std::vector<double> aoa_grid(int points)
        {
            if (points < 1)
                throw ResolutionError("the AOA grid must have at least one point");
            std::vector<double> phi(static_cast<std::size_t>(points));
            for (int i = 0; i < points; ++i)
                phi[static_cast<std::size_t>(i)] = two_pi_v<double> * i / points;
            return phi;
        }

        // BEP of a scheme whose K packets all see the same average SNR rho / K.
        double static_bep(const PepModel<double> &model, double rho_value, int bursts)
        {
            const VectorX<double> snrs = VectorX<double>::Constant(bursts, rho_value / bursts);
            return burst_error_prob_from_snrs(model, snrs);
        }

        struct SchemeColumn
        {
            std::string name;
            Scheme scheme;
        };

        std::vector<SchemeColumn> scheme_columns(Eigen::Index antennas)
        {
            std::vector<SchemeColumn> cols;
            for (Eigen::Index l = 0; l < antennas; ++l)
                cols.push_back({std::to_string(l), Scheme::single(l)});
            cols.push_back({"iso", Scheme::isotropic()});
            cols.push_back({"mrc", Scheme::mrc()});
            cols.push_back({"egc", Scheme::egc()});
            cols.push_back({"sc", Scheme::sc()});
            cols.push_back({"acn", Scheme::acn()});
            return cols;
        }

        // rho and BEP for every scheme at one AOA; the ACN BEP uses the configured schedule.
        void evaluate_schemes(const ExperimentConfig &cfg, const AntennaArray<double> &array, const LinkBudget<double> &budget,
                              const PhaseSchedule<double> &schedule, const std::vector<SchemeColumn> &cols, double phi,
                              std::vector<double> &rho_out, std::vector<double> &bep_out)
        {
            rho_out.resize(cols.size());
            bep_out.resize(cols.size());
            for (std::size_t c = 0; c < cols.size(); ++c)
            {
                rho_out[c] = rho(cols[c].scheme, array, budget, phi);
                bep_out[c] = cols[c].scheme.kind == SchemeKind::acn
                                 ? burst_error_prob(array, schedule, budget, cfg.pep, phi, cfg.omega)
                                 : static_bep(cfg.pep, rho_out[c], budget.burst_length);
            }
        }

        // ---- stock arrays for the theory checks

        AntennaArray<double> stock_dipole_iso()
        {
            Eigen::Matrix2Xd pos(2, 2);
            pos << 0, 0.5, 0, 0;
            return AntennaArray<double>({Pattern::dipole_cosine(0), Pattern::isotropic()}, pos, 1.0);
        }

        AntennaArray<double> stock_cardioid_pair()
        {
            Eigen::Matrix2Xd pos(2, 2);
            pos << 0, 0.3, 0, 0.1;
            return AntennaArray<double>({Pattern::cardioid(0, 0.8), Pattern::cardioid(pi_v<double>, 0.8)}, pos, 1.0);
        }

        AntennaArray<double> stock_patch_triplet()
        {
            Eigen::Matrix2Xd pos(2, 3);
            pos << 0, 0.4, 0.2, 0, 0, 0.35;
            const double hpbw = deg_to_rad(70.0);
            return AntennaArray<double>({Pattern::patch_lobe(0, hpbw, 0.1), Pattern::patch_lobe(two_pi_v<double> / 3, hpbw, 0.1),
                                         Pattern::patch_lobe(2 * two_pi_v<double> / 3, hpbw, 0.1)},
                                        pos, 1.0);
        }

        std::vector<AntennaArray<double>> stock_arrays()
        {
            return {stock_dipole_iso(), stock_cardioid_pair(), stock_patch_triplet()};
        }

        struct Check
        {
            std::string name;
            bool pass;
            std::string detail;
        };
    }

    int cmd_design(const Options &opt, std::ostream &out)
    {
        ExperimentConfig cfg;
        bool have_config = !opt.config_path.empty();
        if (have_config)
            cfg = load(opt);
        else if (opt.seed)
            cfg.seed = *opt.seed;
        if (!have_config && !opt.antennas)
            throw ConfigError("design needs --config or --antennas");
        const int antennas = opt.antennas ? *opt.antennas : static_cast<int>(cfg.elements.size());
        const int bursts = opt.bursts ? *opt.bursts : cfg.burst_length;
        const double period = opt.period ? *opt.period : cfg.period;

        const auto rates = design_rates<double>(antennas, bursts, period);
        const auto x = rates_to_x(rates, period);
        write_header(out, "design", cfg.sha256, cfg.seed);
        out << "# antennas: " << antennas << '\n'
            << "# burst_length: " << bursts << '\n'
            << "# period_s: " << fmt(period) << '\n'
            << "# pairwise_x_star: " << (all_pairs_in_x_star(x, bursts) ? "true" : "false") << '\n';
        out << "l,rate_rad_per_s,multiple_of_2pi_over_KT,x_rad,x_in_x_star\n";
        for (Eigen::Index l = 0; l < rates.size(); ++l)
            out << l << ',' << fmt(rates[l]) << ',' << l << ',' << fmt(x[l]) << ','
                << (x_star_membership(x[l], bursts) ? 1 : 0) << '\n';
        return exit_ok;
    }

    int cmd_sweep_aoa(const Options &opt, std::ostream &out)
    {
        const auto cfg = load(opt);
        const auto array = cfg.array();
        const auto budget = cfg.budget();
        const auto schedule = cfg.schedule();
        const auto phis = aoa_grid(opt.grid ? *opt.grid : cfg.aoa_points);
        const auto cols = scheme_columns(array.size());

        std::vector<std::vector<double>> rho_rows(phis.size()), bep_rows(phis.size());
        parallel_for(phis.size(), opt.threads, [&](std::size_t i)
                     { evaluate_schemes(cfg, array, budget, schedule, cols, phis[i], rho_rows[i], bep_rows[i]); });

        write_header(out, "sweep-aoa", cfg.sha256, cfg.seed);
        out << "phi_deg";
        for (const auto &c : cols)
            out << ",rho_" << c.name;
        for (const auto &c : cols)
            out << ",bep_" << c.name;
        out << '\n';
        for (std::size_t i = 0; i < phis.size(); ++i)
        {
            out << fmt(rad_to_deg(phis[i]));
            for (double v : rho_rows[i])
                out << ',' << fmt(v);
            for (double v : bep_rows[i])
                out << ',' << fmt(v);
            out << '\n';
        }
        return exit_ok;
    }

    int cmd_sweep_alpha(const Options &opt, std::ostream &out)
    {
        const auto cfg = load(opt);
        const auto array = cfg.array();
        const auto budget = cfg.budget();
        const int points = opt.grid ? *opt.grid : cfg.alpha_axis.points;
        const double phi = resolve_phi(cfg.sweep_phi_deg, array);
        auto curve = mismatch_sweep(array, budget, cfg.pep, phi, deg_to_rad(cfg.alpha_axis.from_deg),
                                    deg_to_rad(cfg.alpha_axis.to_deg), points, cfg.omega, 64, opt.threads);
        std::stable_sort(curve.begin(), curve.end(), [](const auto &a, const auto &b)
                         { return a.alpha_t < b.alpha_t; });

        write_header(out, "sweep-alpha", cfg.sha256, cfg.seed);
        out << "# phi_deg: " << fmt(rad_to_deg(phi)) << '\n';
        out << "alpha_t_rad,worst_bep,worst_offset_rad\n";
        for (const auto &p : curve)
            out << fmt(p.alpha_t) << ',' << fmt(p.bep) << ',' << fmt(p.offsets[1]) << '\n';
        return exit_ok;
    }

    int cmd_compare(const Options &opt, std::ostream &out)
    {
        const auto cfg = load(opt);
        const auto array = cfg.array();
        const auto budget = cfg.budget();
        const auto schedule = cfg.schedule();
        const auto phis = aoa_grid(opt.grid ? *opt.grid : cfg.aoa_points);
        const auto cols = scheme_columns(array.size());

        std::vector<std::vector<double>> rho_rows(phis.size()), bep_rows(phis.size());
        parallel_for(phis.size(), opt.threads, [&](std::size_t i)
                     { evaluate_schemes(cfg, array, budget, schedule, cols, phis[i], rho_rows[i], bep_rows[i]); });

        write_header(out, "compare", cfg.sha256, cfg.seed);
        out << "# aoa_points: " << phis.size() << '\n';
        out << "scheme,min_rho,worst_phi_deg,max_bep\n";
        for (std::size_t c = 0; c < cols.size(); ++c)
        {
            double min_rho = std::numeric_limits<double>::infinity();
            double max_bep = 0;
            std::size_t worst = 0;
            for (std::size_t i = 0; i < phis.size(); ++i)
            {
                if (rho_rows[i][c] < min_rho)
                {
                    min_rho = rho_rows[i][c];
                    worst = i;
                }
                max_bep = std::max(max_bep, bep_rows[i][c]);
            }
            const std::string name = cols[c].scheme.kind == SchemeKind::single ? "single_" + cols[c].name : cols[c].name;
            out << name << ',' << fmt(min_rho) << ',' << fmt(rad_to_deg(phis[worst])) << ',' << fmt(max_bep) << '\n';
        }
        return exit_ok;
    }

    int cmd_montecarlo(const Options &opt, std::ostream &out)
    {
        const auto cfg = load(opt);
        const auto array = cfg.array();

        BurstTrialConfig bc;
        bc.trials = cfg.trials;
        bc.seed = cfg.seed;
        bc.phi = resolve_phi(cfg.montecarlo_phi_deg, array);
        bc.schedule = cfg.schedule();
        bc.budget = cfg.budget();
        bc.pep = cfg.pep;
        bc.omega = cfg.omega;
        bc.workers = opt.threads;
        const auto r = simulate_bursts(array, bc);

        nlohmann::ordered_json rec;
        rec["record"] = "burst";
        rec["tool"] = std::string("acn ") + tool_version;
        rec["config_sha256"] = cfg.sha256;
        rec["seed"] = cfg.seed;
        rec["phi_deg"] = rad_to_deg(bc.phi);
        rec["trials"] = r.trials;
        rec["bursts"] = r.bursts;
        rec["empirical"] = r.rate;
        rec["ci_low"] = r.ci.low;
        rec["ci_high"] = r.ci.high;
        rec["analytic"] = r.analytic;
        rec["analytic_within_ci"] = r.analytic_within_ci;
        out << rec.dump() << '\n';

        if (cfg.samples > 0)
        {
            ScatteringConfig sc;
            sc.paths = cfg.paths;
            sc.samples = cfg.samples;
            sc.seed = cfg.seed;
            sc.period = cfg.period;
            sc.workers = opt.threads;
            for (double db : cfg.branch_powers_db)
                sc.branch_powers.push_back(db_to_linear(db));
            const auto s = simulate_scattering(array, sc, bc.schedule);
            nlohmann::ordered_json r2;
            r2["record"] = "scattering";
            r2["tool"] = std::string("acn ") + tool_version;
            r2["config_sha256"] = cfg.sha256;
            r2["seed"] = cfg.seed;
            r2["samples"] = s.snr.size();
            r2["paths"] = sc.paths;
            r2["mean"] = s.mean;
            r2["analytic_mean"] = s.analytic_mean;
            r2["isotropic_mean"] = s.isotropic_mean;
            r2["ks_statistic"] = s.ks_statistic;
            r2["ks_critical_1pct"] = s.ks_critical;
            out << r2.dump() << '\n';
        }
        return r.analytic_within_ci ? exit_ok : exit_validation;
    }

    int cmd_verify_theory(const Options &opt, std::ostream &out)
    {
        ExperimentConfig cfg;
        if (!opt.config_path.empty())
            cfg = load(opt);
        else if (opt.seed)
            cfg.seed = *opt.seed;
        RandomStream rng(cfg.seed, 0);
        const int bursts = cfg.burst_length;
        std::vector<Check> checks;
        auto add = [&](std::string name, bool pass, std::string detail)
        { checks.push_back({std::move(name), pass, std::move(detail)}); };

        {
            double worst = 0;
            if (cfg.override_x_deg)
            {
                const double x = deg_to_rad(*cfg.override_x_deg);
                for (int k = 2; k <= 10; ++k)
                    for (int i = 0; i < 200; ++i)
                        worst = std::max(worst, std::abs(f_kernel(x, two_pi_v<double> * rng.uniform(), k)));
            }
            else
            {
                for (int k = 2; k <= 10; ++k)
                    for (int q = 1; q <= 4 * k; ++q)
                    {
                        if (q % k == 0)
                            continue;
                        for (int i = 0; i < 200; ++i)
                            worst = std::max(worst, std::abs(f_kernel(q * pi_v<double> / k, two_pi_v<double> * rng.uniform(), k)));
                    }
            }
            add("kernel_zeros", worst <= 1e-10, "max |f| = " + fmt(worst));
        }
        {
            double worst = 0;
            for (int i = 0; i < 10000; ++i)
            {
                const double x = two_pi_v<double> * rng.uniform();
                const double y = two_pi_v<double> * rng.uniform();
                const int k = 2 + static_cast<int>(rng.uniform() * 19);
                worst = std::max(worst, std::abs(f_kernel(x, y, k) - f_kernel_sum(x, y, k)));
            }
            add("kernel_closed_form", worst <= 1e-10, "max deviation = " + fmt(worst));
        }
        {
            bool ok = true;
            for (int k = 2; k <= 12; ++k)
                for (int l = 2; l <= k; ++l)
                    ok = ok && all_pairs_in_x_star(rates_to_x(design_rates<double>(l, k, 0.1), 0.1), k);
            add("design_pairwise_x_star", ok, "2 <= L <= K <= 12");
        }
        {
            bool ok = true;
            for (int k = 2; k <= 4; ++k)
            {
                ok = ok && !find_x_star_vector<double>(k + 1, k, pi_v<double> / (4 * k), 1e-6);
                try
                {
                    (void)design_rates<double>(k + 1, k, 0.1);
                    ok = false;
                }
                catch (const Infeasible &)
                {
                }
            }
            add("converse_l_exceeds_k", ok, ok ? "infeasible as expected" : "found a vector for L = K + 1");
        }
        {
            double worst = 0;
            std::size_t cases = 0;
            for (const auto &array : stock_arrays())
            {
                if (array.size() > bursts)
                    continue;
                const auto x = rates_to_x(design_rates<double>(array.size(), bursts, 0.1), 0.1);
                for (int i = 0; i < 10; ++i)
                {
                    const double phi = two_pi_v<double> * rng.uniform();
                    const double bound = bursts * array.magnitudes(phi).squaredNorm();
                    const double value = inf_psi_J(array, phi, x, bursts).value;
                    worst = std::max(worst, std::abs(value - bound) / std::max(bound, 1e-300));
                    ++cases;
                }
            }
            add("optimal_rates_bound", cases > 0 && worst <= 1e-9, "max relative gap = " + fmt(worst));
        }
        {
            double worst = -std::numeric_limits<double>::infinity();
            for (int i = 0; i < 500; ++i)
            {
                const int w = 1 + static_cast<int>(rng.uniform() * 6);
                VectorX<double> c(w), x(w), y(w);
                for (int j = 0; j < w; ++j)
                {
                    c[j] = rng.uniform();
                    x[j] = two_pi_v<double> * rng.uniform();
                    y[j] = two_pi_v<double> * rng.uniform();
                }
                y = pair_phase_assignment(c, x, bursts, y);
                double sum = 0;
                for (int j = 0; j < w; ++j)
                    sum += c[j] * f_kernel(x[j], y[j], bursts);
                worst = std::max(worst, sum);
            }
            add("pair_phase_construction", worst <= 1e-12, "max sum = " + fmt(worst));
        }
        {
            MinimaxGrid grid;
            grid.x_points = opt.grid ? *opt.grid : 32 * bursts;
            grid.phi_points = 720;
            grid.psi_points = 32;
            std::string detail;
            bool ok = true;
            for (const auto &array : {stock_dipole_iso(), stock_patch_triplet()})
            {
                if (array.size() > bursts)
                    continue;
                const auto r = minimax_rates(array, bursts, 0.1, grid);
                const double closed = bursts * array.magnitudes(worst_case_aoa(array)).squaredNorm();
                const double rel = (closed - r.value) / closed;
                ok = ok && r.value <= closed + 1e-6 && rel <= 0.01;
                detail += (detail.empty() ? "" : "; ") + std::string("L = ") + std::to_string(array.size()) +
                          " relative gap " + fmt(rel);
            }
            add("minimax_tightness", ok, detail);
        }
        {
            const double rate = two_pi_v<double> / (bursts * 0.1);
            std::vector<int> rs;
            for (int r = 1; r <= 2 * bursts; ++r)
                rs.push_back(r);
            const auto flags = multi_period_check(rate, bursts, 0.1, rs);
            bool ok = true;
            for (std::size_t i = 0; i < rs.size(); ++i)
                ok = ok && flags[i] == (rs[i] % bursts != 0);
            add("multi_period", ok, "optimal exactly when r is not a multiple of K");
        }
        {
            double worst = std::numeric_limits<double>::infinity();
            double mrc_gap = 0;
            LinkBudget<double> budget;
            budget.burst_length = bursts;
            for (const auto &array : stock_arrays())
                for (const double phi : aoa_grid(360))
                {
                    const double mrc = rho(Scheme::mrc(), array, budget, phi);
                    const double egc = rho(Scheme::egc(), array, budget, phi);
                    const double sc = rho(Scheme::sc(), array, budget, phi);
                    const double acn = rho(Scheme::acn(), array, budget, phi);
                    mrc_gap = std::max(mrc_gap, std::abs(mrc - static_cast<double>(array.size()) * acn));
                    worst = std::min({worst, mrc - egc, egc - acn, mrc - sc, sc - acn});
                }
            add("rho_ordering", worst >= -1e-12 && mrc_gap <= 1e-12 * bursts * 10,
                "min slack = " + fmt(worst) + ", |mrc - L acn| = " + fmt(mrc_gap));
        }
        {
            double spread = 0;
            for (const auto &array : stock_arrays())
            {
                if (array.size() > bursts)
                    continue;
                LinkBudget<double> budget;
                budget.burst_length = bursts;
                auto sched = PhaseSchedule<double>::from_rates(design_rates<double>(array.size(), bursts, budget.period));
                const double phi = two_pi_v<double> * rng.uniform();
                const double ref = rho(Scheme::acn(), array, budget, phi);
                for (int i = 0; i < 100; ++i)
                {
                    for (Eigen::Index l = 1; l < array.size(); ++l)
                        sched.offsets[l] = two_pi_v<double> * rng.uniform();
                    const auto mode = i % 2 ? OmegaMode::geometric : OmegaMode::zero;
                    const double sum = packet_snrs(array, sched, budget, phi, mode).sum();
                    spread = std::max(spread, std::abs(sum - ref) / std::max(ref, 1e-300));
                }
            }
            add("offset_invariance", spread <= 1e-9, "max relative spread = " + fmt(spread));
        }
        {
            double worst = std::numeric_limits<double>::infinity();
            for (const auto &array : {stock_dipole_iso(), stock_cardioid_pair()})
                for (int i = 0; i < 1000; ++i)
                {
                    const int k = 3 + static_cast<int>(rng.uniform() * 18);
                    LinkBudget<double> budget;
                    budget.burst_length = k;
                    budget.received_power = 2; // scale P_r/(L P_n) = 1
                    auto sched = PhaseSchedule<double>::from_rates(design_rates<double>(2, k, budget.period));
                    sched.offsets[1] = two_pi_v<double> * rng.uniform();
                    const double phi = two_pi_v<double> * rng.uniform();
                    const auto mags = array.magnitudes(phi);
                    const double bound = std::pow(std::cos(pi_v<double> / (2 * k)) * (mags[0] + mags[1]), 2);
                    const double best = packet_snrs(array, sched, budget, phi, OmegaMode::zero).maxCoeff();
                    worst = std::min(worst, best - bound);
                }
            add("egc_similarity", worst >= -1e-12, "min margin = " + fmt(worst));
        }
        {
            double worst = 0;
            for (const auto &array : stock_arrays())
            {
                if (array.size() > bursts)
                    continue;
                LinkBudget<double> budget;
                budget.burst_length = bursts;
                auto sched = PhaseSchedule<double>::from_rates(design_rates<double>(array.size(), bursts, budget.period));
                for (Eigen::Index l = 1; l < array.size(); ++l)
                    sched.offsets[l] = two_pi_v<double> * rng.uniform();
                const double phi = two_pi_v<double> * rng.uniform();
                worst = std::max(worst, validate_packet_snr(array, sched, budget, phi, OmegaMode::geometric));
            }
            add("packet_snr_crosscheck", worst <= 1e-12, "max deviation = " + fmt(worst));
        }

        write_header(out, "verify-theory", cfg.sha256, cfg.seed);
        out << "check,status,detail\n";
        bool all = true;
        for (const auto &c : checks)
        {
            all = all && c.pass;
            out << c.name << ',' << (c.pass ? "pass" : "fail") << ',' << c.detail << '\n';
        }
        return all ? exit_ok : exit_validation;
    }

    int run_command(const std::string &name, const Options &opt, std::ostream &out, std::ostream &err)
    {
        static const std::vector<std::pair<std::string, std::function<int(const Options &, std::ostream &)>>> table{
            {"design", cmd_design},
            {"sweep-aoa", cmd_sweep_aoa},
            {"sweep-alpha", cmd_sweep_alpha},
            {"compare", cmd_compare},
            {"montecarlo", cmd_montecarlo},
            {"verify-theory", cmd_verify_theory},
        };
        try
        {
            for (const auto &[key, fn] : table)
                if (key == name)
                    return fn(opt, out);
            err << "error: unknown command '" << name << "'\n";
            return exit_usage;
        }
        catch (const Infeasible &e)
        {
            err << "error: " << e.what() << '\n';
            return exit_infeasible;
        }
        catch (const Error &e)
        {
            err << "error: " << e.what() << '\n';
            return exit_usage;
        }
        catch (const YAML::Exception &e)
        {
            err << "error: config: " << e.what() << '\n';
            return exit_usage;
        }
    }
}
