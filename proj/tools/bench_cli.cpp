// SPDX-License-Identifier: Apache-2.0
//
// irsloc — joint reflecting-surface deployment, transmit beamforming and
// reflect-phase design for outage-constrained physical-layer secrecy.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
//
// Benchmark harness entry point. Subcommands:
//   run      — one scenario per configured scheme/seed, no sweep axis
//   sweep    — batch over a sweep axis, CSV table per (value, scheme, seed)
//   verify   — the ten first-class release checks, one pass/fail line each
//   quantile — print the deployment-stage quantile pair per sweep value
//
// Exit codes: 0 success, 1 configuration error, 2 solver failure,
// 3 release-check failure.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "acceptance.hpp"
#include "bench.hpp"
#include "irsloc/outage.hpp"
#include "irsloc/rng.hpp"

namespace {

using irsloc::SystemParams;
using irsloc::bench::RunConfig;
using irsloc::bench::RunRow;
using irsloc::bench::SummaryLine;

struct Flags {
    std::string config_path;
    std::uint64_t seed = 0;
    int seeds = 0;
    std::string out_path;
    std::string scheme_csv;
    std::string sweep_spec;
    std::string quantile_method;
    double grid_step = 0.0;
};

void add_common_flags(CLI::App* sub, Flags& fl) {
    sub->add_option("--config", fl.config_path, "JSON configuration file");
    sub->add_option("--seed", fl.seed, "base seed (cell k uses base + k)");
    sub->add_option("--seeds", fl.seeds, "seeds per (value, scheme) cell");
    sub->add_option("--out", fl.out_path, "CSV output path");
    sub->add_option("--scheme", fl.scheme_csv,
                    "comma-separated scheme tags (proposed, random_location, "
                    "global_search, mrt, gaussian_random)");
    sub->add_option("--sweep", fl.sweep_spec,
                    "axis=v1,v2,... (power_dbm, n_irs, rician_k, eve_area_index)");
    sub->add_option("--quantile-method", fl.quantile_method, "analytic or mc");
    sub->add_option("--grid-step", fl.grid_step, "grid pitch in meters");
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

// Config file first, then command-line overrides; throws
// std::invalid_argument on any malformed piece.
RunConfig build_config(const CLI::App* sub, const Flags& fl) {
    RunConfig cfg =
        fl.config_path.empty() ? RunConfig{} : irsloc::bench::load_config(fl.config_path);
    if (sub->count("--seed")) cfg.base_seed = fl.seed;
    if (sub->count("--seeds")) cfg.n_seeds = fl.seeds;
    if (sub->count("--out")) cfg.output_path = fl.out_path;
    if (sub->count("--grid-step")) cfg.grid_step = fl.grid_step;
    if (sub->count("--scheme")) {
        cfg.schemes.clear();
        for (const std::string& tag : split_csv(fl.scheme_csv)) {
            const auto s = irsloc::pipeline::scheme_from_string(tag);
            if (!s) throw std::invalid_argument("config: unknown scheme '" + tag + "'");
            cfg.schemes.push_back(*s);
        }
    }
    if (sub->count("--sweep")) {
        const std::size_t eq = fl.sweep_spec.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: --sweep expects axis=v1,v2,...");
        const auto axis = irsloc::bench::axis_from_string(fl.sweep_spec.substr(0, eq));
        if (!axis)
            throw std::invalid_argument("config: unknown sweep axis '" +
                                        fl.sweep_spec.substr(0, eq) + "'");
        cfg.axis = *axis;
        cfg.sweep_values.clear();
        for (const std::string& v : split_csv(fl.sweep_spec.substr(eq + 1))) {
            try {
                std::size_t used = 0;
                const double x = std::stod(v, &used);
                if (used != v.size()) throw std::invalid_argument(v);
                cfg.sweep_values.push_back(x);
            } catch (const std::exception&) {
                throw std::invalid_argument("config: bad sweep value '" + v + "'");
            }
        }
    }
    if (sub->count("--quantile-method")) {
        if (fl.quantile_method == "analytic")
            cfg.quantile_method = irsloc::outage::QuantileMethod::analytic;
        else if (fl.quantile_method == "mc")
            cfg.quantile_method = irsloc::outage::QuantileMethod::monte_carlo;
        else
            throw std::invalid_argument("config: quantile-method must be analytic or mc");
    }
    cfg.validate();
    return cfg;
}

void print_resolved(const RunConfig& cfg) {
    std::cout << "resolved configuration:\n"
              << irsloc::bench::resolved_config(cfg).dump(2) << "\n";
}

void print_summary(const std::vector<RunRow>& rows) {
    std::printf("%12s  %-16s  %4s  %10s  %10s\n", "sweep_value", "scheme", "n",
                "mean_rate", "std_err");
    for (const SummaryLine& s : irsloc::bench::summarize(rows)) {
        std::printf("%12g  %-16s  %4d  %10.4f  %10.4f", s.sweep_value,
                    irsloc::pipeline::to_string(s.scheme), s.n_ok, s.mean_rate,
                    s.std_err);
        if (s.n_failed > 0) std::printf("  (%d failed)", s.n_failed);
        std::printf("\n");
    }
}

// Per-cell failures keep the sweep alive; surface them on stderr and signal
// a solver failure only when nothing succeeded at all.
int report_failures(const std::vector<RunRow>& rows) {
    int n_failed = 0;
    for (const RunRow& row : rows)
        if (row.failed) {
            ++n_failed;
            std::fprintf(stderr, "cell value=%g scheme=%s seed=%llu failed: %s\n",
                         row.sweep_value, irsloc::pipeline::to_string(row.scheme),
                         static_cast<unsigned long long>(row.seed), row.error.c_str());
        }
    if (n_failed == static_cast<int>(rows.size()) && !rows.empty()) {
        std::fprintf(stderr, "all %d cells failed\n", n_failed);
        return 2;
    }
    return 0;
}

int do_run_or_sweep(const RunConfig& cfg, bool is_sweep) {
    print_resolved(cfg);
    if (is_sweep && cfg.axis == irsloc::bench::SweepAxis::none)
        throw std::invalid_argument("config: sweep requires a sweep axis");
    const std::vector<RunRow> rows = irsloc::bench::run_sweep(cfg);
    if (!is_sweep)
        for (const RunRow& row : rows) {
            if (row.failed) continue;
            std::printf(
                "scheme=%-16s seed=%llu  site=(%.2f, %.2f)  eve=(%.2f, %.2f)  "
                "rate=%.4f bits  outage=%.4f  iters=%d\n",
                irsloc::pipeline::to_string(row.scheme),
                static_cast<unsigned long long>(row.seed), row.omega_i_x,
                row.omega_i_y, row.eve_x, row.eve_y, row.rate_bits, row.outage_hat,
                row.iters);
        }
    print_summary(rows);
    if (!cfg.output_path.empty()) {
        irsloc::bench::emit_csv(rows, cfg.output_path);
        std::printf("wrote %zu rows to %s\n", rows.size(), cfg.output_path.c_str());
    }
    return report_failures(rows);
}

int do_quantile(const RunConfig& cfg) {
    print_resolved(cfg);
    const bool mc = cfg.quantile_method == irsloc::outage::QuantileMethod::monte_carlo;
    const std::string draws =
        mc ? " (" + std::to_string(cfg.quantile_samples) + " draws)" : "";
    std::printf("quantile method: %s%s\n", mc ? "monte-carlo" : "analytic",
                draws.c_str());
    std::printf("%12s  %12s  %12s  %12s  %12s\n", "sweep_value", "a", "s_sq",
                "alpha_e", "alpha_b");
    const std::vector<double> values = cfg.axis == irsloc::bench::SweepAxis::none
                                           ? std::vector<double>{0.0}
                                           : cfg.sweep_values;
    for (double v : values) {
        const SystemParams p = irsloc::bench::apply_axis(cfg, v);
        const irsloc::outage::GammaScale gs = irsloc::outage::gamma_scale(p);
        const irsloc::outage::QuantilePair q = irsloc::outage::quantiles(
            gs, p.p_out, cfg.quantile_method, cfg.quantile_samples,
            irsloc::rng::substream(cfg.base_seed, 0x71u));
        std::printf("%12g  %12.6g  %12.6g  %12.6g  %12.6g\n", v, gs.a, gs.s_sq,
                    q.alpha_e, q.alpha_b);
    }
    return 0;
}

int do_verify(const RunConfig& cfg) {
    print_resolved(cfg);
    const std::vector<irsloc::accept::CriterionResult> results =
        irsloc::accept::run_all(std::cout);
    if (!irsloc::accept::all_passed(results)) {
        std::fprintf(stderr, "release checks failed\n");
        return 3;
    }
    std::printf("all %zu release checks passed\n", results.size());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"outage-constrained reflecting-surface secrecy benchmark"};
    app.require_subcommand(1);
    Flags fl;
    CLI::App* run = app.add_subcommand("run", "single scenario per scheme");
    CLI::App* sweep = app.add_subcommand("sweep", "batch over a sweep axis");
    CLI::App* verify = app.add_subcommand("verify", "release-check suite");
    CLI::App* quantile = app.add_subcommand("quantile", "deployment quantile table");
    for (CLI::App* sub : {run, sweep, verify, quantile}) add_common_flags(sub, fl);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    CLI::App* sub = app.get_subcommands().front();

    RunConfig cfg;
    try {
        cfg = build_config(sub, fl);
        if (sub == run) {
            cfg.axis = irsloc::bench::SweepAxis::none;
            if (!sub->count("--seeds")) cfg.n_seeds = 1;
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    }

    try {
        if (sub == run) return do_run_or_sweep(cfg, false);
        if (sub == sweep) return do_run_or_sweep(cfg, true);
        if (sub == quantile) return do_quantile(cfg);
        return do_verify(cfg);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return 2;
    }
}
