// SPDX-License-Identifier: Apache-2.0
//
// irsloc — joint reflecting-surface deployment, transmit beamforming and
// reflect-phase design for outage-constrained physical-layer secrecy.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "bench.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace irsloc::bench {

namespace {

using nlohmann::json;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void config_fail(const std::string& what) {
    throw std::invalid_argument("config: " + what);
}

double as_number(const json& v, const char* key) {
    if (!v.is_number()) config_fail(std::string(key) + " must be a number");
    return v.get<double>();
}

std::int64_t as_integer(const json& v, const char* key) {
    if (!v.is_number_integer()) config_fail(std::string(key) + " must be an integer");
    return v.get<std::int64_t>();
}

Vec2 as_vec2(const json& v, const char* key) {
    if (!v.is_array() || v.size() != 2)
        config_fail(std::string(key) + " must be an [x, y] pair");
    return {as_number(v[0], key), as_number(v[1], key)};
}

Rect as_rect(const json& v, const char* key) {
    if (!v.is_array() || v.size() != 4)
        config_fail(std::string(key) + " must be [x_min, x_max, y_min, y_max]");
    return {as_number(v[0], key), as_number(v[1], key), as_number(v[2], key),
            as_number(v[3], key)};
}

json rect_to_json(const Rect& r) {
    return json::array({r.x_min, r.x_max, r.y_min, r.y_max});
}

// Sweep values that index discrete quantities must be exact integers.
int integral_value(double v, const char* what) {
    const double r = std::round(v);
    if (!(std::abs(v - r) < 1e-9))
        config_fail(std::string(what) + " sweep values must be integers");
    return static_cast<int>(r);
}

// Shortest exact decimal form (round-trips through parse_csv bit-for-bit).
void append_double(std::string& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

double parse_double_field(std::string_view s, int line_no) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::runtime_error("csv line " + std::to_string(line_no) +
                                 ": bad numeric field '" + std::string(s) + "'");
    return v;
}

} // namespace

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::none: return "none";
        case SweepAxis::power_dbm: return "power_dbm";
        case SweepAxis::n_irs: return "n_irs";
        case SweepAxis::rician_k: return "rician_k";
        case SweepAxis::eve_area_index: return "eve_area_index";
    }
    return "?";
}

std::optional<SweepAxis> axis_from_string(std::string_view tag) {
    for (SweepAxis a : {SweepAxis::none, SweepAxis::power_dbm, SweepAxis::n_irs,
                        SweepAxis::rician_k, SweepAxis::eve_area_index})
        if (tag == to_string(a)) return a;
    return std::nullopt;
}

std::vector<Rect> default_eve_areas() {
    return {{60.0, 70.0, 8.0, 18.0},
            {75.0, 85.0, 8.0, 18.0},
            {85.0, 95.0, 8.0, 18.0},
            {95.0, 105.0, 8.0, 18.0}};
}

void RunConfig::validate() const {
    params.validate();
    if (n_seeds < 1) config_fail("n_seeds must be >= 1");
    if (axis != SweepAxis::none && sweep_values.empty())
        config_fail("sweep values must be nonempty when an axis is set");
    if (schemes.empty()) config_fail("schemes must be nonempty");
    if (!(grid_step > 0.0)) config_fail("grid_step must be > 0");
    if (quantile_samples < 1) config_fail("quantile_samples must be >= 1");
    for (const Rect& r : eve_areas) {
        try {
            r.validate();
        } catch (const std::invalid_argument&) {
            config_fail("eve_areas entries need x_min <= x_max, y_min <= y_max");
        }
    }
    // Discrete axes: reject malformed values at load time rather than as 20
    // identical per-cell failures later.
    if (axis == SweepAxis::n_irs)
        for (double v : sweep_values)
            if (integral_value(v, "n_irs") < 1) config_fail("n_irs sweep values must be >= 1");
    if (axis == SweepAxis::eve_area_index)
        for (double v : sweep_values) {
            const int idx = integral_value(v, "eve_area_index");
            if (idx < 0 || idx >= static_cast<int>(eve_areas.size()))
                config_fail("eve_area_index sweep value " + std::to_string(idx) +
                            " outside eve_areas (size " +
                            std::to_string(eve_areas.size()) + ")");
        }
    if (axis == SweepAxis::rician_k)
        for (double v : sweep_values)
            if (!(v > 0.0)) config_fail("rician_k sweep values must be > 0");
}

RunConfig parse_config(const json& j) {
    if (!j.is_object()) config_fail("top level must be an object");
    static const std::set<std::string> known = {
        "n_tx", "n_irs", "rician_k", "rho_ai", "rho_iu", "power_dbm",
        "noise_dbm", "p_out", "carrier_hz", "element_spacing_fraction", "bob",
        "eve", "irs_region", "eve_region", "n_seeds", "base_seed", "sweep",
        "schemes", "output_path", "quantile_method", "quantile_samples",
        "grid_step", "eve_areas", "record_wall_time"};
    for (const auto& item : j.items())
        if (!known.contains(item.key())) config_fail("unknown key '" + item.key() + "'");

    RunConfig cfg;
    SystemParams& p = cfg.params;
    if (j.contains("n_tx")) p.n_tx = static_cast<int>(as_integer(j["n_tx"], "n_tx"));
    if (j.contains("n_irs")) p.n_irs = static_cast<int>(as_integer(j["n_irs"], "n_irs"));
    if (j.contains("rician_k")) p.rician_k = as_number(j["rician_k"], "rician_k");
    if (j.contains("rho_ai")) p.rho_ai = as_number(j["rho_ai"], "rho_ai");
    if (j.contains("rho_iu")) p.rho_iu = as_number(j["rho_iu"], "rho_iu");
    if (j.contains("power_dbm"))
        p.tx_power = dbm_to_watt(as_number(j["power_dbm"], "power_dbm"));
    if (j.contains("noise_dbm"))
        p.noise_power = dbm_to_watt(as_number(j["noise_dbm"], "noise_dbm"));
    if (j.contains("p_out")) p.p_out = as_number(j["p_out"], "p_out");
    if (j.contains("carrier_hz")) p.carrier_hz = as_number(j["carrier_hz"], "carrier_hz");
    if (j.contains("element_spacing_fraction"))
        p.element_spacing_fraction =
            as_number(j["element_spacing_fraction"], "element_spacing_fraction");
    if (j.contains("bob")) p.bob = as_vec2(j["bob"], "bob");
    if (j.contains("eve")) p.eve = as_vec2(j["eve"], "eve");
    if (j.contains("irs_region")) p.irs_region = as_rect(j["irs_region"], "irs_region");
    if (j.contains("eve_region") && !j["eve_region"].is_null())
        p.eve_region = as_rect(j["eve_region"], "eve_region");

    if (j.contains("n_seeds"))
        cfg.n_seeds = static_cast<int>(as_integer(j["n_seeds"], "n_seeds"));
    if (j.contains("base_seed")) {
        if (!j["base_seed"].is_number_unsigned() && !j["base_seed"].is_number_integer())
            config_fail("base_seed must be an unsigned integer");
        cfg.base_seed = j["base_seed"].get<std::uint64_t>();
    }
    if (j.contains("sweep")) {
        const json& s = j["sweep"];
        if (!s.is_object()) config_fail("sweep must be an object {axis, values}");
        for (const auto& item : s.items())
            if (item.key() != "axis" && item.key() != "values")
                config_fail("unknown key 'sweep." + item.key() + "'");
        if (s.contains("axis")) {
            if (!s["axis"].is_string()) config_fail("sweep.axis must be a string");
            const auto axis = axis_from_string(s["axis"].get<std::string>());
            if (!axis) config_fail("unknown sweep.axis '" + s["axis"].get<std::string>() + "'");
            cfg.axis = *axis;
        }
        if (s.contains("values")) {
            if (!s["values"].is_array()) config_fail("sweep.values must be an array");
            cfg.sweep_values.clear();
            for (const json& v : s["values"])
                cfg.sweep_values.push_back(as_number(v, "sweep.values"));
        }
    }
    if (j.contains("schemes")) {
        if (!j["schemes"].is_array()) config_fail("schemes must be an array of tags");
        cfg.schemes.clear();
        for (const json& v : j["schemes"]) {
            if (!v.is_string()) config_fail("schemes entries must be strings");
            const auto s = pipeline::scheme_from_string(v.get<std::string>());
            if (!s) config_fail("unknown scheme '" + v.get<std::string>() + "'");
            cfg.schemes.push_back(*s);
        }
    }
    if (j.contains("output_path")) {
        if (!j["output_path"].is_string()) config_fail("output_path must be a string");
        cfg.output_path = j["output_path"].get<std::string>();
    }
    if (j.contains("quantile_method")) {
        if (!j["quantile_method"].is_string())
            config_fail("quantile_method must be 'analytic' or 'mc'");
        const std::string m = j["quantile_method"].get<std::string>();
        if (m == "analytic") cfg.quantile_method = outage::QuantileMethod::analytic;
        else if (m == "mc") cfg.quantile_method = outage::QuantileMethod::monte_carlo;
        else config_fail("quantile_method must be 'analytic' or 'mc'");
    }
    if (j.contains("quantile_samples"))
        cfg.quantile_samples = as_integer(j["quantile_samples"], "quantile_samples");
    if (j.contains("grid_step")) cfg.grid_step = as_number(j["grid_step"], "grid_step");
    if (j.contains("eve_areas")) {
        if (!j["eve_areas"].is_array()) config_fail("eve_areas must be an array of rects");
        cfg.eve_areas.clear();
        for (const json& v : j["eve_areas"]) cfg.eve_areas.push_back(as_rect(v, "eve_areas"));
    }
    if (j.contains("record_wall_time")) {
        if (!j["record_wall_time"].is_boolean())
            config_fail("record_wall_time must be a boolean");
        cfg.record_wall_time = j["record_wall_time"].get<bool>();
    }

    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        config_fail("parse error in '" + path + "': " + e.what());
    }
    return parse_config(j);
}

nlohmann::json resolved_config(const RunConfig& cfg) {
    const SystemParams& p = cfg.params;
    json j;
    j["n_tx"] = p.n_tx;
    j["n_irs"] = p.n_irs;
    j["rician_k"] = p.rician_k;
    j["rho_ai"] = p.rho_ai;
    j["rho_iu"] = p.rho_iu;
    j["power_dbm"] = watt_to_dbm(p.tx_power);
    j["noise_dbm"] = watt_to_dbm(p.noise_power);
    j["p_out"] = p.p_out;
    j["carrier_hz"] = p.carrier_hz;
    j["element_spacing_fraction"] = p.element_spacing_fraction;
    j["bob"] = json::array({p.bob.x, p.bob.y});
    j["eve"] = json::array({p.eve.x, p.eve.y});
    j["irs_region"] = rect_to_json(p.irs_region);
    j["eve_region"] = p.eve_region ? rect_to_json(*p.eve_region) : json();
    j["n_seeds"] = cfg.n_seeds;
    j["base_seed"] = cfg.base_seed;
    j["sweep"] = {{"axis", to_string(cfg.axis)}, {"values", cfg.sweep_values}};
    json schemes = json::array();
    for (pipeline::Scheme s : cfg.schemes) schemes.push_back(pipeline::to_string(s));
    j["schemes"] = schemes;
    j["output_path"] = cfg.output_path;
    j["quantile_method"] =
        cfg.quantile_method == outage::QuantileMethod::analytic ? "analytic" : "mc";
    j["quantile_samples"] = cfg.quantile_samples;
    j["grid_step"] = cfg.grid_step;
    json areas = json::array();
    for (const Rect& r : cfg.eve_areas) areas.push_back(rect_to_json(r));
    j["eve_areas"] = areas;
    j["record_wall_time"] = cfg.record_wall_time;
    return j;
}

SystemParams apply_axis(const RunConfig& cfg, double value) {
    SystemParams p = cfg.params;
    switch (cfg.axis) {
        case SweepAxis::none:
            break;
        case SweepAxis::power_dbm:
            p.tx_power = dbm_to_watt(value);
            break;
        case SweepAxis::n_irs:
            p.n_irs = integral_value(value, "n_irs");
            break;
        case SweepAxis::rician_k:
            p.rician_k = value;
            break;
        case SweepAxis::eve_area_index: {
            const int idx = integral_value(value, "eve_area_index");
            if (idx < 0 || idx >= static_cast<int>(cfg.eve_areas.size()))
                config_fail("eve_area_index out of range");
            p.eve_region = cfg.eve_areas[static_cast<std::size_t>(idx)];
            break;
        }
    }
    return p;
}

std::vector<RunRow> run_sweep(const RunConfig& cfg) {
    cfg.validate();
    const std::vector<double> values =
        cfg.axis == SweepAxis::none ? std::vector<double>{0.0} : cfg.sweep_values;
    const std::int64_t n_schemes = static_cast<std::int64_t>(cfg.schemes.size());
    const std::int64_t n_seeds = cfg.n_seeds;
    const std::int64_t n_cells =
        static_cast<std::int64_t>(values.size()) * n_schemes * n_seeds;

    std::vector<RunRow> rows(static_cast<std::size_t>(n_cells));
    // Each cell is self-contained and lands in its pre-assigned slot, so the
    // table is identical no matter how the pool interleaves completions.
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t idx = 0; idx < n_cells; ++idx) {
        const std::int64_t vi = idx / (n_schemes * n_seeds);
        const std::int64_t si = (idx / n_seeds) % n_schemes;
        const std::int64_t ki = idx % n_seeds;
        RunRow& row = rows[static_cast<std::size_t>(idx)];
        row.sweep_value = values[static_cast<std::size_t>(vi)];
        row.scheme = cfg.schemes[static_cast<std::size_t>(si)];
        row.seed = cfg.base_seed + static_cast<std::uint64_t>(ki);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const SystemParams cell = apply_axis(cfg, row.sweep_value);
            const pipeline::ScenarioResult res =
                pipeline::run_benchmark(cell, row.scheme, row.seed, cfg.grid_step);
            row.rate_bits = res.stage2.rate;
            row.omega_i_x = res.placement.omega_i.x;
            row.omega_i_y = res.placement.omega_i.y;
            const Vec2 design_eve =
                res.placement.worst_eve ? *res.placement.worst_eve : cell.eve;
            row.eve_x = design_eve.x;
            row.eve_y = design_eve.y;
            row.outage_hat = res.empirical_outage.p_hat;
            row.iters = static_cast<int>(res.stage2.trace.size());
        } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
            row.rate_bits = kNan;
            row.omega_i_x = row.omega_i_y = kNan;
            row.eve_x = row.eve_y = kNan;
            row.outage_hat = kNan;
            row.iters = 0;
        }
        const auto t1 = std::chrono::steady_clock::now();
        row.wall_ms =
            cfg.record_wall_time
                ? std::chrono::duration<double, std::milli>(t1 - t0).count()
                : 0.0;
    }
    return rows;
}

std::vector<SummaryLine> summarize(const std::vector<RunRow>& rows) {
    std::vector<SummaryLine> out;
    for (const RunRow& row : rows) {
        SummaryLine* line = nullptr;
        for (SummaryLine& s : out)
            if (s.sweep_value == row.sweep_value && s.scheme == row.scheme) line = &s;
        if (!line) {
            out.push_back({row.sweep_value, row.scheme, 0, 0, 0.0, 0.0});
            line = &out.back();
        }
        if (row.failed) {
            line->n_failed += 1;
        } else {
            // Streaming mean; squared deviations accumulate in std_err until
            // the finalize pass below.
            line->n_ok += 1;
            const double d = row.rate_bits - line->mean_rate;
            line->mean_rate += d / line->n_ok;
            line->std_err += d * (row.rate_bits - line->mean_rate);
        }
    }
    for (SummaryLine& s : out) {
        if (s.n_ok >= 2)
            s.std_err = std::sqrt(s.std_err / (s.n_ok - 1) / s.n_ok);
        else
            s.std_err = 0.0;
        if (s.n_ok == 0) s.mean_rate = kNan;
    }
    return out;
}

void emit_csv(const std::vector<RunRow>& rows, std::ostream& os) {
    std::string buf{kCsvHeader};
    buf.push_back('\n');
    for (const RunRow& row : rows) {
        append_double(buf, row.sweep_value);
        buf.push_back(',');
        buf += pipeline::to_string(row.scheme);
        buf.push_back(',');
        buf += std::to_string(row.seed);
        buf.push_back(',');
        append_double(buf, row.rate_bits);
        buf.push_back(',');
        append_double(buf, row.omega_i_x);
        buf.push_back(',');
        append_double(buf, row.omega_i_y);
        buf.push_back(',');
        append_double(buf, row.eve_x);
        buf.push_back(',');
        append_double(buf, row.eve_y);
        buf.push_back(',');
        append_double(buf, row.outage_hat);
        buf.push_back(',');
        buf += std::to_string(row.iters);
        buf.push_back(',');
        append_double(buf, row.wall_ms);
        buf.push_back('\n');
    }
    os << buf;
    if (!os) throw std::runtime_error("csv: write failed");
}

void emit_csv(const std::vector<RunRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("csv: cannot open '" + path + "' for writing");
    emit_csv(rows, out);
    out.flush();
    if (!out) throw std::runtime_error("csv: write to '" + path + "' failed");
}

std::vector<RunRow> parse_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("csv: empty input");
    if (line == std::string(kCsvHeader) + "\r") line.pop_back();
    if (line != kCsvHeader) throw std::runtime_error("csv: unexpected header '" + line + "'");
    std::vector<RunRow> rows;
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string_view> fields;
        std::string_view rest = line;
        while (true) {
            const std::size_t comma = rest.find(',');
            fields.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        if (fields.size() != 11)
            throw std::runtime_error("csv line " + std::to_string(line_no) +
                                     ": expected 11 fields, got " +
                                     std::to_string(fields.size()));
        RunRow row;
        row.sweep_value = parse_double_field(fields[0], line_no);
        const auto scheme = pipeline::scheme_from_string(fields[1]);
        if (!scheme)
            throw std::runtime_error("csv line " + std::to_string(line_no) +
                                     ": unknown scheme '" + std::string(fields[1]) + "'");
        row.scheme = *scheme;
        {
            std::uint64_t seed = 0;
            const auto res = std::from_chars(fields[2].data(),
                                             fields[2].data() + fields[2].size(), seed);
            if (res.ec != std::errc{} || res.ptr != fields[2].data() + fields[2].size())
                throw std::runtime_error("csv line " + std::to_string(line_no) +
                                         ": bad seed field");
            row.seed = seed;
        }
        row.rate_bits = parse_double_field(fields[3], line_no);
        row.omega_i_x = parse_double_field(fields[4], line_no);
        row.omega_i_y = parse_double_field(fields[5], line_no);
        row.eve_x = parse_double_field(fields[6], line_no);
        row.eve_y = parse_double_field(fields[7], line_no);
        row.outage_hat = parse_double_field(fields[8], line_no);
        row.iters = static_cast<int>(parse_double_field(fields[9], line_no));
        row.wall_ms = parse_double_field(fields[10], line_no);
        row.failed = std::isnan(row.rate_bits);
        rows.push_back(row);
    }
    return rows;
}

} // namespace irsloc::bench
