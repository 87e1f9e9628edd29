// SPDX-License-Identifier: Apache-2.0
//
// irsloc — joint reflecting-surface deployment, transmit beamforming and
// reflect-phase design for outage-constrained physical-layer secrecy.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef IRSLOC_BENCH_HPP
#define IRSLOC_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "irsloc/outage.hpp"
#include "irsloc/params.hpp"
#include "irsloc/pipeline.hpp"

namespace irsloc::bench {

// dBm <-> watt conversions live at the harness boundary only; everything
// below the config parser works in SI units.
double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

// Quantity varied across sweep cells. `eve_area_index` indexes into
// RunConfig::eve_areas and switches the run to the suspicious-area pipeline.
enum class SweepAxis : std::uint8_t {
    none,
    power_dbm,
    n_irs,
    rician_k,
    eve_area_index,
};

const char* to_string(SweepAxis axis);
std::optional<SweepAxis> axis_from_string(std::string_view tag);

// Suspicious areas addressed by the eve_area_index axis when the config does
// not supply its own list: four same-size boxes stepping toward the
// legitimate user.
std::vector<Rect> default_eve_areas();

// Harness configuration: the physical scenario plus batch controls. Default
// construction reproduces the reference scenario end to end.
struct RunConfig {
    SystemParams params;        // SI units
    int n_seeds = 20;           // seeds per (value, scheme) cell
    std::uint64_t base_seed = 1;
    SweepAxis axis = SweepAxis::none;
    std::vector<double> sweep_values;  // nonempty when axis != none
    std::vector<pipeline::Scheme> schemes{pipeline::Scheme::proposed};
    std::string output_path;    // CSV destination; empty = stdout summary only
    outage::QuantileMethod quantile_method = outage::QuantileMethod::analytic;
    std::int64_t quantile_samples = 1000000;  // monte-carlo quantile draws
    double grid_step = 0.5;     // meters, exhaustive/worst-case searches
    std::vector<Rect> eve_areas = default_eve_areas();
    bool record_wall_time = false;  // wall_ms column reads 0 when off

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// Strict parse: unknown keys are errors, omitted keys keep the defaults
// above (an empty object is a valid config). Powers enter in dBm.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// Full resolved configuration in the same schema parse_config accepts;
// printed by the CLI before every run as the audit trail.
nlohmann::json resolved_config(const RunConfig& cfg);

// Copy of cfg.params with one sweep value applied along cfg.axis.
SystemParams apply_axis(const RunConfig& cfg, double value);

// One benchmark cell: a (sweep value, scheme, seed) triple and its outcome.
// `eve_x/eve_y` hold the eavesdropper position the design targeted (the
// worst-case point for suspicious-area runs). On a failed cell the numeric
// results are NaN and `error` carries the reason (stderr only, not CSV).
struct RunRow {
    double sweep_value = 0.0;
    pipeline::Scheme scheme = pipeline::Scheme::proposed;
    std::uint64_t seed = 0;
    double rate_bits = 0.0;
    double omega_i_x = 0.0;
    double omega_i_y = 0.0;
    double eve_x = 0.0;
    double eve_y = 0.0;
    double outage_hat = 0.0;
    int iters = 0;
    double wall_ms = 0.0;
    bool failed = false;
    std::string error;
};

// Runs every (value, scheme, seed) cell. Cells are dispatched to a worker
// pool but land in a pre-assigned slot, so row order is value-major,
// scheme-, then seed-minor regardless of completion order. Per-cell
// failures are recorded in the row and the sweep continues. With
// axis == none a single pseudo-value 0 is used.
std::vector<RunRow> run_sweep(const RunConfig& cfg);

// Per-(value, scheme) mean achieved rate and its standard error over the
// non-failed rows, in first-appearance order.
struct SummaryLine {
    double sweep_value = 0.0;
    pipeline::Scheme scheme = pipeline::Scheme::proposed;
    int n_ok = 0;
    int n_failed = 0;
    double mean_rate = 0.0;
    double std_err = 0.0;
};

std::vector<SummaryLine> summarize(const std::vector<RunRow>& rows);

inline constexpr const char* kCsvHeader =
    "sweep_value,scheme,seed,rate_bits,omega_i_x,omega_i_y,eve_x,eve_y,"
    "outage_hat,iters,wall_ms";

// Deterministic CSV: fixed column order, shortest round-trippable numeric
// formatting, one row per record; an empty result set yields a header-only
// file. The path overload throws std::runtime_error on I/O failure.
void emit_csv(const std::vector<RunRow>& rows, std::ostream& os);
void emit_csv(const std::vector<RunRow>& rows, const std::string& path);

// Inverse of emit_csv for the artifact round-trip checks; `error` fields
// come back empty since they are not serialized.
std::vector<RunRow> parse_csv(std::istream& is);

} // namespace irsloc::bench

#endif // IRSLOC_BENCH_HPP
