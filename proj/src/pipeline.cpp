// SPDX-License-Identifier: Apache-2.0
//
// irsloc — joint reflecting-surface deployment, transmit beamforming and
// reflect-phase design for outage-constrained physical-layer secrecy.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "irsloc/pipeline.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "irsloc/channel.hpp"
#include "irsloc/rng.hpp"

namespace irsloc::pipeline {

namespace {

using channel::Cmat;
using channel::Cvec;

constexpr int kMaxRounds = 30;
constexpr double kRateTol = 1e-3; // bits/s/Hz per alternation round

// Seed lanes, so that the site draw, the per-round phase recovery and the
// outage verification consume independent substreams of the scenario seed.
constexpr std::uint64_t kLaneSite = 11;
constexpr std::uint64_t kLaneOutage = 13;
constexpr std::uint64_t kLaneRecovery = 100; // + round index

// Alternating certified design at a fixed surface location. Starts from
// user-co-phasing reflect coefficients and an all-zero beamformer, so the
// certified rate starts at zero and every adopted step keeps or improves it
// (the trace is non-decreasing by construction). `random_only` swaps the
// sequential rank-one refinement for pure Gaussian randomization.
secrecy::StageTwoSolution alternate(const SystemParams& p,
                                    const channel::ChannelSample& sample,
                                    const channel::EveStatModel& eve,
                                    Vec2 omega_i, std::uint64_t seed,
                                    bool random_only) {
    const Cmat g_ab = channel::cascade(sample.h_ib, sample.h_ai);
    const double sg = p.noise_power;
    const double r_hi =
        secrecy::rate_upper_bound(g_ab, p.tx_power, p.n_irs, sg);

    secrecy::StageTwoSolution out;
    Cvec phi = channel::mrt_phases(p, omega_i, p.bob);
    Cvec f = Cvec::Zero(p.n_tx);
    double rate = 0.0;

    for (int round = 0; round < kMaxRounds; ++round) {
        const double entry = rate;

        // Beamformer step at fixed phases: certified-rate bisection over the
        // power-minimization program, then rank-one projection. The previous
        // beamformer is kept whenever the projected candidate certifies a
        // lower rate, so the step can never lose ground.
        const Cmat q_fixed = phi * phi.adjoint();
        const auto bf = secrecy::bisect_beamformer(q_fixed, eve, g_ab,
                                                   p.tx_power, sg, p.p_out,
                                                   rate, r_hi);
        if (!bf.lo_infeasible) {
            try {
                const Cvec f_cand = secrecy::rank_one_extract_f(
                    bf.f_cov, Cvec(g_ab.adjoint() * phi));
                const double r_cand = secrecy::certified_rate(
                    Cmat(f_cand * f_cand.adjoint()), q_fixed, eve, g_ab, sg,
                    p.p_out);
                if (r_cand >= rate) {
                    f = f_cand;
                    rate = r_cand;
                    out.f_mat_rank_gap = bf.rank_gap;
                }
            } catch (const DegenerateGeometryError&) {
                // Vanishing effective user channel: keep the previous
                // beamformer.
            }
        }

        // Phase step at the fixed beamformer; pointless until some power has
        // been allocated (an all-zero beamformer pins every rate to zero).
        if (f.squaredNorm() > 0.0) {
            const Cmat f_fixed = f * f.adjoint();
            const auto ph = secrecy::bisect_phase(f_fixed, eve, g_ab, sg,
                                                  p.p_out, rate, r_hi);
            if (!ph.lo_infeasible) {
                const std::uint64_t rec_seed =
                    rng::substream(seed, kLaneRecovery + round);
                const auto rec =
                    random_only
                        ? secrecy::gaussian_randomization(ph.q_cov, f_fixed,
                                                          eve, g_ab, ph.rate,
                                                          sg, p.p_out, rec_seed)
                        : secrecy::srocr_rank_one(ph.q_cov, f_fixed, eve, g_ab,
                                                  ph.rate, sg, p.p_out,
                                                  rec_seed);
                if (rec.rate >= rate) {
                    phi = rec.phi;
                    rate = rec.rate;
                    out.q_mat_rank_gap = ph.rank_gap;
                    out.phase_degraded = rec.degraded;
                }
            }
        }

        out.trace.push_back(rate);
        if (rate - entry <= kRateTol) break;
    }

    out.f_vec = std::move(f);
    out.phi_vec = std::move(phi);
    out.rate = rate;
    return out;
}

// Stage two plus the independent outage check, at a decided location and
// eavesdropper design point.
ScenarioResult finish(const SystemParams& p, placement::PlacementResult pl,
                      Vec2 eve_pos, Scheme tag, std::uint64_t seed,
                      bool random_only) {
    ScenarioResult res;
    res.scheme_tag = tag;
    res.seed = seed;
    const auto sample = channel::sample_channels(p, pl.omega_i, seed);
    const auto eve = channel::eve_stat_model(p, pl.omega_i, eve_pos, sample.h_ai);
    res.stage2 = alternate(p, sample, eve, pl.omega_i, seed, random_only);
    res.empirical_outage = outage::empirical_secrecy_outage(
        p, pl.omega_i, sample, eve, res.stage2.f_vec, res.stage2.phi_vec,
        res.stage2.rate, 10000, rng::substream(seed, kLaneOutage));
    res.placement = std::move(pl);
    return res;
}

} // namespace

const char* to_string(Scheme scheme) {
    switch (scheme) {
    case Scheme::proposed: return "proposed";
    case Scheme::random_location: return "random_location";
    case Scheme::global_search: return "global_search";
    case Scheme::mrt: return "mrt";
    case Scheme::gaussian_random: return "gaussian_random";
    }
    return "unknown";
}

std::optional<Scheme> scheme_from_string(std::string_view name) {
    if (name == "proposed") return Scheme::proposed;
    if (name == "random_location") return Scheme::random_location;
    if (name == "global_search") return Scheme::global_search;
    if (name == "mrt") return Scheme::mrt;
    if (name == "gaussian_random") return Scheme::gaussian_random;
    return std::nullopt;
}

ScenarioResult two_stage_known_eve(const SystemParams& p, std::uint64_t seed) {
    p.validate();
    const auto q = outage::quantiles(p);
    auto pl = placement::sca_location_multistart(p, q, p.eve);
    return finish(p, std::move(pl), p.eve, Scheme::proposed, seed, false);
}

ScenarioResult two_stage_suspicious_area(const SystemParams& p,
                                         std::uint64_t seed,
                                         double grid_step) {
    p.validate();
    if (!p.eve_region) {
        throw std::invalid_argument(
            "two_stage_suspicious_area: eve_region is not set");
    }
    const Rect region = *p.eve_region;
    if (region.is_point()) {
        // Degenerate area: identical to knowing the location outright.
        SystemParams pt = p;
        pt.eve = Vec2{region.x_min, region.y_min};
        pt.eve_region.reset();
        ScenarioResult res = two_stage_known_eve(pt, seed);
        res.placement.worst_eve = pt.eve;
        return res;
    }
    const auto q = outage::quantiles(p);
    auto pl = placement::maxmin_location(p, q, grid_step, region);
    const Vec2 worst = pl.worst_eve.value();
    return finish(p, std::move(pl), worst, Scheme::proposed, seed, false);
}

ScenarioResult run_benchmark(const SystemParams& p, Scheme scheme,
                             std::uint64_t seed, double grid_step) {
    p.validate();
    switch (scheme) {
    case Scheme::proposed:
        return p.eve_region ? two_stage_suspicious_area(p, seed, grid_step)
                            : two_stage_known_eve(p, seed);

    case Scheme::gaussian_random: {
        const auto q = outage::quantiles(p);
        auto pl = placement::sca_location_multistart(p, q, p.eve);
        return finish(p, std::move(pl), p.eve, Scheme::gaussian_random, seed,
                      true);
    }

    case Scheme::global_search: {
        const auto q = outage::quantiles(p);
        auto pl = placement::global_search_location(p, q, grid_step, p.eve);
        return finish(p, std::move(pl), p.eve, Scheme::global_search, seed,
                      false);
    }

    case Scheme::random_location: {
        const auto q = outage::quantiles(p);
        rng::Stream st(rng::substream(seed, kLaneSite));
        const Rect& box = p.irs_region;
        Vec2 site{box.x_min, box.y_min};
        // Redraw (up to a bound) while the site sits on top of a terminal,
        // where the deployment objective and the channel are undefined.
        for (int attempt = 0; attempt < 128; ++attempt) {
            site = Vec2{box.x_min + st.next_double() * (box.x_max - box.x_min),
                        box.y_min + st.next_double() * (box.y_max - box.y_min)};
            if (distance(site, p.eve) >= 0.5 && distance(site, p.bob) >= 0.5)
                break;
        }
        placement::PlacementResult pl;
        pl.omega_i = site;
        pl.objective = placement::ratio_objective(p, site, p.eve, q);
        pl.iterations = 0;
        pl.converged = true;
        return finish(p, std::move(pl), p.eve, Scheme::random_location, seed,
                      false);
    }

    case Scheme::mrt: {
        const auto q = outage::quantiles(p);
        auto pl = placement::sca_location_multistart(p, q, p.eve);

        ScenarioResult res;
        res.scheme_tag = Scheme::mrt;
        res.seed = seed;
        const auto sample = channel::sample_channels(p, pl.omega_i, seed);
        const auto eve =
            channel::eve_stat_model(p, pl.omega_i, p.eve, sample.h_ai);
        const Cmat g_ab = channel::cascade(sample.h_ib, sample.h_ai);

        // Closed-form full-power maximum-ratio design toward the user; the
        // certificate is evaluated but nothing is optimized against the
        // eavesdropper.
        secrecy::StageTwoSolution s2;
        s2.f_vec = channel::mrt_beamformer(p, pl.omega_i);
        s2.phi_vec = channel::mrt_phases(p, pl.omega_i, p.bob);
        s2.rate = std::max(
            0.0, secrecy::certified_rate(Cmat(s2.f_vec * s2.f_vec.adjoint()),
                                         Cmat(s2.phi_vec * s2.phi_vec.adjoint()),
                                         eve, g_ab, p.noise_power, p.p_out));
        s2.trace = {s2.rate};
        res.stage2 = std::move(s2);
        res.empirical_outage = outage::empirical_secrecy_outage(
            p, pl.omega_i, sample, eve, res.stage2.f_vec, res.stage2.phi_vec,
            res.stage2.rate, 10000, rng::substream(seed, kLaneOutage));
        res.placement = std::move(pl);
        return res;
    }
    }
    throw std::invalid_argument("run_benchmark: unknown scheme");
}

} // namespace irsloc::pipeline
