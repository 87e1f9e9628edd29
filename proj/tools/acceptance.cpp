// SPDX-License-Identifier: Apache-2.0
//
// irsloc — joint reflecting-surface deployment, transmit beamforming and
// reflect-phase design for outage-constrained physical-layer secrecy.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <Eigen/Dense>

#include "irsloc/channel.hpp"
#include "irsloc/outage.hpp"
#include "irsloc/params.hpp"
#include "irsloc/pipeline.hpp"
#include "irsloc/placement.hpp"
#include "irsloc/rng.hpp"
#include "irsloc/secrecy_sdp.hpp"

namespace irsloc::accept {

namespace {

using channel::Cmat;
using channel::Cvec;
using std::complex;

constexpr std::uint64_t kSuiteSeed = 0x5EC0FFEEu;
constexpr int kSeedsPerCell = 20;

std::string strf(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
std::string strf(const char* fmt, ...) {
    char buf[512];
    std::va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return buf;
}

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& v) {
    MeanSe r;
    if (v.empty()) return r;
    for (double x : v) r.mean += x;
    r.mean /= static_cast<double>(v.size());
    if (v.size() < 2) return r;
    double ss = 0.0;
    for (double x : v) ss += (x - r.mean) * (x - r.mean);
    r.se = std::sqrt(ss / (static_cast<double>(v.size()) - 1.0) /
                     static_cast<double>(v.size()));
    return r;
}

Cmat random_cmat(int rows, int cols, rng::Stream& st) {
    Cmat m(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) m(r, c) = st.next_cnormal();
    return m;
}

Cmat random_psd(int n, rng::Stream& st, double trace_target) {
    const Cmat x = random_cmat(n, n, st);
    Cmat f = x * x.adjoint();
    f *= trace_target / f.trace().real();
    return f;
}

Cvec random_unit_modulus(int n, rng::Stream& st) {
    Cvec v(n);
    for (int i = 0; i < n; ++i) {
        const double th = 2.0 * std::numbers::pi * st.next_double();
        v[i] = complex<double>(std::cos(th), std::sin(th));
    }
    return v;
}

Cvec random_direction(int n, double norm_sq, rng::Stream& st) {
    Cvec g(n);
    for (int i = 0; i < n; ++i) g[i] = st.next_cnormal();
    return std::sqrt(norm_sq) / g.norm() * g;
}

// Proposal-scheme runs cached across checks that share a scenario set.
struct SuiteContext {
    std::vector<pipeline::ScenarioResult> reference_runs;  // default scenario
    std::map<int, std::vector<pipeline::ScenarioResult>> runs_by_m;
};

std::vector<pipeline::ScenarioResult> run_proposed(const SystemParams& p, int n_seeds) {
    std::vector<pipeline::ScenarioResult> out(static_cast<std::size_t>(n_seeds));
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < n_seeds; ++k)
        out[static_cast<std::size_t>(k)] =
            pipeline::two_stage_known_eve(p, static_cast<std::uint64_t>(k + 1));
    return out;
}

std::vector<double> rates_of(const std::vector<pipeline::ScenarioResult>& runs) {
    std::vector<double> r;
    r.reserve(runs.size());
    for (const auto& s : runs) r.push_back(s.stage2.rate);
    return r;
}

// --- check 1: closed-form gamma quantiles against empirical quantiles ------

CriterionResult c01_quantiles() {
    CriterionResult r{1, "quantile closed forms vs monte-carlo", false, "", 0.0};
    rng::Stream st(rng::substream(kSuiteSeed, 1));
    constexpr double kTol = 5e-3;
    const std::int64_t n_draws = 1000000;
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        SystemParams p;
        p.rician_k = 1.0 + 9.0 * st.next_double();
        p.n_irs = 2 + static_cast<int>(10.0 * st.next_double());
        p.n_tx = 2 + static_cast<int>(6.0 * st.next_double());
        p.tx_power = 0.1 + 3.9 * st.next_double();
        p.p_out = 0.01 + 0.19 * st.next_double();
        const outage::GammaScale gs = outage::gamma_scale(p);
        const outage::QuantilePair an =
            outage::quantiles(gs, p.p_out, outage::QuantileMethod::analytic);
        const outage::QuantilePair mc = outage::quantiles(
            gs, p.p_out, outage::QuantileMethod::monte_carlo, n_draws,
            rng::substream(kSuiteSeed, 100 + static_cast<std::uint64_t>(i)));
        worst = std::max(worst, std::abs(an.alpha_e - mc.alpha_e) / an.alpha_e);
        worst = std::max(worst, std::abs(an.alpha_b - mc.alpha_b) / an.alpha_b);
    }
    r.passed = worst <= kTol;
    r.detail = strf("10 random parameter tuples, 1e6 draws: max rel dev %.2e (tol %.1e)",
                    worst, kTol);
    return r;
}

// --- check 2: cascade perturbation first/second moments ---------------------

CriterionResult c02_distributions() {
    CriterionResult r{2, "cascade perturbation distribution suite", false, "", 0.0};
    SystemParams p;
    const Vec2 wi{100.0, 20.0};
    const double k = p.rician_k;
    const double l0 = p.reference_gain();
    const double l_ai = channel::path_gain(wi.norm(), p.rho_ai, l0);
    const double l_ib = channel::path_gain(distance(wi, p.bob), p.rho_iu, l0);
    const double l_ie = channel::path_gain(distance(wi, p.eve), p.rho_iu, l0);
    const double kp1 = (k + 1.0) * (k + 1.0);
    const double var_b = 2.0 * k * l_ai * l_ib / kp1;
    const double var_e = 2.0 * k * l_ai * l_ie / kp1;
    const int m = p.n_irs, n = p.n_tx;
    const int n_draws = 100000;

    // First/second moments of the constructed channel perturbation
    // diag(NLoS surface->user) LoS(ap->surface) + diag(LoS) NLoS, sampled
    // from physical channel components.
    Cmat mean_b = Cmat::Zero(m, n), mean_e = Cmat::Zero(m, n);
    Eigen::ArrayXXd pow_b = Eigen::ArrayXXd::Zero(m, n), pow_e = pow_b;
    for (int i = 0; i < n_draws; ++i) {
        const channel::ChannelSample cs = channel::sample_channels(
            p, wi, rng::substream(kSuiteSeed, 1000 + static_cast<std::uint64_t>(i)));
        const Cmat gt_b = cs.h_ib_nlos.asDiagonal() * cs.h_ai_los +
                          cs.h_ib_los.asDiagonal() * cs.h_ai_nlos;
        const Cmat gt_e = cs.h_ie_nlos.asDiagonal() * cs.h_ai_los +
                          cs.h_ie_los.asDiagonal() * cs.h_ai_nlos;
        mean_b += gt_b;
        mean_e += gt_e;
        pow_b += gt_b.array().abs2();
        pow_e += gt_e.array().abs2();
    }
    mean_b /= n_draws;
    mean_e /= n_draws;
    double worst_var = 0.0, worst_mean = 0.0;
    for (int c = 0; c < n; ++c)
        for (int rr = 0; rr < m; ++rr) {
            const double vb = pow_b(rr, c) / n_draws - std::norm(mean_b(rr, c));
            const double ve = pow_e(rr, c) / n_draws - std::norm(mean_e(rr, c));
            worst_var = std::max(worst_var, std::abs(vb - var_b) / var_b);
            worst_var = std::max(worst_var, std::abs(ve - var_e) / var_e);
            // mean modulus in units of its own standard error
            worst_mean = std::max(worst_mean,
                                  std::abs(mean_b(rr, c)) / std::sqrt(vb / n_draws));
            worst_mean = std::max(worst_mean,
                                  std::abs(mean_e(rr, c)) / std::sqrt(ve / n_draws));
        }

    // Bilinear form phi^H G~ f under the entrywise law the per-entry moments
    // establish: variance M P x entry variance, for any unit-modulus phi and
    // any f on the power sphere. The scale-free factor var(phi^H W f) with W
    // iid standard complex normal is measured once and checked against M P;
    // the per-link targets follow by the delta^2 scalings reported below.
    rng::Stream pair_st(rng::substream(kSuiteSeed, 2));
    constexpr int kPairs = 10;
    std::vector<Cvec> phis, fs;
    for (int t = 0; t < kPairs; ++t) {
        phis.push_back(random_unit_modulus(m, pair_st));
        fs.push_back(random_direction(n, p.tx_power, pair_st));
    }
    std::vector<complex<double>> s_mean(kPairs, 0.0);
    std::vector<double> s_pow(kPairs, 0.0);
    Cmat w(m, n);
    for (int i = 0; i < n_draws; ++i) {
        rng::Stream ws(rng::substream(kSuiteSeed, 5000000 + static_cast<std::uint64_t>(i)));
        for (int c = 0; c < n; ++c)
            for (int rr = 0; rr < m; ++rr) w(rr, c) = ws.next_cnormal();
        for (int t = 0; t < kPairs; ++t) {
            const complex<double> s = (phis[static_cast<std::size_t>(t)].adjoint() * w *
                                       fs[static_cast<std::size_t>(t)])
                                          .value();
            s_mean[static_cast<std::size_t>(t)] += s;
            s_pow[static_cast<std::size_t>(t)] += std::norm(s);
        }
    }
    const double bil_target = static_cast<double>(m) * p.tx_power;
    double bil_lo = 1e300, bil_hi = 0.0;
    for (int t = 0; t < kPairs; ++t) {
        const double v = s_pow[static_cast<std::size_t>(t)] / n_draws -
                         std::norm(s_mean[static_cast<std::size_t>(t)] / double(n_draws));
        bil_lo = std::min(bil_lo, v);
        bil_hi = std::max(bil_hi, v);
    }
    const double bil_dev =
        std::max(std::abs(bil_hi - bil_target), std::abs(bil_lo - bil_target)) /
        bil_target;
    const double bil_spread = (bil_hi - bil_lo) / bil_lo;

    r.passed = worst_var <= 0.03 && worst_mean < 3.0 && bil_dev <= 0.03 &&
               bil_spread <= 0.05;
    r.detail = strf(
        "entry var dev %.2e (tol 3e-02), mean %.2f se (tol 3), bilinear dev %.2e "
        "(tol 3e-02), spread over 10 (phi,f) pairs %.2e (tol 5e-02); "
        "entry targets %.3e / %.3e",
        worst_var, worst_mean, bil_dev, bil_spread, var_b, var_e);
    return r;
}

// --- check 3: certificate feasibility implies empirical outage --------------

CriterionResult c03_outage(SuiteContext& ctx) {
    CriterionResult r{3, "certified designs meet empirical outage", false, "", 0.0};
    SystemParams p;
    ctx.reference_runs = run_proposed(p, kSeedsPerCell);
    double worst_excess = -1e300;
    double worst_hat = 0.0;
    bool ok = true;
    for (const auto& run : ctx.reference_runs) {
        const double limit = p.p_out + 3.0 * run.empirical_outage.std_err;
        const double excess = run.empirical_outage.p_hat - limit;
        if (excess > worst_excess) {
            worst_excess = excess;
            worst_hat = run.empirical_outage.p_hat;
        }
        ok = ok && run.empirical_outage.p_hat <= limit;
    }
    r.passed = ok;
    r.detail = strf(
        "20 seeded reference runs, 1e4 draws each: worst p_hat %.4f vs 0.05 + 3se "
        "(margin %.4f)",
        worst_hat, -worst_excess);
    return r;
}

// --- check 4: lifted quadratic transformation identities ---------------------

CriterionResult c04_identities() {
    CriterionResult r{4, "lifted quadratic transformation identities", false, "", 0.0};
    rng::Stream st(rng::substream(kSuiteSeed, 4));
    constexpr double kTol = 1e-10;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int m = 2 + static_cast<int>(4.0 * st.next_double());
        const int n = 2 + static_cast<int>(3.0 * st.next_double());
        const Cmat f_cov = random_psd(n, st, 0.5 + 1.5 * st.next_double());
        const Cmat q_cov = random_psd(m, st, 0.5 + 1.5 * st.next_double());
        const Cmat g_bar = 0.7 * random_cmat(m, n, st);
        const Cmat g_ab = 0.7 * random_cmat(m, n, st);
        const double delta = 0.1 + 1.9 * st.next_double();
        const double sigma_sq = 0.5 + 1.5 * st.next_double();
        const double rate = 0.1 + 1.9 * st.next_double();
        const double p_out = 0.05;
        const channel::EveStatModel eve{g_bar, delta * delta};
        const secrecy::BtiTerms terms =
            secrecy::build_bti(f_cov, q_cov, eve, g_ab, rate, sigma_sq, p_out);

        const auto s_of = [&](const Cmat& x) {
            return (x * f_cov * x.adjoint() * q_cov).trace().real();
        };
        // quadratic-form identity: the lifted (A, a) reproduce the trace
        // increment of a perturbed mean for any perturbation direction
        const Cmat w = random_cmat(m, n, st);
        const Eigen::Map<const Cvec> u(w.data(), m * n);
        const double lhs = (u.adjoint() * terms.a_mat * u).value().real() +
                           2.0 * (u.adjoint() * terms.a_vec).value().real();
        const double rhs = s_of(g_bar + delta * w) - s_of(g_bar);
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));

        // constant-term identity
        const double c1_ref = std::exp2(-rate) * (sigma_sq + s_of(g_ab)) - sigma_sq -
                              s_of(g_bar);
        worst = std::max(worst, std::abs(terms.c1 - c1_ref) /
                                    std::max(1.0, std::abs(c1_ref)));

        // deterministic-bound identity against its published closed form
        Eigen::SelfAdjointEigenSolver<Cmat> es(terms.a_mat);
        const double lam = std::max(0.0, es.eigenvalues().maxCoeff());
        const double rho = -std::log(p_out);
        const double margin_ref =
            terms.a_mat.trace().real() +
            std::sqrt(2.0 * rho) *
                std::sqrt(terms.a_mat.squaredNorm() + 2.0 * terms.a_vec.squaredNorm()) +
            rho * lam - terms.c1;
        worst = std::max(worst, std::abs(secrecy::bti_margin(terms) - margin_ref) /
                                    std::max(1.0, std::abs(margin_ref)));
        worst = std::max(worst, std::abs(terms.rho_bar - rho));

        // structural facts about the lifted quadratic
        worst = std::max(worst, (terms.a_mat - terms.a_mat.adjoint()).norm());
        worst = std::max(worst, std::max(0.0, -es.eigenvalues().minCoeff()));
    }
    r.passed = worst <= kTol;
    r.detail = strf("100 random instances: max deviation %.2e (tol %.1e)", worst, kTol);
    return r;
}

// --- check 5: beamformer rank-one extraction ---------------------------------

CriterionResult c05_extraction() {
    CriterionResult r{5, "beamformer rank-one extraction", false, "", 0.0};
    rng::Stream st(rng::substream(kSuiteSeed, 5));
    constexpr double kTol = 1e-10;
    double worst_quad = 0.0, worst_trace = 0.0, worst_eig = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int n = 2 + static_cast<int>(5.0 * st.next_double());
        const Cmat f_cov = random_psd(n, st, 0.5 + 1.5 * st.next_double());
        Cvec h_b(n);
        for (int j = 0; j < n; ++j) h_b[j] = st.next_cnormal();
        const Cvec f = secrecy::rank_one_extract_f(f_cov, h_b);
        const double quad_ref = (h_b.adjoint() * f_cov * h_b).value().real();
        const double quad = std::norm((h_b.adjoint() * f).value());
        worst_quad = std::max(worst_quad,
                              std::abs(quad - quad_ref) / std::max(1.0, quad_ref));
        worst_trace =
            std::max(worst_trace, f.squaredNorm() - f_cov.trace().real());
        Eigen::SelfAdjointEigenSolver<Cmat> es(f_cov - f * f.adjoint());
        worst_eig = std::max(worst_eig, -es.eigenvalues().minCoeff());
    }
    r.passed = worst_quad <= kTol && worst_trace <= kTol && worst_eig <= kTol;
    r.detail = strf(
        "100 random instances: quad dev %.2e, trace excess %.2e, min-eig deficit "
        "%.2e (tol %.1e)",
        worst_quad, worst_trace, worst_eig, kTol);
    return r;
}

// --- check 6: refined placement against an exhaustive reference --------------

CriterionResult c06_sca_vs_grid() {
    CriterionResult r{6, "refined placement vs 0.1 m exhaustive grid", false, "", 0.0};
    rng::Stream st(rng::substream(kSuiteSeed, 6));
    constexpr double kTol = 0.01;
    double worst = 0.0;
    std::string ratios;
    for (int g = 0; g < 6; ++g) {
        SystemParams p;
        if (g > 0) {
            do {
                p.bob = {100.0 + 10.0 * (st.next_double() - 0.5),
                         15.0 + 6.0 * (st.next_double() - 0.5)};
                p.eve = {95.0 + 10.0 * (st.next_double() - 0.5),
                         13.0 + 4.0 * (st.next_double() - 0.5)};
            } while (distance(p.bob, p.eve) < 2.0);
        }
        const outage::QuantilePair q = outage::quantiles(p);
        const placement::PlacementResult sca =
            placement::sca_location_multistart(p, q, p.eve);
        const placement::PlacementResult grid =
            placement::global_search_location(p, q, 0.1, p.eve);
        const double s_sca =
            placement::surrogate_objective(p, q, placement::exact_aux(p, sca.omega_i, p.eve));
        const double s_grid = placement::surrogate_objective(
            p, q, placement::exact_aux(p, grid.omega_i, p.eve));
        worst = std::max(worst, std::abs(s_sca - s_grid) / s_grid);
        if (g < 2)
            ratios += strf("%s ratio %.6f/%.6f", g ? "," : ";", sca.objective,
                           grid.objective);
    }
    r.passed = worst <= kTol;
    r.detail =
        strf("6 geometries: max objective dev %.2e (tol %.1e)%s", worst, kTol,
             ratios.c_str());
    return r;
}

// --- check 7: rate trends ----------------------------------------------------

CriterionResult c07_trends(SuiteContext& ctx) {
    CriterionResult r{7, "rate trends across M, power, schemes, areas", false, "", 0.0};

    // surface size
    std::map<int, MeanSe> by_m;
    for (int m : {4, 6, 8}) {
        SystemParams p;
        p.n_irs = m;
        ctx.runs_by_m[m] = run_proposed(p, kSeedsPerCell);
        by_m[m] = mean_se(rates_of(ctx.runs_by_m[m]));
    }
    const bool m_ok = by_m[4].mean < by_m[6].mean && by_m[6].mean < by_m[8].mean;

    // transmit power; the 30 dBm cell is the reference scenario already run
    // for the outage check
    std::map<int, MeanSe> by_p;
    for (int dbm : {20, 25}) {
        SystemParams p;
        p.tx_power = std::pow(10.0, (dbm - 30) / 10.0);
        by_p[dbm] = mean_se(rates_of(run_proposed(p, kSeedsPerCell)));
    }
    by_p[30] = mean_se(rates_of(ctx.reference_runs));
    const bool p_ok = by_p[20].mean < by_p[25].mean && by_p[25].mean < by_p[30].mean;

    // deployment optimization against a random site, same seeds
    std::vector<double> random_rates(kSeedsPerCell);
    {
        SystemParams p;
#pragma omp parallel for schedule(dynamic)
        for (int k = 0; k < kSeedsPerCell; ++k)
            random_rates[static_cast<std::size_t>(k)] =
                pipeline::run_benchmark(p, pipeline::Scheme::random_location,
                                        static_cast<std::uint64_t>(k + 1))
                    .stage2.rate;
    }
    const MeanSe rnd = mean_se(random_rates);
    const MeanSe ref = mean_se(rates_of(ctx.reference_runs));
    const double pooled = std::sqrt(ref.se * ref.se + rnd.se * rnd.se);
    const bool s_ok = ref.mean - rnd.mean > 2.0 * pooled;

    // suspicious area stepping toward the legitimate user
    auto area_mean = [&](const Rect& rect) {
        SystemParams p;
        p.eve_region = rect;
        std::vector<double> rates(kSeedsPerCell);
#pragma omp parallel for schedule(dynamic)
        for (int k = 0; k < kSeedsPerCell; ++k)
            rates[static_cast<std::size_t>(k)] =
                pipeline::two_stage_suspicious_area(p, static_cast<std::uint64_t>(k + 1))
                    .stage2.rate;
        return mean_se(rates);
    };
    const MeanSe far = area_mean({75.0, 85.0, 8.0, 18.0});
    const MeanSe near = area_mean({95.0, 105.0, 8.0, 18.0});
    const bool a_ok = far.mean > near.mean;

    r.passed = m_ok && p_ok && s_ok && a_ok;
    r.detail = strf(
        "M {4,6,8}: %.3f<%.3f<%.3f %s; P {20,25,30}dBm: %.3f<%.3f<%.3f %s; "
        "site opt %.3f vs random %.3f (margin %.1f pooled se, need 2) %s; "
        "area toward user %.3f -> %.3f %s",
        by_m[4].mean, by_m[6].mean, by_m[8].mean, m_ok ? "ok" : "VIOLATED",
        by_p[20].mean, by_p[25].mean, by_p[30].mean, p_ok ? "ok" : "VIOLATED",
        ref.mean, rnd.mean, pooled > 0.0 ? (ref.mean - rnd.mean) / pooled : 0.0,
        s_ok ? "ok" : "VIOLATED", far.mean, near.mean, a_ok ? "ok" : "VIOLATED");
    return r;
}

// --- check 8: alternation convergence ----------------------------------------

CriterionResult c08_ao(SuiteContext& ctx) {
    CriterionResult r{8, "alternation traces converge monotonically", false, "", 0.0};
    bool ok = true;
    int max_rounds = 0;
    double worst_drop = 0.0, worst_final = 0.0;
    for (const auto& [m, runs] : ctx.runs_by_m) {
        static_cast<void>(m);
        for (const auto& run : runs) {
            const std::vector<double>& tr = run.stage2.trace;
            if (tr.empty() || tr.size() > 30) ok = false;
            max_rounds = std::max(max_rounds, static_cast<int>(tr.size()));
            for (std::size_t i = 1; i < tr.size(); ++i)
                worst_drop = std::max(worst_drop, tr[i - 1] - tr[i]);
            const double final_inc =
                tr.size() >= 2 ? tr.back() - tr[tr.size() - 2] : tr.back();
            worst_final = std::max(worst_final, final_inc);
        }
    }
    ok = ok && worst_drop <= 1e-12 && worst_final <= 1e-3 + 1e-12;
    r.passed = ok;
    r.detail = strf(
        "60 traces (M in {4,6,8}): max rounds %d (cap 30), worst decrease %.1e, "
        "worst final increment %.2e (tol 1e-03)",
        max_rounds, worst_drop, worst_final);
    return r;
}

// --- check 9: worst-case eavesdropper geometry --------------------------------

CriterionResult c09_worst_eve() {
    CriterionResult r{9, "worst-case eavesdropper clamp geometry", false, "", 0.0};
    SystemParams base;
    const outage::QuantilePair q = outage::quantiles(base);
    bool ok = true;
    double max_gap = 0.0;
    int area_idx = 0;
    for (const Rect& rect : {Rect{60.0, 70.0, 8.0, 18.0}, Rect{75.0, 85.0, 8.0, 18.0},
                             Rect{85.0, 95.0, 8.0, 18.0}, Rect{95.0, 105.0, 8.0, 18.0}}) {
        ++area_idx;
        SystemParams p = base;
        p.eve_region = rect;
        const placement::PlacementResult pl =
            placement::maxmin_location(p, q, 0.5, rect);
        const Vec2 we = pl.worst_eve.value();
        const Vec2 clamp = rect.clamp(pl.omega_i);
        if (!(we == clamp)) ok = false;
        const bool on_boundary = we.x == rect.x_min || we.x == rect.x_max ||
                                 we.y == rect.y_min || we.y == rect.y_max;
        if (!on_boundary) ok = false;
        // nearest-point property against a perimeter sweep
        const double d_we = distance(pl.omega_i, we);
        for (double t = rect.x_min; t <= rect.x_max + 1e-9; t += 0.25) {
            max_gap = std::max(max_gap, d_we - distance(pl.omega_i, {t, rect.y_min}));
            max_gap = std::max(max_gap, d_we - distance(pl.omega_i, {t, rect.y_max}));
        }
        for (double t = rect.y_min; t <= rect.y_max + 1e-9; t += 0.25) {
            max_gap = std::max(max_gap, d_we - distance(pl.omega_i, {rect.x_min, t}));
            max_gap = std::max(max_gap, d_we - distance(pl.omega_i, {rect.x_max, t}));
        }
    }
    ok = ok && max_gap <= 1e-12;
    r.passed = ok;
    r.detail = strf(
        "4 areas: exact per-coordinate clamp, on boundary, nearest within %.1e of "
        "perimeter sweep",
        max_gap);
    return r;
}

// --- check 10: deployment hugs the legitimate user ----------------------------

CriterionResult c10_near_bob() {
    CriterionResult r{10, "deployment lands near legitimate user", false, "", 0.0};
    const std::vector<Vec2> eves = {{95.0, 13.0}, {90.0, 10.0}, {85.0, 16.0}, {98.0, 8.0}};
    const std::vector<Vec2> bobs = {{100.0, 15.0}, {90.0, 15.0}, {80.0, 12.0},
                                    {70.0, 18.0},  {60.0, 10.0}, {50.0, 15.0}};
    double worst = 0.0;
    for (const Vec2& eve : eves)
        for (const Vec2& bob : bobs) {
            SystemParams p;
            p.bob = bob;
            p.eve = eve;
            const outage::QuantilePair q = outage::quantiles(p);
            const placement::PlacementResult pl =
                placement::sca_location_multistart(p, q, p.eve);
            const Vec2 closest = p.irs_region.clamp(bob);
            worst = std::max(worst, distance(pl.omega_i, closest));
        }
    r.passed = worst <= 10.0;
    r.detail = strf(
        "24 user/eavesdropper layouts: max site distance %.2f m from box point "
        "closest to user (tol 10 m)",
        worst);
    return r;
}

} // namespace

std::vector<CriterionResult> run_all(std::ostream& os) {
    SuiteContext ctx;
    struct Entry {
        int index;
        std::function<CriterionResult()> fn;
    };
    const std::vector<Entry> entries = {
        {1, [] { return c01_quantiles(); }},
        {2, [] { return c02_distributions(); }},
        {3, [&ctx] { return c03_outage(ctx); }},
        {4, [] { return c04_identities(); }},
        {5, [] { return c05_extraction(); }},
        {6, [] { return c06_sca_vs_grid(); }},
        {7, [&ctx] { return c07_trends(ctx); }},
        {8, [&ctx] { return c08_ao(ctx); }},
        {9, [] { return c09_worst_eve(); }},
        {10, [] { return c10_near_bob(); }},
    };
    std::vector<CriterionResult> results;
    for (const Entry& e : entries) {
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult cr;
        try {
            cr = e.fn();
        } catch (const std::exception& ex) {
            cr.index = e.index;
            cr.name = "check " + std::to_string(e.index);
            cr.passed = false;
            cr.detail = std::string("exception: ") + ex.what();
        }
        const auto t1 = std::chrono::steady_clock::now();
        cr.seconds = std::chrono::duration<double>(t1 - t0).count();
        results.push_back(cr);
        os << (cr.passed ? "[PASS] " : "[FAIL] ") << strf("%02d ", cr.index)
           << cr.name << ": " << cr.detail << strf("  [%.1fs]", cr.seconds) << "\n"
           << std::flush;
    }
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const CriterionResult& r : results)
        if (!r.passed) return false;
    return !results.empty();
}

} // namespace irsloc::accept
