// SPDX-License-Identifier: Apache-2.0
//
// irsloc — joint reflecting-surface deployment, transmit beamforming and
// reflect-phase design for outage-constrained physical-layer secrecy.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef IRSLOC_OUTAGE_HPP
#define IRSLOC_OUTAGE_HPP

#include <cstdint>
#include <span>

#include "irsloc/channel.hpp"
#include "irsloc/exec.hpp"
#include "irsloc/params.hpp"

namespace irsloc::outage {

// Scale constants of the deployment-stage link-budget fluctuation model.
// Around the co-phased LoS level a = kappa*M*sqrt(n_tx*P)/(kappa+1), the
// scattered contribution behaves as a complex normal g with
// E|g|^2 = s_sq = 2*kappa*M*P/(kappa+1)^2, giving the bounding pair
//   gamma_e = (a + |g|)^2   (eavesdropper, upper)
//   gamma_b = (a - |g|)^2   (legitimate user, lower)
// both normalized by the product of the two link path gains.
struct GammaScale {
    double a = 0.0;
    double s_sq = 0.0;
};

GammaScale gamma_scale(const SystemParams& p);

enum class QuantileMethod : std::uint8_t { analytic, monte_carlo };

struct QuantilePair {
    double alpha_e = 0.0; // (1 - p_out) quantile of gamma_e
    double alpha_b = 0.0; // p_out quantile of gamma_b
    QuantileMethod method = QuantileMethod::analytic;
    std::int64_t n_samples = 0;    // 0 for the analytic path
    bool alpha_b_saturated = false; // bracket top a^2 hit before reaching p_out
};

// Analytic path: alpha_e = (a + sqrt(-s_sq ln p_out))^2 in closed form;
// alpha_b by bisection of the lower-tail law
//   F_b(t) = exp(-(a - sqrt(t))^2/s_sq) - exp(-(a + sqrt(t))^2/s_sq)
// on t in [0, a^2] to relative tolerance 1e-10 (saturating at a^2, with a
// stderr warning, if p_out exceeds F_b(a^2)). Monte-Carlo path: empirical
// quantiles over n_samples counter-seeded draws; retained as a cross-check
// oracle for the closed forms.
QuantilePair quantiles(const GammaScale& gs, double p_out,
                       QuantileMethod method = QuantileMethod::analytic,
                       std::int64_t n_samples = 1000000, std::uint64_t seed = 0,
                       Exec exec = Exec::parallel);

QuantilePair quantiles(const SystemParams& p,
                       QuantileMethod method = QuantileMethod::analytic,
                       std::int64_t n_samples = 1000000, std::uint64_t seed = 0,
                       Exec exec = Exec::parallel);

// Raw draw kernel behind the Monte-Carlo path (exposed for the kernel
// benchmark and the serial/parallel equivalence tests). Fills per-draw
// gamma_e/gamma_b values into caller-provided arrays.
void gamma_pair_draws(const GammaScale& gs, std::span<double> out_e,
                      std::span<double> out_b, std::uint64_t seed, Exec exec);

struct OutageEstimate {
    double p_hat = 0.0;
    double std_err = 0.0;
    std::int64_t n_draws = 0;
    std::int64_t n_violations = 0;
};

// Empirical secrecy-outage probability of a fixed design (f, phi) at target
// rate target_r. The legitimate rate is deterministic given the realized
// sample; the eavesdropper cascade is redrawn per trial from the statistical
// post-deployment model G_e = g_bar_ae + W with i.i.d. CN(0, delta_ae_sq)
// entries of W — the same law the Bernstein-type outage certificate is
// stated under, so certificate-feasible designs must pass this check.
OutageEstimate empirical_secrecy_outage(const SystemParams& p, Vec2 omega_i,
                                        const channel::ChannelSample& sample,
                                        const channel::EveStatModel& eve_model,
                                        const channel::Cvec& f, const channel::Cvec& phi,
                                        double target_r, std::int64_t n_draws,
                                        std::uint64_t seed, Exec exec = Exec::parallel);

// Deployment-stage feasibility checks at candidate per-user rates:
//   holds_e:  alpha_e <= (2^r_e - 1) sigma^2 / (l_ai l_ie)
//   holds_b:  alpha_b >= (2^r_b - 1) sigma^2 / (l_ai l_ib)
struct BoundCheck {
    bool holds_e = false;
    bool holds_b = false;
};

BoundCheck stage1_outage_bound_check(const SystemParams& p, Vec2 omega_i, double r_b,
                                     double r_e, const QuantilePair& q);

} // namespace irsloc::outage

#endif // IRSLOC_OUTAGE_HPP
