// SPDX-License-Identifier: Apache-2.0
//
// irsloc — joint reflecting-surface deployment, transmit beamforming and
// reflect-phase design for outage-constrained physical-layer secrecy.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef IRSLOC_CHANNEL_HPP
#define IRSLOC_CHANNEL_HPP

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "irsloc/params.hpp"

namespace irsloc::channel {

using Cvec = Eigen::VectorXcd;
using Cmat = Eigen::MatrixXcd;

// Distance-law gain: reference_gain * d^(-rho). Throws on d <= 0.
double path_gain(double distance_m, double rho, double reference_gain);

// Uniform-linear-array steering vector, entry k = exp(-i k 2*pi*spacing*c),
// k = 0..n-1, where c is the cosine of the angle against the array axis.
// The leading negative sign matches the conjugated-vector convention used
// throughout (rates and statistics are invariant to it, but stored LoS
// matrices and tests pin it). Requires |c| <= 1.
Cvec steering(int n, double cos_angle, double spacing_fraction = 0.5);

// Deterministic (unit-modulus) line-of-sight factors for a surface at
// omega_i. The AP sits at the origin; its array axis and the surface's
// element axis both run along +x, so arrival/departure cosines reduce to
// x-coordinate ratios. Throws DegenerateGeometryError on coincident nodes.
//
//   ap-to-surface matrix:  a_I(pi - phi_AI) * a_A(phi_AI)^H   (rank one)
//   surface-to-user vector: a_I(phi_IJ)
Cmat los_ap_to_irs(const SystemParams& p, Vec2 omega_i);
Cvec los_irs_to_user(const SystemParams& p, Vec2 omega_i, Vec2 omega_u);

// One realization of all three links, Rician in the angle domain:
//   H = sqrt(kappa L/(kappa+1)) H_los_unit + sqrt(L/(kappa+1)) H_nlos_raw
// The scaled LoS and NLoS parts are stored so that los + nlos reproduces the
// channel bitwise and either part can be used to build the statistical
// eavesdropper models.
struct ChannelSample {
    Cmat h_ai;      // n_irs x n_tx, AP -> surface
    Cvec h_ib;      // n_irs, surface -> legitimate user
    Cvec h_ie;      // n_irs, surface -> eavesdropper
    Cmat h_ai_los, h_ai_nlos;
    Cvec h_ib_los, h_ib_nlos;
    Cvec h_ie_los, h_ie_nlos;
};

ChannelSample sample_channels(const SystemParams& p, Vec2 omega_i, std::uint64_t seed);

// Cascaded AP -> surface -> user channel diag(h_iu) * h_ai (n_irs x n_tx).
Cmat cascade(const Cvec& h_iu, const Cmat& h_ai);

// log2(1 + |phi^H G f|^2 / sigma_sq) in bits.
double achievable_rate(const Cmat& g, const Cvec& f, const Cvec& phi, double sigma_sq);

// Second-stage statistical eavesdropper model: the cascade mean uses the
// realized AP->surface channel with the deterministic surface->eve LoS part,
// and the entry variance collapses the scattered surface->eve component
// against the LoS modulus of the AP link.
struct EveStatModel {
    Cmat g_bar_ae;      // n_irs x n_tx cascade mean
    double delta_ae_sq; // per-entry variance of the scattered cascade part
};

EveStatModel eve_stat_model(const SystemParams& p, Vec2 omega_i, Vec2 omega_e,
                            const Cmat& h_ai_realized);

// Closed-form matched pair for the deterministic benchmark: full-power
// transmit vector aligned with the AP->surface departure steering, and
// reflect phases that co-phase the AP->surface->user LoS cascade.
Cvec mrt_beamformer(const SystemParams& p, Vec2 omega_i);
Cvec mrt_phases(const SystemParams& p, Vec2 omega_i, Vec2 omega_u);

} // namespace irsloc::channel

#endif // IRSLOC_CHANNEL_HPP
