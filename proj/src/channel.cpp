// SPDX-License-Identifier: Apache-2.0
//
// irsloc — joint reflecting-surface deployment, transmit beamforming and
// reflect-phase design for outage-constrained physical-layer secrecy.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "irsloc/channel.hpp"

#include <cmath>

#include "irsloc/rng.hpp"

namespace irsloc::channel {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Minimum node separation below which the geometry is rejected outright.
constexpr double kMinLinkDistance = 1e-9;

void check_link(double d, const char* what) {
    if (!(d > kMinLinkDistance))
        throw DegenerateGeometryError(std::string("coincident nodes on link ") + what);
}

// Departure cosine seen from `from` toward `to` along the +x element axis.
double link_cos(Vec2 from, Vec2 to, double d) { return (to.x - from.x) / d; }

Cmat fill_cnormal(int rows, int cols, rng::Stream& s) {
    Cmat m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            m(r, c) = s.next_cnormal();
    return m;
}

} // namespace

double path_gain(double distance_m, double rho, double reference_gain) {
    if (!(distance_m > 0.0))
        throw DegenerateGeometryError("path_gain: distance must be > 0");
    return reference_gain * std::pow(distance_m, -rho);
}

Cvec steering(int n, double cos_angle, double spacing_fraction) {
    if (n < 1) throw std::invalid_argument("steering: n must be >= 1");
    if (!(std::abs(cos_angle) <= 1.0))
        throw std::invalid_argument("steering: |cos_angle| must be <= 1");
    Cvec v(n);
    const double step = -kTwoPi * spacing_fraction * cos_angle;
    for (int k = 0; k < n; ++k)
        v(k) = std::polar(1.0, step * static_cast<double>(k));
    return v;
}

Cmat los_ap_to_irs(const SystemParams& p, Vec2 omega_i) {
    const double d = omega_i.norm();
    check_link(d, "ap->surface");
    const double cos_phi_ai = omega_i.x / d; // departure at the AP
    // Arrival at the surface comes from the opposite direction along the
    // shared +x axis: theta = pi - phi, so cos(theta) = -cos(phi).
    const Cvec a_i = steering(p.n_irs, -cos_phi_ai, p.element_spacing_fraction);
    const Cvec a_a = steering(p.n_tx, cos_phi_ai, p.element_spacing_fraction);
    return a_i * a_a.adjoint();
}

Cvec los_irs_to_user(const SystemParams& p, Vec2 omega_i, Vec2 omega_u) {
    const double d = distance(omega_i, omega_u);
    check_link(d, "surface->user");
    return steering(p.n_irs, link_cos(omega_i, omega_u, d), p.element_spacing_fraction);
}

ChannelSample sample_channels(const SystemParams& p, Vec2 omega_i, std::uint64_t seed) {
    const double l0 = p.reference_gain();
    const double k = p.rician_k;
    const double los_scale = std::sqrt(k / (k + 1.0));
    const double nlos_scale = std::sqrt(1.0 / (k + 1.0));

    const double l_ai = path_gain(omega_i.norm(), p.rho_ai, l0);
    const double l_ib = path_gain(distance(omega_i, p.bob), p.rho_iu, l0);
    const double l_ie = path_gain(distance(omega_i, p.eve), p.rho_iu, l0);

    ChannelSample cs;
    {
        rng::Stream s(rng::substream(seed, 0));
        cs.h_ai_los = (std::sqrt(l_ai) * los_scale) * los_ap_to_irs(p, omega_i);
        cs.h_ai_nlos = (std::sqrt(l_ai) * nlos_scale) * fill_cnormal(p.n_irs, p.n_tx, s);
        cs.h_ai = cs.h_ai_los + cs.h_ai_nlos;
    }
    {
        rng::Stream s(rng::substream(seed, 1));
        cs.h_ib_los = (std::sqrt(l_ib) * los_scale) * los_irs_to_user(p, omega_i, p.bob);
        cs.h_ib_nlos = (std::sqrt(l_ib) * nlos_scale) * fill_cnormal(p.n_irs, 1, s);
        cs.h_ib = cs.h_ib_los + cs.h_ib_nlos;
    }
    {
        rng::Stream s(rng::substream(seed, 2));
        cs.h_ie_los = (std::sqrt(l_ie) * los_scale) * los_irs_to_user(p, omega_i, p.eve);
        cs.h_ie_nlos = (std::sqrt(l_ie) * nlos_scale) * fill_cnormal(p.n_irs, 1, s);
        cs.h_ie = cs.h_ie_los + cs.h_ie_nlos;
    }
    return cs;
}

Cmat cascade(const Cvec& h_iu, const Cmat& h_ai) {
    if (h_iu.size() != h_ai.rows())
        throw std::invalid_argument("cascade: dimension mismatch");
    return h_iu.asDiagonal() * h_ai;
}

double achievable_rate(const Cmat& g, const Cvec& f, const Cvec& phi, double sigma_sq) {
    if (!(sigma_sq > 0.0)) throw std::invalid_argument("achievable_rate: sigma_sq must be > 0");
    const std::complex<double> s = phi.adjoint() * g * f;
    return std::log2(1.0 + std::norm(s) / sigma_sq);
}

EveStatModel eve_stat_model(const SystemParams& p, Vec2 omega_i, Vec2 omega_e,
                            const Cmat& h_ai_realized) {
    const double l0 = p.reference_gain();
    const double k = p.rician_k;
    const double l_ai = path_gain(omega_i.norm(), p.rho_ai, l0);
    const double l_ie = path_gain(distance(omega_i, omega_e), p.rho_iu, l0);

    EveStatModel m;
    const Cvec h_ie_bar =
        std::sqrt(l_ie * k / (k + 1.0)) * los_irs_to_user(p, omega_i, omega_e);
    m.g_bar_ae = cascade(h_ie_bar, h_ai_realized);
    // Scattered surface->eve entry variance l_ie/(k+1), carried through the
    // cascade against the AP-link LoS modulus sqrt(k l_ai/(k+1)).
    m.delta_ae_sq = k * l_ai * l_ie / ((k + 1.0) * (k + 1.0));
    return m;
}

Cvec mrt_beamformer(const SystemParams& p, Vec2 omega_i) {
    const double d = omega_i.norm();
    check_link(d, "ap->surface");
    return std::sqrt(p.tx_power / p.n_tx) *
           steering(p.n_tx, omega_i.x / d, p.element_spacing_fraction);
}

Cvec mrt_phases(const SystemParams& p, Vec2 omega_i, Vec2 omega_u) {
    const double d_ai = omega_i.norm();
    check_link(d_ai, "ap->surface");
    const Cvec arrive = steering(p.n_irs, -omega_i.x / d_ai, p.element_spacing_fraction);
    const Cvec depart = los_irs_to_user(p, omega_i, omega_u);
    return depart.cwiseProduct(arrive);
}

} // namespace irsloc::channel
