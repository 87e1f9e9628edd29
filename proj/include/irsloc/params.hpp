// SPDX-License-Identifier: Apache-2.0
//
// irsloc — joint reflecting-surface deployment, transmit beamforming and
// reflect-phase design for outage-constrained physical-layer secrecy.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef IRSLOC_PARAMS_HPP
#define IRSLOC_PARAMS_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "irsloc/geometry.hpp"

namespace irsloc {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

// Thrown when node geometry makes a channel or objective undefined
// (coincident nodes, eavesdropper on top of the surface, ...).
struct DegenerateGeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Physical system description. All quantities are SI (watts, meters, hertz);
// dB/dBm conversions happen at the CLI boundary only.
struct SystemParams {
    int n_tx = 4;                  // transmit antennas at the access point
    int n_irs = 5;                 // reflecting elements
    double rician_k = 2.0;         // Rician factor (linear)
    double rho_ai = 2.2;           // path-loss exponent, AP -> surface
    double rho_iu = 3.0;           // path-loss exponent, surface -> user
    double noise_power = 3.1622776601683794e-13; // watts (-95 dBm)
    double tx_power = 1.0;         // watts (30 dBm)
    double p_out = 0.05;           // secrecy-outage tolerance
    double carrier_hz = 2.4e9;
    double element_spacing_fraction = 0.5; // antenna/element spacing over wavelength

    Vec2 bob{100.0, 15.0};
    Vec2 eve{95.0, 13.0};
    Rect irs_region{0.0, 105.0, 20.0, 30.0};
    std::optional<Rect> eve_region; // suspicious area; nullopt = exact location known

    double wavelength() const { return kSpeedOfLight / carrier_hz; }

    // Reference path gain at 1 m: (lambda / 4 pi)^2.
    double reference_gain() const {
        const double r = wavelength() / (4.0 * 3.14159265358979323846);
        return r * r;
    }

    void validate() const {
        auto fail = [](const std::string& field, const std::string& why) {
            throw std::invalid_argument("SystemParams." + field + ": " + why);
        };
        if (n_tx < 1) fail("n_tx", "must be >= 1");
        if (n_irs < 1) fail("n_irs", "must be >= 1");
        if (!(rician_k > 0.0)) fail("rician_k", "must be > 0");
        if (!(rho_ai >= 2.0)) fail("rho_ai", "must be >= 2");
        if (!(rho_iu >= 2.0)) fail("rho_iu", "must be >= 2");
        if (!(noise_power > 0.0)) fail("noise_power", "must be > 0 W");
        if (!(tx_power >= 0.0)) fail("tx_power", "must be >= 0 W");
        if (!(p_out > 0.0 && p_out < 1.0)) fail("p_out", "must lie in (0,1)");
        if (!(carrier_hz > 0.0)) fail("carrier_hz", "must be > 0");
        if (!(element_spacing_fraction > 0.0)) fail("element_spacing_fraction", "must be > 0");
        try {
            irs_region.validate();
        } catch (const std::invalid_argument&) {
            fail("irs_region", "x_min <= x_max and y_min <= y_max required");
        }
        if (eve_region) {
            try {
                eve_region->validate();
            } catch (const std::invalid_argument&) {
                fail("eve_region", "x_min <= x_max and y_min <= y_max required");
            }
        }
    }
};

} // namespace irsloc

#endif // IRSLOC_PARAMS_HPP
