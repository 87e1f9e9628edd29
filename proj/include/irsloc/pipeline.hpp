// SPDX-License-Identifier: Apache-2.0
//
// irsloc — joint reflecting-surface deployment, transmit beamforming and
// reflect-phase design for outage-constrained physical-layer secrecy.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef IRSLOC_PIPELINE_HPP
#define IRSLOC_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string_view>

#include "irsloc/outage.hpp"
#include "irsloc/params.hpp"
#include "irsloc/placement.hpp"
#include "irsloc/secrecy_sdp.hpp"

namespace irsloc::pipeline {

// End-to-end design strategies the benchmark CLI can run side by side.
//   proposed        — deployment by successive convex refinement, then
//                     alternating certified beamformer / phase design.
//   random_location — surface dropped uniformly in the deployment box;
//                     stage two unchanged.
//   global_search   — deployment by exhaustive grid argmax; stage two
//                     unchanged.
//   mrt             — proposed deployment, but closed-form maximum-ratio
//                     beamformer and co-phasing reflect coefficients
//                     (no security-aware optimization).
//   gaussian_random — proposed flow with the sequential rank-one refinement
//                     replaced by pure Gaussian randomization.
enum class Scheme : std::uint8_t {
    proposed,
    random_location,
    global_search,
    mrt,
    gaussian_random,
};

const char* to_string(Scheme scheme);
std::optional<Scheme> scheme_from_string(std::string_view name);

// One full two-stage run: where the surface went, what design came out, and
// an independent Monte-Carlo check of the secrecy-outage guarantee at the
// achieved rate (1e4 conditional eavesdropper redraws).
struct ScenarioResult {
    placement::PlacementResult placement;
    secrecy::StageTwoSolution stage2;
    outage::OutageEstimate empirical_outage;
    Scheme scheme_tag = Scheme::proposed;
    std::uint64_t seed = 0;
};

// Known-eavesdropper two-stage design. Stage one places the surface from
// large-scale statistics alone (no realized fading); stage two fixes the
// location, draws the channel realization for `seed`, and alternates the
// certified beamformer and phase programs until the rate gain per round
// drops to 1e-3 bits (at most 30 rounds).
ScenarioResult two_stage_known_eve(const SystemParams& p, std::uint64_t seed);

// Suspicious-area variant: requires p.eve_region and guards against the
// worst eavesdropper position in it. A degenerate (point) region reduces
// exactly to the known-location flow at that point.
ScenarioResult two_stage_suspicious_area(const SystemParams& p,
                                         std::uint64_t seed,
                                         double grid_step = 0.5);

// Runs one scheme end to end. `grid_step` only affects global_search.
ScenarioResult run_benchmark(const SystemParams& p, Scheme scheme,
                             std::uint64_t seed, double grid_step = 0.5);

} // namespace irsloc::pipeline

#endif // IRSLOC_PIPELINE_HPP
