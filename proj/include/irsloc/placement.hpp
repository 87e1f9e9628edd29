// SPDX-License-Identifier: Apache-2.0
//
// irsloc — joint reflecting-surface deployment, transmit beamforming and
// reflect-phase design for outage-constrained physical-layer secrecy.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef IRSLOC_PLACEMENT_HPP
#define IRSLOC_PLACEMENT_HPP

#include <optional>
#include <vector>

#include "irsloc/exec.hpp"
#include "irsloc/outage.hpp"
#include "irsloc/params.hpp"

namespace irsloc::placement {

// Deployment-stage objective: quantile-weighted link-budget ratio
//   (sigma^2 + alpha_b l_ai l_ib) / (sigma^2 + alpha_e l_ai l_ie).
// Larger is better. Throws DegenerateGeometryError if the candidate site is
// within 0.5 m of the eavesdropper (there the model itself breaks down).
double ratio_objective(const SystemParams& p, Vec2 omega_i, Vec2 omega_e,
                       const outage::QuantilePair& q);

// Tight per-user rates implied by the bounding pair at a location; feeding
// them back through stage1_outage_bound_check must succeed.
struct StageRates {
    double r_b = 0.0;
    double r_e = 0.0;
};
StageRates stage_rates(const SystemParams& p, Vec2 omega_i, Vec2 omega_e,
                       const outage::QuantilePair& q);

// Reciprocal path gains and their products, the lifted variables of the
// convexified placement step: a_ai = 1/l_ai, a_ib = 1/l_ib, a_ie = 1/l_ie,
// a_ab = a_ai * a_ib, a_be = a_ib / a_ie.
struct AuxVars {
    double a_ai = 0.0, a_ib = 0.0, a_ie = 0.0;
    double a_ab = 0.0, a_be = 0.0;
};

AuxVars exact_aux(const SystemParams& p, Vec2 omega_i, Vec2 omega_e);

// Minimization-form surrogate value (sigma^2/alpha_b) a_ab + (alpha_e/alpha_b) a_be;
// at exact auxiliaries this equals (sigma^2 + alpha_e l_ai l_ie)/(alpha_b l_ai l_ib),
// i.e. exactly the reciprocal structure whose descent the outer loop tracks.
double surrogate_objective(const SystemParams& p, const outage::QuantilePair& q,
                           const AuxVars& aux);

struct SubproblemPoint {
    Vec2 omega;
    AuxVars aux;
};

struct SubproblemResult {
    SubproblemPoint point;
    double surrogate_value = 0.0; // convex model value at the minimizer
    double kkt_gap = 0.0;         // scaled KKT infinity-norm at termination
};

// One inner convex step: minimize the lifted surrogate subject to the
// box, the two convex distance-power epigraphs, the linearized
// eavesdropper-distance cap, and the two successive-convex product bounds,
// all linearized at `at`. `at` must be feasible (exact auxiliaries at its
// own location qualify); the subproblem then provably contains it. The
// lifted variables minimize out in closed form, and the remaining convex
// bivariate site problem is solved by nested derivative-sign bisections to
// a scaled KKT residual below 1e-8 (throws otherwise).
SubproblemResult sca_subproblem(const SystemParams& p, const outage::QuantilePair& q,
                                const SubproblemPoint& at, Vec2 omega_e);

struct PlacementResult {
    Vec2 omega_i;
    double objective = 0.0; // ratio_objective at omega_i
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;     // exact surrogate value per outer iteration
    std::optional<Vec2> worst_eve; // set by the max-min solver
};

// Successive convex refinement from a single start; stops when the squared
// location update falls below eps (m^2).
PlacementResult sca_location(const SystemParams& p, const outage::QuantilePair& q,
                             Vec2 init, Vec2 omega_e, double eps = 1e-6,
                             int max_iter = 100);

// Multistart from the centroid, the four corners and the argmin of a coarse
// exact-surrogate scan (refinement steps cannot hop between basins, so the
// scan picks the basin); the run with the smallest final exact surrogate
// value (the quantity the descent loop minimizes) wins.
PlacementResult sca_location_multistart(const SystemParams& p,
                                        const outage::QuantilePair& q, Vec2 omega_e,
                                        double eps = 1e-6);

// Exhaustive reference for the deployment step: argmin of the exact lifted
// surrogate (the functional the successive refinement minimizes) over a
// regular grid of pitch grid_step. `objective` reports the ratio at the
// winning site as usual; `trace` holds the surrogate value there.
PlacementResult global_search_location(const SystemParams& p,
                                       const outage::QuantilePair& q, double grid_step,
                                       Vec2 omega_e, Exec exec = Exec::parallel);

// Worst-case eavesdropper position for a given site: the ratio decreases
// monotonically in the surface->eve gain, so the minimizer over a box is the
// Euclidean projection (per-coordinate clamp) of the site onto the box.
Vec2 worst_eve(Vec2 omega_i, const Rect& eve_region);

// Grid max-min: pick the candidate site whose worst-case eavesdropper leaves
// the best deployment functional (same surrogate metric as the refinement and
// the exhaustive reference, so a point-sized area reduces to
// global_search_location). `objective` reports the ratio at the winner;
// `trace` holds the surrogate value there; `worst_eve` is set.
PlacementResult maxmin_location(const SystemParams& p, const outage::QuantilePair& q,
                                double grid_step, const Rect& eve_region,
                                Exec exec = Exec::parallel);

} // namespace irsloc::placement

#endif // IRSLOC_PLACEMENT_HPP
