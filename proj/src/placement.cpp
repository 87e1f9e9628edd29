// SPDX-License-Identifier: Apache-2.0
//
// irsloc — joint reflecting-surface deployment, transmit beamforming and
// reflect-phase design for outage-constrained physical-layer secrecy.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "irsloc/placement.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace irsloc::placement {

namespace {

// Candidate sites closer than this to the eavesdropper are rejected: the
// far-field link model is meaningless there and the objective degenerates.
constexpr double kMinEveDistance = 0.5;

double link_budget(const SystemParams& p, Vec2 omega_i, Vec2 omega_u, double rho) {
    return channel::path_gain(distance(omega_i, omega_u), rho, p.reference_gain());
}

// Non-throwing ratio for exhaustive searches; degenerate sites score -inf.
double ratio_or_neg_inf(const SystemParams& p, Vec2 omega_i, Vec2 omega_e,
                        const outage::QuantilePair& q) {
    if (distance(omega_i, omega_e) < kMinEveDistance ||
        omega_i.norm() < kMinEveDistance)
        return -std::numeric_limits<double>::infinity();
    const double l_ai = channel::path_gain(omega_i.norm(), p.rho_ai, p.reference_gain());
    const double l_ib = link_budget(p, omega_i, p.bob, p.rho_iu);
    const double l_ie = link_budget(p, omega_i, omega_e, p.rho_iu);
    return (p.noise_power + q.alpha_b * l_ai * l_ib) /
           (p.noise_power + q.alpha_e * l_ai * l_ie);
}

// ---------------------------------------------------------------------------
// Inner convex step over 7 unknowns: site coordinates plus five lifted
// reciprocal-gain variables. The program is jointly convex (power epigraphs
// and b1 are convex, the eavesdropper cap is linear, b2 is concave), and for
// a fixed site the lifted block collapses in closed form: a_ab and a_ai track
// their tight rows, b2 is maximized at a_ie = min(cap, e+f) independently of
// a_be, and what remains is a one-dimensional convex profile in a_ib whose
// derivative is strictly increasing — a sign bisection solves it to machine
// precision. Partial minimization therefore yields a C^1 convex value
// function F on the site box whose gradient is available in closed form from
// the active-row multipliers (envelope theorem). F is minimized by nested
// derivative-sign bisections: for each abscissa the y-minimizer is the sign
// change of the (monotone) partial dF/dy, and the envelope derivative of that
// inner minimum is again monotone in x. Bisection needs no step-size control,
// which matters because F, while C^1, has second-derivative jumps of ~7
// orders of magnitude across the line where the eavesdropper cap activates —
// line searches crawl there, and the Newton/KKT systems of the full
// 7-variable program are hopelessly ill-conditioned in doubles for the same
// reason (the b2 curvature couples variables ~10 orders of magnitude apart).
// Sites behind the linearized cap can be model-infeasible; the feasible set
// is convex and bisection brackets are kept on the side of the last feasible
// point. The reported KKT residual combines the projected gradient of F with
// the stationarity residual of the scalar profile.
// ---------------------------------------------------------------------------
class SubSolver {
  public:
    SubSolver(const SystemParams& p, const outage::QuantilePair& q,
              const SubproblemPoint& at, Vec2 omega_e)
        : p_(p), at_(at), eve_(omega_e) {
        if (!(q.alpha_b > 0.0))
            throw std::invalid_argument("sca_subproblem: alpha_b must be > 0");
        box_ = p.irs_region;
        l0_ = p.reference_gain();
        c_ab_ = p.noise_power / q.alpha_b;
        c_be_ = q.alpha_e / q.alpha_b;

        const Vec2 u = at.omega - eve_;
        const double d_e = u.norm();
        if (d_e < kMinEveDistance)
            throw DegenerateGeometryError("sca_subproblem: site too close to eavesdropper");
        t0_ = std::pow(d_e, p.rho_iu);
        tg_ = (p.rho_iu * std::pow(d_e, p.rho_iu - 2.0)) * u;

        // Zero-width box sides pin the corresponding site coordinate.
        frozen_[0] = box_.x_min == box_.x_max;
        frozen_[1] = box_.y_min == box_.y_max;
    }

    SubproblemResult solve() {
        const Vec2 w0 = clamp_box(at_.omega);
        if (!reduce_aux(w0).feasible)
            throw std::runtime_error("sca_subproblem: linearization point infeasible");

        Inner best = minimize_x(w0);
        const Vec2 w_best{best.x, best.y};
        const double kkt = kkt_residual(w_best, best.a, best.g);
        if (!(kkt <= 1e-8))
            throw std::runtime_error(
                "sca_subproblem: bisection did not reach the KKT tolerance");

        SubproblemResult res;
        double xf[7] = {w_best.x, w_best.y, best.a.x2, best.a.x3,
                        best.a.x4, best.a.x5, best.a.x6};
        round_feasible(xf);
        res.kkt_gap = kkt;
        res.point.omega = {xf[0], xf[1]};
        res.point.aux = {xf[2], xf[3], xf[4], xf[5], xf[6]};
        res.surrogate_value = c_ab_ * xf[5] + c_be_ * xf[6];

        // The linearization point is feasible for its own subproblem, so the
        // minimizer can never be worse; if rounding noise says otherwise we
        // are at a fixed point and the input itself is the answer.
        const double at_value = c_ab_ * at_.aux.a_ab + c_be_ * at_.aux.a_be;
        if (!(res.surrogate_value <= at_value)) {
            res.point = at_;
            res.surrogate_value = at_value;
        }
        return res;
    }

  private:
    const SystemParams& p_;
    const SubproblemPoint& at_;
    Vec2 eve_;
    Rect box_;
    double l0_ = 0.0, c_ab_ = 0.0, c_be_ = 0.0;
    double t0_ = 0.0;
    Vec2 tg_;
    bool frozen_[2] = {false, false};

    // Result of the closed-form partial minimization over the lifted block
    // at a fixed site, together with the multipliers of the rows that couple
    // back to the site coordinates.
    struct Aux {
        bool feasible = false;
        double x2 = 0.0, x3 = 0.0, x4 = 0.0, x5 = 0.0, x6 = 0.0;
        double value = std::numeric_limits<double>::infinity();
        double lam0 = 0.0;     // ap->site power epigraph
        double lam1 = 0.0;     // site->user power epigraph
        double lam2 = 0.0;     // linearized eavesdropper cap
        double stat_res = 0.0; // leftover |dphi| of the scalar profile
    };

    Vec2 clamp_box(Vec2 w) const {
        return {std::min(std::max(w.x, box_.x_min), box_.x_max),
                std::min(std::max(w.y, box_.y_min), box_.y_max)};
    }

    // A column minimizer: the best feasible site at abscissa x, with its
    // lifted block and gradient.
    struct Inner {
        bool feasible = false;
        double x = 0.0, y = 0.0;
        Aux a;
        Vec2 g{0.0, 0.0};
    };

    // Model feasibility margin x3cap - P1 (concave in the site) and its
    // y-derivative, used to climb toward the feasible set inside a column.
    double margin(Vec2 w, double* dy) const {
        const double ef = at_.aux.a_ie + at_.aux.a_be;
        const double cap =
            (t0_ + tg_.x * (w.x - at_.omega.x) + tg_.y * (w.y - at_.omega.y)) / l0_;
        const double x4s = std::min(cap, ef);
        const Vec2 ub = w - p_.bob;
        const double dib = ub.norm();
        if (dy) {
            const double dcap = cap < ef ? tg_.y / l0_ : 0.0;
            const double dp1 =
                dib > 1e-12 ? p_.rho_iu * std::pow(dib, p_.rho_iu - 2.0) * ub.y / l0_
                            : 0.0;
            *dy = (ef - x4s) * dcap - dp1;
        }
        return 0.5 * x4s * (2.0 * ef - x4s) - std::pow(dib, p_.rho_iu) / l0_;
    }

    // Minimizes F(x, .) over the feasible part of the column by bisecting the
    // sign of the (monotone) partial derivative dF/dy. Infeasible probes are
    // cut on their side of the last feasible point — the feasible segment of
    // a convex set's column is an interval, so the minimizer stays bracketed.
    Inner minimize_y(double x, double y_warm) const {
        Inner r;
        r.x = x;
        const auto take = [&](double y, const Aux& a) {
            r.feasible = true;
            r.y = y;
            r.a = a;
            r.g = value_grad({x, y}, a);
        };
        if (frozen_[1] || box_.y_min >= box_.y_max) {
            const Aux a = reduce_aux({x, box_.y_min});
            if (a.feasible) take(box_.y_min, a);
            return r;
        }

        // Anchor: a feasible y, from the warm start or by climbing the
        // concave feasibility margin.
        double ya = std::min(std::max(y_warm, box_.y_min), box_.y_max);
        {
            Aux a = reduce_aux({x, ya});
            if (!a.feasible) {
                double lo = box_.y_min, hi = box_.y_max;
                for (int k = 0; k < 120; ++k) {
                    const double mid = 0.5 * (lo + hi);
                    if (mid == lo || mid == hi) return r; // column infeasible
                    a = reduce_aux({x, mid});
                    if (a.feasible) {
                        ya = mid;
                        break;
                    }
                    double dm = 0.0;
                    margin({x, mid}, &dm);
                    (dm > 0.0 ? lo : hi) = mid;
                }
                if (!a.feasible) return r;
            }
            take(ya, a);
        }

        // Face minimizers first: dF/dy one-signed over the whole column.
        {
            const Aux a = reduce_aux({x, box_.y_min});
            if (a.feasible && value_grad({x, box_.y_min}, a).y >= 0.0) {
                take(box_.y_min, a);
                return r;
            }
        }
        {
            const Aux a = reduce_aux({x, box_.y_max});
            if (a.feasible && value_grad({x, box_.y_max}, a).y <= 0.0) {
                take(box_.y_max, a);
                return r;
            }
        }

        double lo = box_.y_min, hi = box_.y_max;
        for (int k = 0; k < 120; ++k) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            const Aux a = reduce_aux({x, mid});
            if (!a.feasible) {
                (mid > r.y ? hi : lo) = mid;
                continue;
            }
            take(mid, a);
            (r.g.y < 0.0 ? lo : hi) = mid;
        }
        return r;
    }

    // Outer bisection over x on the envelope m(x) = min_y F(x, y): its
    // derivative is dF/dx at the column minimizer and is again monotone.
    Inner minimize_x(Vec2 anchor) const {
        Inner best = minimize_y(anchor.x, anchor.y);
        if (frozen_[0] || box_.x_min >= box_.x_max || !best.feasible) return best;

        {
            const Inner lo = minimize_y(box_.x_min, best.y);
            if (lo.feasible && lo.g.x >= 0.0) return lo;
        }
        {
            const Inner hi = minimize_y(box_.x_max, best.y);
            if (hi.feasible && hi.g.x <= 0.0) return hi;
        }

        double lo = box_.x_min, hi = box_.x_max;
        for (int k = 0; k < 120; ++k) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            const Inner in = minimize_y(mid, best.y);
            if (!in.feasible) {
                (mid > best.x ? hi : lo) = mid;
                continue;
            }
            best = in;
            (in.g.x < 0.0 ? lo : hi) = mid;
        }
        return best;
    }

    // Minimizes c_ab*a_ab + c_be*a_be over the lifted block for a fixed site.
    //
    // With b1(u, v) = u v + (u - a1)^2/2 + (v - a2)^2/2 (convex) and
    // b2(u, w) = u w - ((u - e) + (w - f))^2/2 (concave), the block solves as
    //   a_ab = b1(a_ai, a_ib),       a_ai = max(P0, a1 - a_ib),
    //   a_ie = min(cap, e + f)        (the b2-maximizer, independent of a_be),
    //   a_be = smaller root of b2(a_ie, .) = a_ib,
    // leaving one convex profile in v = a_ib on [P1, ...] whose derivative
    //   dphi(v) = c_ab (a_ai(v) + v - a2) + c_be / sqrt(disc(v))
    // is strictly increasing: bisect its sign change. All root expressions
    // use product/ratio forms; the naive "e + f - sqrt(disc)" difference
    // would lose ~10 significant digits at this scale.
    Aux reduce_aux(Vec2 w) const {
        Aux r;
        const double a1 = at_.aux.a_ai, a2 = at_.aux.a_ib;
        const double ef = at_.aux.a_ie + at_.aux.a_be;
        const double p0 = std::pow(w.norm(), p_.rho_ai) / l0_;
        const double p1 = std::pow(distance(w, p_.bob), p_.rho_iu) / l0_;
        const double cap =
            (t0_ + tg_.x * (w.x - at_.omega.x) + tg_.y * (w.y - at_.omega.y)) / l0_;
        const double x4s = std::min(cap, ef);
        // Largest a_ib the under-estimator row supports at any a_be; the
        // product form is the cancellation-free (e+f)^2 - (x4s-(e+f))^2.
        const double x3cap = 0.5 * x4s * (2.0 * ef - x4s);
        if (!(p1 <= x3cap)) return r;

        const auto disc = [&](double v) {
            return std::max(x4s * (2.0 * ef - x4s) - 2.0 * v, 0.0);
        };
        const auto dphi = [&](double v) {
            return c_ab_ * (std::max(p0, a1 - v) + v - a2) +
                   c_be_ / std::sqrt(disc(v));
        };

        double v = p1;
        const double dlo = dphi(p1);
        if (dlo >= 0.0) {
            // Profile already increasing: the site->user power row is tight.
            r.lam1 = dlo;
        } else {
            // The profile derivative is +inf at x3cap and >= 0 at a2 - p0,
            // so the sign change is bracketed.
            double lo = p1;
            double hi = std::min(a2 - p0, x3cap);
            for (int k = 0; k < 200; ++k) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi) break;
                (dphi(mid) < 0.0 ? lo : hi) = mid;
            }
            v = lo;
            r.stat_res = std::abs(dphi(v));
        }

        const double sq = std::sqrt(disc(v));
        const double qmf = x4s - ef;
        r.x2 = std::max(p0, a1 - v);
        r.x3 = v;
        r.x4 = x4s;
        const double du = r.x2 - a1, dv = v - a2;
        r.x5 = r.x2 * v + 0.5 * (du * du + dv * dv);
        r.x6 = (qmf * qmf + 2.0 * v) / (ef + sq);
        r.value = c_ab_ * r.x5 + c_be_ * r.x6;

        // Multipliers from block stationarity (lam of the b1 row is c_ab,
        // lam4 of the b2 row is c_be / sqrt(disc)).
        r.lam0 = c_ab_ * std::max(0.0, v + r.x2 - a1);
        r.lam2 = cap < ef ? (c_be_ / std::max(sq, 1e-300)) * (ef - x4s) : 0.0;
        r.feasible = true;
        return r;
    }

    // Envelope gradient of the reduced value function: only the rows that
    // depend on the site contribute, weighted by their multipliers.
    Vec2 value_grad(Vec2 w, const Aux& a) const {
        Vec2 g{0.0, 0.0};
        const double dai = w.norm();
        if (dai > 1e-12) {
            const double c = a.lam0 * p_.rho_ai / l0_ * std::pow(dai, p_.rho_ai - 2.0);
            g.x += c * w.x;
            g.y += c * w.y;
        }
        const Vec2 ub = w - p_.bob;
        const double dib = ub.norm();
        if (dib > 1e-12) {
            const double c = a.lam1 * p_.rho_iu / l0_ * std::pow(dib, p_.rho_iu - 2.0);
            g.x += c * ub.x;
            g.y += c * ub.y;
        }
        g.x -= a.lam2 * tg_.x / l0_;
        g.y -= a.lam2 * tg_.y / l0_;
        return g;
    }

    // Scaled first-order residual, relative to the objective magnitude: the
    // projected site gradient per meter (a face only absorbs the component
    // pushing out of the box) and the scalar-profile residual per unit a_ib.
    double kkt_residual(Vec2 w, const Aux& a, Vec2 gr) const {
        const auto coord = [&](double v, double lo, double hi, double g, bool frz) {
            if (frz || lo >= hi) return 0.0;
            if (v <= lo) return std::max(0.0, -g);
            if (v >= hi) return std::max(0.0, g);
            return std::abs(g);
        };
        const double obj = std::max(std::abs(a.value), 1e-300);
        const double res = std::max(coord(w.x, box_.x_min, box_.x_max, gr.x, frozen_[0]),
                                    coord(w.y, box_.y_min, box_.y_max, gr.y, frozen_[1]));
        return std::max(res, a.stat_res * a.x3) / obj;
    }

    // Pulls the converged iterate onto the exact feasible set of the model:
    // clamp the site into the box, then restore every auxiliary bound by
    // one-sided rounding away from the objective.
    void round_feasible(double* xf) const {
        if (!frozen_[0]) xf[0] = std::min(std::max(xf[0], box_.x_min), box_.x_max);
        if (!frozen_[1]) xf[1] = std::min(std::max(xf[1], box_.y_min), box_.y_max);
        const Vec2 w{xf[0], xf[1]};
        xf[2] = std::max(xf[2], std::pow(w.norm(), p_.rho_ai) / l0_);
        xf[3] = std::max(xf[3], std::pow(distance(w, p_.bob), p_.rho_iu) / l0_);
        const double cap =
            (t0_ + tg_.x * (w.x - at_.omega.x) + tg_.y * (w.y - at_.omega.y)) / l0_;
        xf[4] = std::min(xf[4], cap);
        const double a1 = at_.aux.a_ai, a2 = at_.aux.a_ib;
        const double du = xf[2] - a1, dv = xf[3] - a2;
        xf[5] = std::max(xf[5], xf[2] * xf[3] + 0.5 * du * du + 0.5 * dv * dv);
        const double ef = at_.aux.a_ie + at_.aux.a_be;
        const double dd4 = xf[4] - ef;
        const double disc = std::max(0.0, xf[4] * (2.0 * ef - xf[4]) - 2.0 * xf[3]);
        xf[6] = std::max(xf[6], (dd4 * dd4 + 2.0 * xf[3]) / (ef + std::sqrt(disc)));
    }
};

PlacementResult single_result(const SystemParams& p, const outage::QuantilePair& q,
                              Vec2 omega, Vec2 omega_e) {
    PlacementResult r;
    r.omega_i = omega;
    r.objective = ratio_or_neg_inf(p, omega, omega_e, q);
    r.iterations = 1;
    r.converged = true;
    return r;
}

// Shared grid scan: evaluates `score` on a regular lattice over `box` and
// returns the first argmax. Per-point scores land in disjoint slots, so the
// OpenMP variant is bit-identical to the serial reference.
template <typename ScoreFn>
std::pair<Vec2, double> grid_argmax(const Rect& box, double step, Exec exec,
                                    ScoreFn&& score) {
    if (!(step > 0.0)) throw std::invalid_argument("grid search: grid_step must be > 0");
    const auto nx = static_cast<std::int64_t>((box.x_max - box.x_min) / step + 1e-9) + 1;
    const auto ny = static_cast<std::int64_t>((box.y_max - box.y_min) / step + 1e-9) + 1;
    const std::int64_t total = nx * ny;
    std::vector<double> vals(static_cast<std::size_t>(total));
    auto point_at = [&](std::int64_t k) -> Vec2 {
        const std::int64_t ix = k % nx, iy = k / nx;
        return {box.x_min + static_cast<double>(ix) * step,
                box.y_min + static_cast<double>(iy) * step};
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t k = 0; k < total; ++k) vals[static_cast<std::size_t>(k)] = score(point_at(k));
    } else {
        for (std::int64_t k = 0; k < total; ++k) vals[static_cast<std::size_t>(k)] = score(point_at(k));
    }
    std::int64_t best = 0;
    for (std::int64_t k = 1; k < total; ++k)
        if (vals[static_cast<std::size_t>(k)] > vals[static_cast<std::size_t>(best)]) best = k;
    return {point_at(best), vals[static_cast<std::size_t>(best)]};
}

} // namespace

double ratio_objective(const SystemParams& p, Vec2 omega_i, Vec2 omega_e,
                       const outage::QuantilePair& q) {
    if (distance(omega_i, omega_e) < kMinEveDistance)
        throw DegenerateGeometryError("ratio_objective: site within 0.5 m of eavesdropper");
    const double l_ai = channel::path_gain(omega_i.norm(), p.rho_ai, p.reference_gain());
    const double l_ib = link_budget(p, omega_i, p.bob, p.rho_iu);
    const double l_ie = link_budget(p, omega_i, omega_e, p.rho_iu);
    return (p.noise_power + q.alpha_b * l_ai * l_ib) /
           (p.noise_power + q.alpha_e * l_ai * l_ie);
}

StageRates stage_rates(const SystemParams& p, Vec2 omega_i, Vec2 omega_e,
                       const outage::QuantilePair& q) {
    const double l_ai = channel::path_gain(omega_i.norm(), p.rho_ai, p.reference_gain());
    const double l_ib = link_budget(p, omega_i, p.bob, p.rho_iu);
    const double l_ie = link_budget(p, omega_i, omega_e, p.rho_iu);
    StageRates r;
    r.r_b = std::log2(1.0 + q.alpha_b * l_ai * l_ib / p.noise_power);
    r.r_e = std::log2(1.0 + q.alpha_e * l_ai * l_ie / p.noise_power);
    return r;
}

AuxVars exact_aux(const SystemParams& p, Vec2 omega_i, Vec2 omega_e) {
    if (distance(omega_i, omega_e) < kMinEveDistance)
        throw DegenerateGeometryError("exact_aux: site within 0.5 m of eavesdropper");
    AuxVars a;
    a.a_ai = 1.0 / channel::path_gain(omega_i.norm(), p.rho_ai, p.reference_gain());
    a.a_ib = 1.0 / link_budget(p, omega_i, p.bob, p.rho_iu);
    a.a_ie = 1.0 / link_budget(p, omega_i, omega_e, p.rho_iu);
    a.a_ab = a.a_ai * a.a_ib;
    a.a_be = a.a_ib / a.a_ie;
    return a;
}

double surrogate_objective(const SystemParams& p, const outage::QuantilePair& q,
                           const AuxVars& aux) {
    if (!(q.alpha_b > 0.0))
        throw std::invalid_argument("surrogate_objective: alpha_b must be > 0");
    return (p.noise_power / q.alpha_b) * aux.a_ab + (q.alpha_e / q.alpha_b) * aux.a_be;
}

SubproblemResult sca_subproblem(const SystemParams& p, const outage::QuantilePair& q,
                                const SubproblemPoint& at, Vec2 omega_e) {
    return SubSolver(p, q, at, omega_e).solve();
}

PlacementResult sca_location(const SystemParams& p, const outage::QuantilePair& q,
                             Vec2 init, Vec2 omega_e, double eps, int max_iter) {
    p.validate();
    if (p.irs_region.is_point()) {
        PlacementResult r = single_result(p, q, p.irs_region.centroid(), omega_e);
        r.trace.push_back(surrogate_objective(p, q, exact_aux(p, r.omega_i, omega_e)));
        return r;
    }
    Vec2 omega = p.irs_region.clamp(init);
    PlacementResult r;
    r.converged = false;
    double prev = surrogate_objective(p, q, exact_aux(p, omega, omega_e));
    r.trace.push_back(prev);
    for (int l = 0; l < max_iter; ++l) {
        const SubproblemPoint at{omega, exact_aux(p, omega, omega_e)};
        const SubproblemResult step = sca_subproblem(p, q, at, omega_e);
        const double move_sq = (step.point.omega - omega).squared_norm();
        r.iterations = l + 1;
        double next;
        try {
            next = surrogate_objective(p, q, exact_aux(p, step.point.omega, omega_e));
        } catch (const DegenerateGeometryError&) {
            break; // proposed site degenerate; keep the last sound iterate
        }
        if (next > prev) {
            // Relinearization can only raise the exact value by rounding
            // noise, and only at a fixed point: converged.
            r.converged = true;
            break;
        }
        omega = step.point.omega;
        prev = next;
        r.trace.push_back(next);
        if (move_sq <= eps) {
            r.converged = true;
            break;
        }
    }
    r.omega_i = omega;
    r.objective = ratio_objective(p, omega, omega_e, q);
    return r;
}

PlacementResult sca_location_multistart(const SystemParams& p,
                                        const outage::QuantilePair& q, Vec2 omega_e,
                                        double eps) {
    const Rect& b = p.irs_region;
    std::vector<Vec2> starts = {b.centroid(),
                                {b.x_min, b.y_min},
                                {b.x_min, b.y_max},
                                {b.x_max, b.y_min},
                                {b.x_max, b.y_max}};
    // Basin selection. Each refinement step can only change the
    // eavesdropper term by a tiny fraction (the under-estimator's quadratic
    // penalty), so a run started in the wrong basin stays there; a coarse
    // scan of the exact surrogate supplies a start in the best one. The
    // pitch must resolve the flat valley around the optimum, where nearly
    // every site is a refinement fixed point.
    {
        constexpr double kPitch = 0.5;
        const int nx = 1 + static_cast<int>(std::ceil((b.x_max - b.x_min) / kPitch));
        const int ny = 1 + static_cast<int>(std::ceil((b.y_max - b.y_min) / kPitch));
        double s_best = std::numeric_limits<double>::infinity();
        Vec2 w_best{};
        for (int i = 0; i < nx; ++i) {
            for (int j = 0; j < ny; ++j) {
                const Vec2 w{nx == 1 ? b.x_min : b.x_min + (b.x_max - b.x_min) * i / (nx - 1.0),
                             ny == 1 ? b.y_min : b.y_min + (b.y_max - b.y_min) * j / (ny - 1.0)};
                try {
                    const double s = surrogate_objective(p, q, exact_aux(p, w, omega_e));
                    if (s < s_best) {
                        s_best = s;
                        w_best = w;
                    }
                } catch (const DegenerateGeometryError&) {
                }
            }
        }
        if (s_best < std::numeric_limits<double>::infinity()) starts.push_back(w_best);
    }
    PlacementResult best;
    bool have = false;
    for (const Vec2& s0 : starts) {
        PlacementResult r;
        try {
            r = sca_location(p, q, s0, omega_e, eps);
        } catch (const DegenerateGeometryError&) {
            continue; // start collides with the eavesdropper; other starts cover
        }
        if (!have || r.trace.back() < best.trace.back()) {
            best = r;
            have = true;
        }
    }
    if (!have)
        throw DegenerateGeometryError("sca_location_multistart: no admissible start");
    return best;
}

PlacementResult global_search_location(const SystemParams& p,
                                       const outage::QuantilePair& q, double grid_step,
                                       Vec2 omega_e, Exec exec) {
    p.validate();
    // Exhaustive reference for the same deployment functional the successive
    // refinement minimizes (the exact lifted surrogate), so the two methods
    // are directly comparable. Scores are negated for the shared argmax scan.
    auto [omega, value] = grid_argmax(p.irs_region, grid_step, exec, [&](Vec2 w) {
        try {
            return -surrogate_objective(p, q, exact_aux(p, w, omega_e));
        } catch (const DegenerateGeometryError&) {
            return -std::numeric_limits<double>::infinity();
        }
    });
    PlacementResult r = single_result(p, q, omega, omega_e);
    r.trace.push_back(-value);
    return r;
}

Vec2 worst_eve(Vec2 omega_i, const Rect& eve_region) {
    eve_region.validate();
    return eve_region.clamp(omega_i);
}

PlacementResult maxmin_location(const SystemParams& p, const outage::QuantilePair& q,
                                double grid_step, const Rect& eve_region, Exec exec) {
    p.validate();
    // Outer grid argmax of the inner-minimized deployment functional: the
    // worst eavesdropper for a site is its clamp onto the area (nearest
    // point), and sites are scored through the same surrogate the refinement
    // and the exhaustive reference optimize, so a degenerate (point) area
    // reduces exactly to global_search_location.
    auto [omega, value] = grid_argmax(p.irs_region, grid_step, exec, [&](Vec2 w) {
        try {
            return -surrogate_objective(p, q,
                                        exact_aux(p, w, worst_eve(w, eve_region)));
        } catch (const DegenerateGeometryError&) {
            return -std::numeric_limits<double>::infinity();
        }
    });
    PlacementResult r = single_result(p, q, omega, worst_eve(omega, eve_region));
    r.trace.push_back(-value);
    r.worst_eve = worst_eve(omega, eve_region);
    return r;
}

} // namespace irsloc::placement
