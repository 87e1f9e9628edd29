// SPDX-License-Identifier: Apache-2.0
//
// irsloc — joint reflecting-surface deployment, transmit beamforming and
// reflect-phase design for outage-constrained physical-layer secrecy.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef IRSLOC_SECRECY_SDP_HPP
#define IRSLOC_SECRECY_SDP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "irsloc/channel.hpp"
#include "irsloc/conic.hpp"

// Stage-2 convex machinery. With the surface deployed, the Bob cascade
// G_AB is known exactly while Eve's cascade is only known in distribution:
// G_AE = Gbar + delta * U with U standard complex normal. The secrecy
// constraint C_B - C_E >= R then becomes a Gaussian chance constraint on
// the quadratic form u^H A u + 2 Re{u^H a} <= c1, which a Bernstein-type
// concentration bound turns into deterministic conic rows. This module
// builds those rows, solves the resulting power-minimization and
// phase-feasibility programs through the conic backend, drives the rate
// bisections, and recovers rank-one solutions from the lifted matrices.
namespace irsloc::secrecy {

using channel::Cmat;
using channel::Cvec;

// Coefficients of the chance-constrained secrecy inequality: the event
// u^H a_mat u + 2 Re{u^H a_vec} > c1 (u standard complex normal of length
// M*N_t) is the secrecy outage, and rho_bar = -ln(p_out) is the exponent
// that caps its probability.
struct BtiTerms {
    Cmat a_mat;          // delta^2 (F^T kron Q), Hermitian PSD
    Cvec a_vec;          // delta   (F^T kron Q) vec(Gbar)
    double c1 = 0.0;     // 2^-R (sigma^2 + S_Bob) - sigma^2 - S_EveMean
    double rho_bar = 0.0;
};

// Assembles the terms for given covariances. F is the N_t x N_t transmit
// covariance, Q the M x M lifted phase matrix, g_ab the realized Bob
// cascade. Throws std::invalid_argument on dimension mismatch.
BtiTerms build_bti(const Cmat& f_cov, const Cmat& q_cov,
                   const channel::EveStatModel& eve, const Cmat& g_ab,
                   double rate, double sigma_sq, double p_out);

// Deterministic left-hand side of the Bernstein bound minus c1:
// Tr(A) + sqrt(2 rho) sqrt(|A|_F^2 + 2|a|^2) + rho lambda+(A) - c1.
// The chance constraint is certified iff this is <= 0.
double bti_margin(const BtiTerms& terms);

// Largest rate whose Bernstein margin is nonpositive for the given pair of
// covariances; may be negative when Eve's certified rate exceeds Bob's.
// Uses the closed forms Tr(A) = d^2 Tr(F)Tr(Q), |A|_F = d^2 |F|_F |Q|_F,
// lambda+(A) = d^2 lambdamax(F) lambdamax(Q), |a| = d |Q Gbar F|_F, so no
// Kronecker product is materialized.
double certified_rate(const Cmat& f_cov, const Cmat& q_cov,
                      const channel::EveStatModel& eve, const Cmat& g_ab,
                      double sigma_sq, double p_out);

// Transmit-power minimization at a fixed rate and fixed Q: minimize Tr(F)
// over F PSD subject to the linearized Bernstein row, the slack
// second-order cone |(svec(A); sqrt(2) a)| <= zeta and the slack matrix
// inequality upsilon I - A >= 0, upsilon >= 0. The instance is scaled by
// 1/sigma^2 before it reaches the solver; reported slacks are unscaled.
struct PmSolution {
    conic::SolveStatus status = conic::SolveStatus::failure;
    Cmat f_cov;              // transmit covariance (watts)
    double tx_power = 0.0;   // Tr(f_cov)
    double zeta = 0.0;       // Frobenius-slack at the optimum
    double upsilon = 0.0;    // top-eigenvalue slack at the optimum
    double gap = 0.0;        // solver duality-gap certificate
    std::string detail;
};
PmSolution solve_pm_sdp(const Cmat& q_cov, const channel::EveStatModel& eve,
                        const Cmat& g_ab, double rate, double sigma_sq,
                        double p_out);

// Largest rate (within eps) whose power-minimization solution exists with
// Tr(F) <= power_budget. lo_infeasible reports the degenerate case where
// even r_lo fails, in which case rate 0 and F = 0 are returned.
struct BeamformerResult {
    double rate = 0.0;
    Cmat f_cov;            // power-minimizing covariance at the accepted rate
    double rank_gap = 0.0; // second-to-first eigenvalue ratio of f_cov
    bool lo_infeasible = false;
    int probes = 0;        // SDP solves spent
};
BeamformerResult bisect_beamformer(const Cmat& q_cov,
                                   const channel::EveStatModel& eve,
                                   const Cmat& g_ab, double power_budget,
                                   double sigma_sq, double p_out, double r_lo,
                                   double r_hi, double eps = 1e-3);

// Projection-based rank-one reduction F -> f f^H that preserves the Bob
// quadratic h_b^H F h_b exactly while never increasing the trace or any
// other quadratic form (F - f f^H stays PSD). Throws
// irsloc::DegenerateGeometryError when F^(1/2) h_b vanishes.
Cvec rank_one_extract_f(const Cmat& f_cov, const Cvec& h_b);

// Phase-shift feasibility at fixed F: find Q PSD with unit diagonal
// satisfying the Bernstein rows. The unit diagonal is enforced by exact
// equality elimination. The returned Q is the deepest point: the Bernstein
// row is relaxed by a slack variable and the slack minimized, so feasible
// instances come back with the most negative margin the set allows.
struct PhaseFeasibility {
    conic::SolveStatus status = conic::SolveStatus::failure;
    Cmat q_cov;
    double slack = 0.0; // minimized Bernstein-row slack, sigma-normalized
    double gap = 0.0;
    std::string detail;
    bool feasible() const {
        return status == conic::SolveStatus::optimal && slack <= 1e-7;
    }
};
PhaseFeasibility solve_phase_feasibility(const Cmat& f_cov,
                                         const channel::EveStatModel& eve,
                                         const Cmat& g_ab, double rate,
                                         double sigma_sq, double p_out);

// Largest rate (within eps) whose phase-feasibility program admits a Q.
struct PhaseResult {
    double rate = 0.0;
    Cmat q_cov;          // lifted solution at the accepted rate
    double rank_gap = 0.0;
    bool lo_infeasible = false;
    int probes = 0;
};
PhaseResult bisect_phase(const Cmat& f_cov, const channel::EveStatModel& eve,
                         const Cmat& g_ab, double sigma_sq, double p_out,
                         double r_lo, double r_hi, double eps = 1e-3);

// Unit-modulus recovery from a lifted Q. First sequential rank-one
// relaxation: re-solve the feasibility program with the extra row
// u^H Q u >= w Tr(Q) (u the previous principal eigenvector), stepping w
// toward 1 and halving the step on infeasibility. If the relaxation stalls
// or the recovered phases certify less than rate_target - 0.05 bits, fall
// back to Gaussian randomization (1000 seeded candidates, per-element phase
// projection). degraded flags the case where both paths fall short; phi is
// then still the best candidate found.
struct PhaseRecovery {
    Cvec phi;            // exactly unit-modulus entries
    double rate = 0.0;   // certified rate of phi (clamped at 0)
    bool rank_one = false;   // relaxation reached (near-)rank-one
    bool randomized = false; // fallback produced the returned phi
    bool degraded = false;
    int srocr_iters = 0;
};
PhaseRecovery srocr_rank_one(const Cmat& q_star, const Cmat& f_cov,
                             const channel::EveStatModel& eve,
                             const Cmat& g_ab, double rate_target,
                             double sigma_sq, double p_out,
                             std::uint64_t seed);

// Pure Gaussian-randomization recovery (the benchmark path that skips the
// sequential relaxation entirely): the best of 1000 seeded unit-modulus
// projections of draws from the lifted covariance.
PhaseRecovery gaussian_randomization(const Cmat& q_star, const Cmat& f_cov,
                                     const channel::EveStatModel& eve,
                                     const Cmat& g_ab, double rate_target,
                                     double sigma_sq, double p_out,
                                     std::uint64_t seed);

// Provable envelope of the Bob rate for any feasible (F, Q):
// S_B <= lambdamax(Q) Tr(F) smax(G)^2 <= M P smax(G)^2, so the secrecy rate
// can never exceed log2(1 + M P smax(G)^2 / sigma^2). Used as the bisection
// upper bracket.
double rate_upper_bound(const Cmat& g_ab, double power_budget, int n_irs,
                        double sigma_sq);

// One stage-2 design: beamformer, phases, the certified rate they achieve,
// how far from rank one the lifted solutions were, and the alternation
// trace of certified rates.
struct StageTwoSolution {
    Cvec f_vec;                // ||f||^2 <= P + 1e-9
    Cvec phi_vec;              // each |phi_i| in [1 - 1e-9, 1 + 1e-9]
    double rate = 0.0;
    double f_mat_rank_gap = 0.0;
    double q_mat_rank_gap = 0.0;
    std::vector<double> trace; // certified rate after every alternation
    bool phase_degraded = false; // some phase recovery missed its target
};

} // namespace irsloc::secrecy

#endif // IRSLOC_SECRECY_SDP_HPP
