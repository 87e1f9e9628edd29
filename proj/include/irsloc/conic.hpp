// SPDX-License-Identifier: Apache-2.0
//
// irsloc — joint reflecting-surface deployment, transmit beamforming and
// reflect-phase design for outage-constrained physical-layer secrecy.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef IRSLOC_CONIC_HPP
#define IRSLOC_CONIC_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace irsloc::conic {

using Cmat = Eigen::MatrixXcd;
using Rvec = Eigen::VectorXd;
using Rmat = Eigen::MatrixXd;

// Real coordinates of a Hermitian n x n matrix: the n diagonal entries
// followed, column-major over i < j, by sqrt(2)*Re and sqrt(2)*Im of each
// off-diagonal entry. The sqrt(2) weight makes the packing an isometry:
// Tr(A B) = svec(A) . svec(B) for Hermitian A, B.
int svec_dim(int n);
void svec_pack(const Cmat& s, double* out);
Cmat svec_unpack(const double* in, int n);

// Basis matrix of one svec coordinate (unpack of a unit vector).
Cmat svec_basis(int n, int k);

// A conic program over a real decision vector x laid out as the svec
// coordinates of each Hermitian PSD block, in order, followed by free
// scalars. Minimize c.x subject to every listed constraint and to each
// block being PSD.
struct SdpInstance {
    std::vector<int> psd_dims; // Hermitian PSD variable blocks
    int n_scalars = 0;         // trailing free scalars

    Rvec c; // objective, size n_vars()

    struct LinEq { // a.x == b
        Rvec a;
        double b = 0.0;
    };
    struct LinRow { // a.x <= b
        Rvec a;
        double b = 0.0;
    };
    struct Soc { // |A x + b| <= at.x + bt
        Rmat a;
        Rvec b;
        Rvec at;
        double bt = 0.0;
    };
    struct Lmi { // base + sum_k x[idx[k]] * coef[k]  >= 0 (PSD), Hermitian
        int dim = 0;
        Cmat base;
        std::vector<int> idx;
        std::vector<Cmat> coef;
    };

    std::vector<LinEq> equalities;
    std::vector<LinRow> rows;
    std::vector<Soc> socs;
    std::vector<Lmi> lmis;

    int n_vars() const;
    // First coordinate of PSD block b (and helpers for builders).
    int block_offset(int b) const;

    // Throws std::invalid_argument naming the offending constraint on any
    // dimension inconsistency.
    void validate() const;
};

enum class SolveStatus { optimal, infeasible, failure };

struct Solution {
    SolveStatus status = SolveStatus::failure;
    Rvec x;                 // full coordinate vector (blocks + scalars)
    double objective = 0.0; // c.x at x
    double gap = 0.0;       // certified duality-gap bound at termination
    std::string detail;     // human-readable failure/infeasibility note
};

struct SolveOptions {
    double gap_tol = 1e-8;  // stop when the gap bound <= gap_tol*(1+|obj|)
    int max_rounds = 4000;  // total Newton iterations across both phases
};

// Two-phase path-following barrier method. Equalities are eliminated
// exactly through a nullspace basis; phase 1 drives a uniform slack on all
// cone constraints negative (its certified minimum being positive proves
// infeasibility), phase 2 follows the central path until the m/t gap bound
// meets the tolerance.
Solution solve(const SdpInstance& inst, const SolveOptions& opt = {});

} // namespace irsloc::conic

#endif // IRSLOC_CONIC_HPP
