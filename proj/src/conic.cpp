// SPDX-License-Identifier: Apache-2.0
//
// irsloc — joint reflecting-surface deployment, transmit beamforming and
// reflect-phase design for outage-constrained physical-layer secrecy.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
//
// A dense two-phase primal barrier method. The problems this library emits
// are tiny (a handful of Hermitian blocks of dimension <= 8 and a few dozen
// real coordinates), so the implementation favours robustness and clarity:
// equalities are eliminated exactly through an orthonormal nullspace basis,
// every cone contributes its canonical self-concordant barrier, and the
// central path is followed with plain damped Newton steps. The certified
// duality-gap bound is the usual barrier-parameter-over-t estimate with a
// small inflation covering the inexactness of the final centering.

#include "irsloc/conic.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace irsloc::conic {

namespace {

using Cplx = std::complex<double>;

constexpr double kSqrt2 = 1.4142135623730951;

// ---------------------------------------------------------------------
// Reduced cone domains. All affine data is expressed in the free
// coordinates that remain after equality elimination. Second-order cones
// never materialize the (possibly long) stacked vector u = A z + b during
// iterations: the Gram matrix A^T A, the vector A^T b and the scalar b^T b
// are cached once, which makes every barrier evaluation O(dim(z)^2).
// ---------------------------------------------------------------------

struct RowDom { // a.z <= b
    Rvec a;
    double b = 0.0;
};

struct SocDom { // |A z + b| <= at.z + bt, cached as Gram data
    Rmat ata;
    Rvec atb;
    double btb = 0.0;
    Rvec at;
    double bt = 0.0;
};

struct LmiDom { // base + sum_k z[idx[k]] coef[k] >= 0
    int dim = 0;
    Cmat base;
    std::vector<int> idx;
    std::vector<Cmat> coef;
};

struct Cones {
    std::vector<RowDom> rows;
    std::vector<SocDom> socs;
    std::vector<LmiDom> lmis;
    double nu = 0.0; // total barrier parameter

    void finish_nu() {
        nu = static_cast<double>(rows.size()) + 2.0 * static_cast<double>(socs.size());
        for (const auto& l : lmis) nu += static_cast<double>(l.dim);
    }
};

struct Eval {
    bool interior = false;
    double phi = 0.0;
    Rvec grad;
    Rmat hess;
};

Cmat lmi_matrix(const LmiDom& l, const Rvec& z) {
    Cmat s = l.base;
    for (std::size_t k = 0; k < l.idx.size(); ++k) s += z[l.idx[k]] * l.coef[k];
    // Symmetrize so accumulated rounding cannot trip the factorization.
    return 0.5 * (s + s.adjoint().eval());
}

Eval eval_barrier(const Cones& cones, const Rvec& z, bool want_h) {
    const int m = static_cast<int>(z.size());
    Eval e;
    e.grad = Rvec::Zero(m);
    if (want_h) e.hess = Rmat::Zero(m, m);

    for (const auto& r : cones.rows) {
        const double slack = r.b - r.a.dot(z);
        if (!(slack > 0.0)) return e;
        e.phi -= std::log(slack);
        e.grad += r.a / slack;
        if (want_h) e.hess += (r.a * r.a.transpose()) / (slack * slack);
    }

    for (const auto& s : cones.socs) {
        const double t = s.at.dot(z) + s.bt;
        const double uu = z.dot(s.ata * z) + 2.0 * s.atb.dot(z) + s.btb;
        const double d = t * t - uu;
        if (!(t > 0.0) || !(d > 0.0)) return e;
        e.phi -= std::log(d);
        const Rvec w = s.ata * z + s.atb - t * s.at; // A^T u - t at
        e.grad += (2.0 / d) * w;
        if (want_h) {
            e.hess += (2.0 / d) * (s.ata - s.at * s.at.transpose());
            e.hess += (4.0 / (d * d)) * (w * w.transpose());
        }
    }

    for (const auto& l : cones.lmis) {
        const Cmat s = lmi_matrix(l, z);
        Eigen::LLT<Cmat> llt(s);
        if (llt.info() != Eigen::Success) return e;
        double logdet = 0.0;
        for (int k = 0; k < l.dim; ++k) {
            const double piv = llt.matrixL()(k, k).real();
            if (!(piv > 0.0)) return e;
            logdet += std::log(piv);
        }
        e.phi -= 2.0 * logdet;
        const Cmat sinv = llt.solve(Cmat::Identity(l.dim, l.dim));
        std::vector<Cmat> w(l.idx.size());
        for (std::size_t k = 0; k < l.idx.size(); ++k) {
            w[k] = sinv * l.coef[k];
            e.grad[l.idx[k]] -= w[k].trace().real();
        }
        if (want_h) {
            for (std::size_t j = 0; j < l.idx.size(); ++j) {
                for (std::size_t k = j; k < l.idx.size(); ++k) {
                    const double hjk =
                        w[j].transpose().cwiseProduct(w[k]).sum().real();
                    e.hess(l.idx[j], l.idx[k]) += hjk;
                    if (k != j) e.hess(l.idx[k], l.idx[j]) += hjk;
                }
            }
        }
    }

    e.interior = true;
    return e;
}

bool is_interior(const Cones& cones, const Rvec& z) {
    return eval_barrier(cones, z, false).interior;
}

// Safeguard ball |z| <= radius, expressed as a second-order-cone domain.
// Barrier subproblems are only guaranteed to have minimizers when the
// feasible set is bounded (otherwise -log slack diverges to -infinity along
// recession directions, e.g. for the phase-1 slack program), so both phases
// run inside a ball far larger than any solution of a sanely scaled
// problem. A solution pressing against it is reported as a failure.
void add_ball(Cones& cones, int m, double radius) {
    SocDom ball;
    ball.ata = Rmat::Identity(m, m);
    ball.atb = Rvec::Zero(m);
    ball.btb = 0.0;
    ball.at = Rvec::Zero(m);
    ball.bt = radius;
    cones.socs.push_back(std::move(ball));
    cones.finish_nu();
}

// Damped Newton centering of z for the objective tvec.z + phi(z). Returns
// true once the Newton decrement certifies closeness to the central point;
// false when the iteration budget runs out or a step collapses while the
// decrement is still large.
bool center(const Cones& cones, const Rvec& tvec, Rvec& z, int& rounds) {
    const int m = static_cast<int>(z.size());
    int iters = 250; // per-stage cap so one stage cannot starve the rest
    while (rounds > 0 && iters > 0) {
        --rounds;
        --iters;
        const Eval e = eval_barrier(cones, z, true);
        if (!e.interior) return false; // should not happen: we only move inside
        const Rvec g = tvec + e.grad;

        // Factor the Hessian, escalating a tiny ridge if rounding made it
        // numerically indefinite.
        Rvec dz;
        double ridge = 0.0;
        const double scale = std::max(1.0, e.hess.diagonal().cwiseAbs().maxCoeff());
        for (int attempt = 0; attempt < 8; ++attempt) {
            Rmat h = e.hess;
            if (ridge > 0.0) h += ridge * Rmat::Identity(m, m);
            Eigen::LDLT<Rmat> ldlt(h);
            if (ldlt.info() == Eigen::Success) {
                dz = -ldlt.solve(g);
                if (dz.allFinite() && g.dot(dz) < 0.0) break;
            }
            dz.resize(0);
            ridge = (ridge == 0.0) ? 1e-14 * scale : 100.0 * ridge;
        }
        if (dz.size() == 0) return false;

        const double lambda_sq = -g.dot(dz);
        if (lambda_sq <= 1e-2) return true; // Newton decrement <= 0.1

        // Backtrack to stay strictly interior, then Armijo on the
        // barrier-augmented objective.
        const double f0 = tvec.dot(z) + e.phi;
        double step = 1.0;
        bool moved = false;
        for (int cut = 0; cut < 60; ++cut) {
            const Rvec zt = z + step * dz;
            const Eval trial = eval_barrier(cones, zt, false);
            if (trial.interior &&
                tvec.dot(zt) + trial.phi <= f0 + 0.25 * step * g.dot(dz)) {
                z = zt;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) return lambda_sq <= 1e-2;
    }
    return false;
}

// Append a uniform slack coordinate that relaxes every cone: rows become
// a.z - s <= b, second-order cones gain s on the radius side, and matrix
// inequalities are shifted by s I. Any point with s < 0 is then strictly
// interior for the original cones.
Cones with_slack(const Cones& in, int m) {
    Cones out;
    out.rows.reserve(in.rows.size());
    for (const auto& r : in.rows) {
        RowDom rr;
        rr.a = Rvec::Zero(m + 1);
        rr.a.head(m) = r.a;
        rr.a[m] = -1.0;
        rr.b = r.b;
        out.rows.push_back(std::move(rr));
    }
    for (const auto& s : in.socs) {
        SocDom ss;
        ss.ata = Rmat::Zero(m + 1, m + 1);
        ss.ata.topLeftCorner(m, m) = s.ata;
        ss.atb = Rvec::Zero(m + 1);
        ss.atb.head(m) = s.atb;
        ss.btb = s.btb;
        ss.at = Rvec::Zero(m + 1);
        ss.at.head(m) = s.at;
        ss.at[m] = 1.0;
        ss.bt = s.bt;
        out.socs.push_back(std::move(ss));
    }
    for (const auto& l : in.lmis) {
        LmiDom ll = l;
        ll.idx.push_back(m);
        ll.coef.push_back(Cmat::Identity(l.dim, l.dim));
        out.lmis.push_back(std::move(ll));
    }
    out.finish_nu();
    return out;
}

// Smallest slack that makes z strictly interior for the slack-extended
// cones, computed from the raw violations of the original ones.
double needed_slack(const Cones& cones, const Rvec& z) {
    double s = 0.0;
    for (const auto& r : cones.rows) s = std::max(s, r.a.dot(z) - r.b);
    for (const auto& soc : cones.socs) {
        const double t = soc.at.dot(z) + soc.bt;
        const double uu = z.dot(soc.ata * z) + 2.0 * soc.atb.dot(z) + soc.btb;
        s = std::max(s, std::sqrt(std::max(0.0, uu)) - t);
    }
    for (const auto& l : cones.lmis) {
        Eigen::SelfAdjointEigenSolver<Cmat> es(lmi_matrix(l, z), Eigen::EigenvaluesOnly);
        s = std::max(s, -es.eigenvalues().minCoeff());
    }
    return s;
}

// Nonstrict feasibility check used when equality elimination pins every
// coordinate and no barrier iteration can run.
bool feasible_nonstrict(const Cones& cones, const Rvec& z) {
    constexpr double kTol = 1e-9;
    for (const auto& r : cones.rows)
        if (r.a.dot(z) - r.b > kTol * (1.0 + std::abs(r.b))) return false;
    for (const auto& soc : cones.socs) {
        const double t = soc.at.dot(z) + soc.bt;
        const double uu = z.dot(soc.ata * z) + 2.0 * soc.atb.dot(z) + soc.btb;
        if (std::sqrt(std::max(0.0, uu)) - t > kTol * (1.0 + std::abs(t))) return false;
    }
    for (const auto& l : cones.lmis) {
        const Cmat s = lmi_matrix(l, z);
        Eigen::SelfAdjointEigenSolver<Cmat> es(s, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -kTol * (1.0 + s.norm())) return false;
    }
    return true;
}

} // namespace

// -------------------------------------------------------------------------
// svec packing
// -------------------------------------------------------------------------

int svec_dim(int n) { return n * n; }

void svec_pack(const Cmat& s, double* out) {
    const int n = static_cast<int>(s.rows());
    int p = n;
    for (int k = 0; k < n; ++k) out[k] = s(k, k).real();
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            out[p++] = kSqrt2 * s(i, j).real();
            out[p++] = kSqrt2 * s(i, j).imag();
        }
    }
}

Cmat svec_unpack(const double* in, int n) {
    Cmat s(n, n);
    int p = n;
    for (int k = 0; k < n; ++k) s(k, k) = in[k];
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            const Cplx v(in[p] / kSqrt2, in[p + 1] / kSqrt2);
            p += 2;
            s(i, j) = v;
            s(j, i) = std::conj(v);
        }
    }
    return s;
}

Cmat svec_basis(int n, int k) {
    Rvec e = Rvec::Zero(svec_dim(n));
    e[k] = 1.0;
    return svec_unpack(e.data(), n);
}

// -------------------------------------------------------------------------
// SdpInstance
// -------------------------------------------------------------------------

int SdpInstance::n_vars() const {
    int n = n_scalars;
    for (int d : psd_dims) n += svec_dim(d);
    return n;
}

int SdpInstance::block_offset(int b) const {
    int off = 0;
    for (int k = 0; k < b; ++k) off += svec_dim(psd_dims[k]);
    return off;
}

void SdpInstance::validate() const {
    const int n = n_vars();
    auto bad = [](const std::string& what) { throw std::invalid_argument("SdpInstance: " + what); };

    for (int d : psd_dims)
        if (d <= 0) bad("psd_dims entries must be positive");
    if (n_scalars < 0) bad("n_scalars must be nonnegative");
    if (c.size() != n) bad("objective c has wrong length");

    auto check_herm = [&bad](const Cmat& m, const std::string& where) {
        if ((m - m.adjoint()).norm() > 1e-10 * (1.0 + m.norm()))
            bad(where + " matrix is not Hermitian");
    };

    for (const auto& e : equalities)
        if (e.a.size() != n) bad("equality row has wrong length");
    for (const auto& r : rows)
        if (r.a.size() != n) bad("inequality row has wrong length");
    for (const auto& s : socs) {
        if (s.a.cols() != n) bad("second-order cone matrix has wrong column count");
        if (s.b.size() != s.a.rows()) bad("second-order cone offset has wrong length");
        if (s.at.size() != n) bad("second-order cone radius row has wrong length");
    }
    for (const auto& l : lmis) {
        if (l.dim <= 0) bad("matrix inequality dimension must be positive");
        if (l.base.rows() != l.dim || l.base.cols() != l.dim)
            bad("matrix inequality base has wrong shape");
        check_herm(l.base, "matrix inequality base");
        if (l.idx.size() != l.coef.size())
            bad("matrix inequality index/coefficient lists differ in length");
        for (std::size_t k = 0; k < l.idx.size(); ++k) {
            if (l.idx[k] < 0 || l.idx[k] >= n) bad("matrix inequality variable index out of range");
            if (l.coef[k].rows() != l.dim || l.coef[k].cols() != l.dim)
                bad("matrix inequality coefficient has wrong shape");
            check_herm(l.coef[k], "matrix inequality coefficient");
        }
    }
}

// -------------------------------------------------------------------------
// solve
// -------------------------------------------------------------------------

Solution solve(const SdpInstance& inst, const SolveOptions& opt) {
    inst.validate();
    const int n = inst.n_vars();

    Solution sol;

    // --- eliminate equalities: x = xp + nmap * y --------------------------
    Rmat nmap;
    Rvec xp;
    if (inst.equalities.empty()) {
        nmap = Rmat::Identity(n, n);
        xp = Rvec::Zero(n);
    } else {
        const int me = static_cast<int>(inst.equalities.size());
        Rmat emat(me, n);
        Rvec d(me);
        for (int i = 0; i < me; ++i) {
            emat.row(i) = inst.equalities[i].a.transpose();
            d[i] = inst.equalities[i].b;
        }
        Eigen::BDCSVD<Rmat> svd(emat, Eigen::ComputeFullV | Eigen::ComputeThinU);
        const double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
        const double tol = std::max(me, n) * std::numeric_limits<double>::epsilon() * smax;
        int rank = 0;
        while (rank < svd.singularValues().size() && svd.singularValues()[rank] > tol) ++rank;
        Rvec ud = svd.matrixU().leftCols(rank).transpose() * d;
        xp = svd.matrixV().leftCols(rank) *
             (ud.array() / svd.singularValues().head(rank).array()).matrix();
        if ((emat * xp - d).norm() > 1e-8 * (1.0 + d.norm())) {
            sol.status = SolveStatus::infeasible;
            sol.detail = "inconsistent equality constraints";
            return sol;
        }
        nmap = svd.matrixV().rightCols(n - rank);
    }
    const int m = static_cast<int>(nmap.cols());

    // --- reduce all cones to the free coordinates -------------------------
    Cones cones;
    for (const auto& r : inst.rows) {
        RowDom rr;
        rr.a = nmap.transpose() * r.a;
        rr.b = r.b - r.a.dot(xp);
        cones.rows.push_back(std::move(rr));
    }
    for (const auto& s : inst.socs) {
        const Rmat ay = s.a * nmap;
        const Rvec by = s.a * xp + s.b;
        SocDom ss;
        ss.ata = ay.transpose() * ay;
        ss.atb = ay.transpose() * by;
        ss.btb = by.squaredNorm();
        ss.at = nmap.transpose() * s.at;
        ss.bt = s.at.dot(xp) + s.bt;
        cones.socs.push_back(std::move(ss));
    }
    auto reduce_lmi = [&](int dim, const Cmat& base, const std::vector<int>& idx,
                          const std::vector<Cmat>& coef) {
        LmiDom ll;
        ll.dim = dim;
        ll.base = base;
        for (std::size_t k = 0; k < idx.size(); ++k) ll.base += xp[idx[k]] * coef[k];
        for (int j = 0; j < m; ++j) {
            Cmat cj = Cmat::Zero(dim, dim);
            bool nonzero = false;
            for (std::size_t k = 0; k < idx.size(); ++k) {
                const double w = nmap(idx[k], j);
                if (w != 0.0) {
                    cj += w * coef[k];
                    nonzero = true;
                }
            }
            if (nonzero && cj.norm() > 0.0) {
                ll.idx.push_back(j);
                ll.coef.push_back(std::move(cj));
            }
        }
        cones.lmis.push_back(std::move(ll));
    };
    for (const auto& l : inst.lmis) reduce_lmi(l.dim, l.base, l.idx, l.coef);
    for (std::size_t b = 0; b < inst.psd_dims.size(); ++b) {
        const int dim = inst.psd_dims[b];
        const int off = inst.block_offset(static_cast<int>(b));
        std::vector<int> idx(svec_dim(dim));
        std::vector<Cmat> coef(svec_dim(dim));
        for (int k = 0; k < svec_dim(dim); ++k) {
            idx[k] = off + k;
            coef[k] = svec_basis(dim, k);
        }
        reduce_lmi(dim, Cmat::Zero(dim, dim), idx, coef);
    }
    cones.finish_nu();

    const Rvec cy = nmap.transpose() * inst.c;
    const double c0 = inst.c.dot(xp);
    auto finish = [&](const Rvec& y, double gap, SolveStatus st, const std::string& why) {
        sol.status = st;
        sol.x = xp + nmap * y;
        sol.objective = inst.c.dot(sol.x);
        sol.gap = gap;
        sol.detail = why;
        return sol;
    };

    // --- degenerate cases --------------------------------------------------
    if (m == 0) {
        const Rvec y0(0);
        if (feasible_nonstrict(cones, y0)) return finish(y0, 0.0, SolveStatus::optimal, "");
        sol.status = SolveStatus::infeasible;
        sol.detail = "equality-pinned point violates a cone constraint";
        return sol;
    }
    if (cones.rows.empty() && cones.socs.empty() && cones.lmis.empty()) {
        const Rvec y0 = Rvec::Zero(m);
        if (cy.norm() <= 1e-12 * (1.0 + std::abs(c0)))
            return finish(y0, 0.0, SolveStatus::optimal, "");
        sol.status = SolveStatus::failure;
        sol.detail = "unconstrained objective is unbounded";
        return sol;
    }

    int rounds = opt.max_rounds;

    // --- phase 1: drive a uniform slack negative ---------------------------
    Rvec y = Rvec::Zero(m);
    if (!is_interior(cones, y)) {
        Cones ext = with_slack(cones, m);
        const double s0 = needed_slack(cones, y) + 1.0;
        const double scale0 = 1.0 + std::abs(s0);
        add_ball(ext, m + 1, 1e6 * scale0);
        Rvec z = Rvec::Zero(m + 1);
        z[m] = s0;
        Rvec e_s = Rvec::Zero(m + 1);
        e_s[m] = 1.0;

        double t1 = 1.0;
        bool found = false;
        while (rounds > 0 && t1 < 1e30) {
            const bool centered = center(ext, t1 * e_s, z, rounds);
            const double s_val = z[m];
            const double gap1 = 1.2 * ext.nu / t1;
            if (s_val < 0.0 && (s_val <= -0.01 * scale0 || gap1 <= 0.5 * -s_val)) {
                found = true;
                break;
            }
            if (centered && s_val - gap1 > 0.0) {
                sol.status = SolveStatus::infeasible;
                std::ostringstream os;
                os << "phase-1 slack bounded below by " << (s_val - gap1)
                   << " within the search radius";
                sol.detail = os.str();
                return sol;
            }
            t1 *= 10.0;
        }
        if (!found && z[m] < 0.0) found = true; // interior, if barely
        if (!found) {
            sol.status = SolveStatus::failure;
            sol.detail = "phase 1 could not settle feasibility at tolerance";
            return sol;
        }
        y = z.head(m);
        if (!is_interior(cones, y)) {
            sol.status = SolveStatus::failure;
            sol.detail = "phase-1 point lost strict interiority";
            return sol;
        }
    }

    // --- phase 2: follow the central path ----------------------------------
    const double radius = 1e6 * (1.0 + y.norm());
    add_ball(cones, m, radius);
    double t = 1.0;
    while (rounds > 0 && t < 1e60) {
        center(cones, t * cy, y, rounds);
        if (y.norm() > 0.9 * radius)
            return finish(y, 1.2 * cones.nu / t, SolveStatus::failure,
                          "iterates escaped to the safeguard radius; the problem "
                          "may be unbounded");
        const double obj = cy.dot(y) + c0;
        const double gap = 1.2 * cones.nu / t;
        if (gap <= opt.gap_tol * (1.0 + std::abs(obj)))
            return finish(y, gap, SolveStatus::optimal, "");
        t *= 10.0;
    }
    return finish(y, 1.2 * cones.nu / t, SolveStatus::failure,
                  "iteration budget exhausted before reaching the gap tolerance");
}

} // namespace irsloc::conic
