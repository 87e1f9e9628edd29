// SPDX-License-Identifier: Apache-2.0
//
// irsloc — joint reflecting-surface deployment, transmit beamforming and
// reflect-phase design for outage-constrained physical-layer secrecy.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "irsloc/secrecy_sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "irsloc/params.hpp"
#include "irsloc/rng.hpp"

namespace irsloc::secrecy {

namespace {

using conic::Rmat;
using conic::Rvec;
using conic::SdpInstance;
using conic::Solution;
using conic::SolveStatus;
using conic::svec_basis;
using conic::svec_dim;
using conic::svec_pack;
using conic::svec_unpack;

constexpr double kSqrt2 = 1.4142135623730951;

Cvec vec_cm(const Cmat& g) { // column-major vectorization
    return Cvec(Eigen::Map<const Cvec>(g.data(), g.size()));
}

void check_dims(const Cmat& f_cov, const Cmat& q_cov,
                const channel::EveStatModel& eve, const Cmat& g_ab) {
    const auto m = q_cov.rows();
    const auto nt = f_cov.rows();
    if (f_cov.cols() != nt) throw std::invalid_argument("secrecy: F is not square");
    if (q_cov.cols() != m) throw std::invalid_argument("secrecy: Q is not square");
    if (g_ab.rows() != m || g_ab.cols() != nt)
        throw std::invalid_argument("secrecy: Bob cascade shape does not match F/Q");
    if (eve.g_bar_ae.rows() != m || eve.g_bar_ae.cols() != nt)
        throw std::invalid_argument("secrecy: Eve cascade mean shape does not match F/Q");
}

// All channel quantities divided by sigma so the conic instances see O(1)
// data; the decision variables (F in watts, unit-diagonal Q) keep their
// physical scale. Slacks coming back from the solver are multiplied by
// sigma^2 again before they are reported.
struct NormData {
    Cmat gb;     // g_ab / sigma
    Cmat ge;     // Eve cascade mean / sigma
    double dn = 0.0; // delta / sigma
    double rho = 0.0;
};

NormData normalize(const channel::EveStatModel& eve, const Cmat& g_ab,
                   double sigma_sq, double p_out) {
    if (!(sigma_sq > 0.0)) throw std::invalid_argument("secrecy: sigma_sq must be positive");
    if (!(p_out > 0.0) || !(p_out < 1.0))
        throw std::invalid_argument("secrecy: p_out must lie in (0, 1)");
    NormData nd;
    const double sigma = std::sqrt(sigma_sq);
    nd.gb = g_ab / sigma;
    nd.ge = eve.g_bar_ae / sigma;
    nd.dn = std::sqrt(std::max(0.0, eve.delta_ae_sq)) / sigma;
    nd.rho = -std::log(p_out);
    return nd;
}

double lambda_max_psd(const Cmat& m) {
    Eigen::SelfAdjointEigenSolver<Cmat> es(m, Eigen::EigenvaluesOnly);
    return std::max(0.0, es.eigenvalues().maxCoeff());
}

// PSD square root with the tolerated -1e-9 eigenvalue floor clipped to 0.
Cmat psd_sqrt(const Cmat& m, const char* what) {
    Eigen::SelfAdjointEigenSolver<Cmat> es(m);
    const double top = std::max(1.0, es.eigenvalues().maxCoeff());
    if (es.eigenvalues().minCoeff() < -1e-6 * top)
        throw std::invalid_argument(std::string(what) + " is not positive semidefinite");
    Rvec clipped = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
}

double rank_gap_of(const Cmat& m) {
    if (m.rows() < 2) return 0.0;
    Eigen::SelfAdjointEigenSolver<Cmat> es(m, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const double top = ev[ev.size() - 1];
    if (!(top > 0.0)) return 0.0;
    return std::max(0.0, ev[ev.size() - 2]) / top;
}

Cvec unit_phases(const Cvec& v) {
    Cvec phi(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        phi[i] = (a > 0.0) ? v[i] / a : std::complex<double>(1.0, 0.0);
    }
    return phi;
}

Cvec principal_eigvec(const Cmat& m) {
    Eigen::SelfAdjointEigenSolver<Cmat> es(m);
    return es.eigenvectors().col(m.rows() - 1);
}

// Appends the sigma-normalized Bernstein slack cone |(svec(A); sqrt2 a)| <=
// zeta, where A and a are linear images of one Hermitian variable block
// starting at coordinate 0. gen_a(k) and gen_vec(k) produce the derivative
// of A and a with respect to svec coordinate k of that block.
template <typename GenMat, typename GenVec>
void append_bernstein_soc(SdpInstance& inst, int block_dim, int n_vars,
                          int zeta_idx, int lift_dim, GenMat gen_a,
                          GenVec gen_vec) {
    const int nb = svec_dim(block_dim);
    const int sa = svec_dim(lift_dim);
    SdpInstance::Soc soc;
    soc.a = Rmat::Zero(sa + 2 * lift_dim, n_vars);
    soc.b = Rvec::Zero(sa + 2 * lift_dim);
    for (int k = 0; k < nb; ++k) {
        const Cmat ak = gen_a(k);
        Rvec col(sa);
        svec_pack(ak, col.data());
        soc.a.block(0, k, sa, 1) = col;
        const Cvec vk = gen_vec(k);
        soc.a.block(sa, k, lift_dim, 1) = kSqrt2 * vk.real();
        soc.a.block(sa + lift_dim, k, lift_dim, 1) = kSqrt2 * vk.imag();
    }
    soc.at = Rvec::Zero(n_vars);
    soc.at[zeta_idx] = 1.0;
    soc.bt = 0.0;
    inst.socs.push_back(std::move(soc));
}

PhaseFeasibility solve_phase_inner(const Cmat& f_cov,
                                   const channel::EveStatModel& eve,
                                   const Cmat& g_ab, double rate,
                                   double sigma_sq, double p_out,
                                   const Cvec* floor_dir, double floor_w) {
    check_dims(f_cov, Cmat::Identity(g_ab.rows(), g_ab.rows()), eve, g_ab);
    const NormData nd = normalize(eve, g_ab, sigma_sq, p_out);
    const int m = static_cast<int>(g_ab.rows());
    const int nq = svec_dim(m);
    const int iz = nq, iu = nq + 1, is = nq + 2;
    const int n = nq + 3;
    const double dn2 = nd.dn * nd.dn;
    const double pw = std::exp2(-rate);
    const double trf = f_cov.trace().real();

    SdpInstance inst;
    inst.psd_dims = {m};
    inst.n_scalars = 3; // zeta, upsilon, bernstein slack
    inst.c = Rvec::Zero(n);
    inst.c[is] = 1.0; // deepest-slack objective

    // Unit diagonal, eliminated exactly inside the solver.
    for (int k = 0; k < m; ++k) {
        SdpInstance::LinEq eq;
        eq.a = Rvec::Zero(n);
        eq.a[k] = 1.0;
        eq.b = 1.0;
        inst.equalities.push_back(std::move(eq));
    }

    // Bernstein row relaxed by the slack:
    // dn^2 Tr(F) Tr(Q) + sqrt(2 rho) zeta + rho upsilon - s <= c1(Q).
    const Cmat nb = nd.gb * f_cov * nd.gb.adjoint();
    const Cmat ne = nd.ge * f_cov * nd.ge.adjoint();
    const Cmat rowmat = dn2 * trf * Cmat::Identity(m, m) - pw * nb + ne;
    SdpInstance::LinRow row;
    row.a = Rvec::Zero(n);
    svec_pack(rowmat, row.a.data());
    row.a[iz] = std::sqrt(2.0 * nd.rho);
    row.a[iu] = nd.rho;
    row.a[is] = -1.0;
    row.b = pw - 1.0;
    inst.rows.push_back(std::move(row));

    SdpInstance::LinRow ups;
    ups.a = Rvec::Zero(n);
    ups.a[iu] = -1.0;
    inst.rows.push_back(std::move(ups));

    // Optional rank-pressure floor u^H Q u >= w Tr(Q) = w m.
    if (floor_dir != nullptr) {
        const Cmat uu = (*floor_dir) * floor_dir->adjoint();
        SdpInstance::LinRow fr;
        fr.a = Rvec::Zero(n);
        Rvec uus(nq);
        svec_pack(uu, uus.data());
        fr.a.head(nq) = -uus;
        fr.b = -floor_w * m;
        inst.rows.push_back(std::move(fr));
    }

    append_bernstein_soc(
        inst, m, n, iz, m * static_cast<int>(f_cov.rows()),
        [&](int k) -> Cmat {
            return dn2 * Eigen::kroneckerProduct(f_cov.transpose(), svec_basis(m, k)).eval();
        },
        [&](int k) -> Cvec { return nd.dn * vec_cm(svec_basis(m, k) * nd.ge * f_cov); });

    // upsilon I - A >= 0, block-diagonalized over the eigenvalues of the
    // fixed Kronecker factor F.
    Eigen::SelfAdjointEigenSolver<Cmat> ef(f_cov, Eigen::EigenvaluesOnly);
    const double ftop = std::max(1.0, ef.eigenvalues().maxCoeff());
    for (int j = 0; j < ef.eigenvalues().size(); ++j) {
        const double lam = ef.eigenvalues()[j];
        if (lam <= 1e-12 * ftop) continue;
        SdpInstance::Lmi lmi;
        lmi.dim = m;
        lmi.base = Cmat::Zero(m, m);
        for (int k = 0; k < nq; ++k) {
            lmi.idx.push_back(k);
            lmi.coef.push_back(-dn2 * lam * svec_basis(m, k));
        }
        lmi.idx.push_back(iu);
        lmi.coef.push_back(Cmat::Identity(m, m));
        inst.lmis.push_back(std::move(lmi));
    }

    const Solution sol = conic::solve(inst);
    PhaseFeasibility out;
    out.status = sol.status;
    out.gap = sol.gap;
    out.detail = sol.detail;
    if (sol.status == SolveStatus::optimal) {
        out.q_cov = svec_unpack(sol.x.data(), m);
        out.slack = sol.x[is];
    }
    return out;
}

} // namespace

// -------------------------------------------------------------------------
// Bernstein terms
// -------------------------------------------------------------------------

BtiTerms build_bti(const Cmat& f_cov, const Cmat& q_cov,
                   const channel::EveStatModel& eve, const Cmat& g_ab,
                   double rate, double sigma_sq, double p_out) {
    check_dims(f_cov, q_cov, eve, g_ab);
    if (!(sigma_sq > 0.0)) throw std::invalid_argument("secrecy: sigma_sq must be positive");
    if (!(p_out > 0.0) || !(p_out < 1.0))
        throw std::invalid_argument("secrecy: p_out must lie in (0, 1)");
    const double delta = std::sqrt(std::max(0.0, eve.delta_ae_sq));

    BtiTerms t;
    const Cmat kron = Eigen::kroneckerProduct(f_cov.transpose(), q_cov).eval();
    t.a_mat = delta * delta * kron;
    t.a_vec = delta * kron * vec_cm(eve.g_bar_ae);
    const double s_bob = ((g_ab * f_cov * g_ab.adjoint()) * q_cov).trace().real();
    const double s_eve = ((eve.g_bar_ae * f_cov * eve.g_bar_ae.adjoint()) * q_cov).trace().real();
    t.c1 = std::exp2(-rate) * (sigma_sq + s_bob) - sigma_sq - s_eve;
    t.rho_bar = -std::log(p_out);
    return t;
}

double bti_margin(const BtiTerms& terms) {
    const double tr = terms.a_mat.trace().real();
    const double fro2 = terms.a_mat.squaredNorm();
    const double a2 = terms.a_vec.squaredNorm();
    const double lam = lambda_max_psd(terms.a_mat);
    return tr + std::sqrt(2.0 * terms.rho_bar) * std::sqrt(fro2 + 2.0 * a2) +
           terms.rho_bar * lam - terms.c1;
}

double certified_rate(const Cmat& f_cov, const Cmat& q_cov,
                      const channel::EveStatModel& eve, const Cmat& g_ab,
                      double sigma_sq, double p_out) {
    check_dims(f_cov, q_cov, eve, g_ab);
    const NormData nd = normalize(eve, g_ab, sigma_sq, p_out);
    const double dn2 = nd.dn * nd.dn;
    const double tr = dn2 * f_cov.trace().real() * q_cov.trace().real();
    const double fro = dn2 * f_cov.norm() * q_cov.norm();
    const double lam = dn2 * lambda_max_psd(f_cov) * lambda_max_psd(q_cov);
    const double a_norm = nd.dn * (q_cov * nd.ge * f_cov).norm();
    const double s_bob = ((nd.gb * f_cov * nd.gb.adjoint()) * q_cov).trace().real();
    const double s_eve = ((nd.ge * f_cov * nd.ge.adjoint()) * q_cov).trace().real();
    const double lhs = tr + std::sqrt(2.0 * nd.rho) *
                                std::hypot(fro, kSqrt2 * a_norm) +
                       nd.rho * lam;
    return std::log2((1.0 + s_bob) / (lhs + 1.0 + s_eve));
}

// -------------------------------------------------------------------------
// Power minimization and its bisection
// -------------------------------------------------------------------------

PmSolution solve_pm_sdp(const Cmat& q_cov, const channel::EveStatModel& eve,
                        const Cmat& g_ab, double rate, double sigma_sq,
                        double p_out) {
    const int nt = static_cast<int>(g_ab.cols());
    check_dims(Cmat::Identity(nt, nt), q_cov, eve, g_ab);
    const NormData nd = normalize(eve, g_ab, sigma_sq, p_out);
    const int m = static_cast<int>(g_ab.rows());
    const int nf = svec_dim(nt);
    const int iz = nf, iu = nf + 1;
    const int n = nf + 2;
    const double dn2 = nd.dn * nd.dn;
    const double pw = std::exp2(-rate);
    const double trq = q_cov.trace().real();

    SdpInstance inst;
    inst.psd_dims = {nt};
    inst.n_scalars = 2; // zeta, upsilon
    inst.c = Rvec::Zero(n);
    for (int k = 0; k < nt; ++k) inst.c[k] = 1.0; // Tr(F)

    // Bernstein row: dn^2 Tr(Q) Tr(F) + sqrt(2 rho) zeta + rho upsilon
    //                - 2^-R <M_B, F> + <M_E, F> <= 2^-R - 1.
    const Cmat mb = nd.gb.adjoint() * q_cov * nd.gb;
    const Cmat me = nd.ge.adjoint() * q_cov * nd.ge;
    const Cmat rowmat = dn2 * trq * Cmat::Identity(nt, nt) - pw * mb + me;
    SdpInstance::LinRow row;
    row.a = Rvec::Zero(n);
    svec_pack(rowmat, row.a.data());
    row.a[iz] = std::sqrt(2.0 * nd.rho);
    row.a[iu] = nd.rho;
    row.b = pw - 1.0;
    inst.rows.push_back(std::move(row));

    SdpInstance::LinRow ups;
    ups.a = Rvec::Zero(n);
    ups.a[iu] = -1.0;
    inst.rows.push_back(std::move(ups));

    append_bernstein_soc(
        inst, nt, n, iz, m * nt,
        [&](int k) -> Cmat {
            return dn2 * Eigen::kroneckerProduct(svec_basis(nt, k).transpose(), q_cov).eval();
        },
        [&](int k) -> Cvec { return nd.dn * vec_cm(q_cov * nd.ge * svec_basis(nt, k)); });

    // upsilon I - A >= 0 over the eigenvalues of the fixed factor Q.
    Eigen::SelfAdjointEigenSolver<Cmat> eq(q_cov, Eigen::EigenvaluesOnly);
    const double qtop = std::max(1.0, eq.eigenvalues().maxCoeff());
    for (int j = 0; j < eq.eigenvalues().size(); ++j) {
        const double mu = eq.eigenvalues()[j];
        if (mu <= 1e-12 * qtop) continue;
        SdpInstance::Lmi lmi;
        lmi.dim = nt;
        lmi.base = Cmat::Zero(nt, nt);
        for (int k = 0; k < nf; ++k) {
            lmi.idx.push_back(k);
            lmi.coef.push_back(-dn2 * mu * svec_basis(nt, k).transpose());
        }
        lmi.idx.push_back(iu);
        lmi.coef.push_back(Cmat::Identity(nt, nt));
        inst.lmis.push_back(std::move(lmi));
    }

    const Solution sol = conic::solve(inst);
    PmSolution out;
    out.status = sol.status;
    out.gap = sol.gap;
    out.detail = sol.detail;
    if (sol.status == SolveStatus::optimal) {
        out.f_cov = svec_unpack(sol.x.data(), nt);
        out.tx_power = out.f_cov.trace().real();
        out.zeta = sol.x[iz] * sigma_sq;
        out.upsilon = sol.x[iu] * sigma_sq;
    }
    return out;
}

BeamformerResult bisect_beamformer(const Cmat& q_cov,
                                   const channel::EveStatModel& eve,
                                   const Cmat& g_ab, double power_budget,
                                   double sigma_sq, double p_out, double r_lo,
                                   double r_hi, double eps) {
    if (!(r_lo < r_hi)) throw std::invalid_argument("bisect_beamformer: r_lo must be < r_hi");
    if (!(eps > 0.0)) throw std::invalid_argument("bisect_beamformer: eps must be positive");
    const int nt = static_cast<int>(g_ab.cols());

    BeamformerResult res;
    auto probe = [&](double r, PmSolution& sol) {
        sol = solve_pm_sdp(q_cov, eve, g_ab, r, sigma_sq, p_out);
        ++res.probes;
        return sol.status == SolveStatus::optimal &&
               sol.tx_power <= power_budget * (1.0 + 1e-9) + 1e-12;
    };

    PmSolution at_lo;
    if (!probe(r_lo, at_lo)) {
        res.rate = 0.0;
        res.f_cov = Cmat::Zero(nt, nt);
        res.lo_infeasible = true;
        return res;
    }
    double lo = r_lo;
    PmSolution best = at_lo;

    PmSolution at_hi;
    if (probe(r_hi, at_hi)) { // bracket saturated: the budget reaches r_hi
        lo = r_hi;
        best = at_hi;
    } else {
        double hi = r_hi;
        while (hi - lo > eps) {
            const double mid = 0.5 * (lo + hi);
            PmSolution at_mid;
            if (probe(mid, at_mid)) {
                lo = mid;
                best = at_mid;
            } else {
                hi = mid;
            }
        }
    }
    res.rate = lo;
    res.f_cov = best.f_cov;
    res.rank_gap = rank_gap_of(best.f_cov);
    return res;
}

Cvec rank_one_extract_f(const Cmat& f_cov, const Cvec& h_b) {
    if (f_cov.rows() != f_cov.cols() || h_b.size() != f_cov.rows())
        throw std::invalid_argument("rank_one_extract_f: dimension mismatch");
    const Cmat fs = psd_sqrt(f_cov, "rank_one_extract_f: F");
    const Cvec v = fs * h_b;
    const double nv = v.norm();
    if (!(nv > 1e-150))
        throw DegenerateGeometryError(
            "rank_one_extract_f: F^(1/2) h_b vanishes; the legitimate user is "
            "unreachable from this covariance");
    return fs * (v / nv);
}

// -------------------------------------------------------------------------
// Phase feasibility, its bisection, and rank-one recovery
// -------------------------------------------------------------------------

PhaseFeasibility solve_phase_feasibility(const Cmat& f_cov,
                                         const channel::EveStatModel& eve,
                                         const Cmat& g_ab, double rate,
                                         double sigma_sq, double p_out) {
    return solve_phase_inner(f_cov, eve, g_ab, rate, sigma_sq, p_out, nullptr, 0.0);
}

PhaseResult bisect_phase(const Cmat& f_cov, const channel::EveStatModel& eve,
                         const Cmat& g_ab, double sigma_sq, double p_out,
                         double r_lo, double r_hi, double eps) {
    if (!(r_lo < r_hi)) throw std::invalid_argument("bisect_phase: r_lo must be < r_hi");
    if (!(eps > 0.0)) throw std::invalid_argument("bisect_phase: eps must be positive");
    const int m = static_cast<int>(g_ab.rows());

    PhaseResult res;
    if (m == 1) { // the only unit-modulus lift is Q = 1
        res.q_cov = Cmat::Ones(1, 1);
        const double cert =
            certified_rate(f_cov, res.q_cov, eve, g_ab, sigma_sq, p_out);
        if (cert < r_lo) {
            res.lo_infeasible = true;
            return res;
        }
        res.rate = std::min(cert, r_hi);
        return res;
    }

    auto probe = [&](double r, PhaseFeasibility& sol) {
        sol = solve_phase_feasibility(f_cov, eve, g_ab, r, sigma_sq, p_out);
        ++res.probes;
        return sol.feasible();
    };

    PhaseFeasibility at_lo;
    if (!probe(r_lo, at_lo)) {
        res.lo_infeasible = true;
        return res;
    }
    double lo = r_lo;
    PhaseFeasibility best = at_lo;

    PhaseFeasibility at_hi;
    if (probe(r_hi, at_hi)) {
        lo = r_hi;
        best = at_hi;
    } else {
        double hi = r_hi;
        while (hi - lo > eps) {
            const double mid = 0.5 * (lo + hi);
            PhaseFeasibility at_mid;
            if (probe(mid, at_mid)) {
                lo = mid;
                best = at_mid;
            } else {
                hi = mid;
            }
        }
    }
    res.rate = lo;
    res.q_cov = best.q_cov;
    res.rank_gap = rank_gap_of(best.q_cov);
    return res;
}

namespace {

// Best unit-modulus projection over seeded Gaussian draws from the lifted
// covariance.  Shared by the SROCR fallback and the pure-randomization
// benchmark path.
template <typename Score>
std::pair<Cvec, double> best_random_projection(const Cmat& q_star, int n_cand,
                                               std::uint64_t seed,
                                               Score&& score) {
    const int m = static_cast<int>(q_star.rows());
    const Cmat qhalf = psd_sqrt(q_star, "phase randomization: Q");
    rng::Stream st(rng::substream(seed, 0x51u));
    Cvec best_phi = Cvec::Ones(m);
    double best_rate = -std::numeric_limits<double>::infinity();
    for (int cand = 0; cand < n_cand; ++cand) {
        Cvec g(m);
        for (int i = 0; i < m; ++i) g[i] = st.next_cnormal();
        const Cvec phi = unit_phases(qhalf * g);
        const double r = score(phi);
        if (r > best_rate) {
            best_rate = r;
            best_phi = phi;
        }
    }
    return {best_phi, best_rate};
}

} // namespace

PhaseRecovery srocr_rank_one(const Cmat& q_star, const Cmat& f_cov,
                             const channel::EveStatModel& eve,
                             const Cmat& g_ab, double rate_target,
                             double sigma_sq, double p_out,
                             std::uint64_t seed) {
    const int m = static_cast<int>(q_star.rows());
    const double target = rate_target - 0.05;

    PhaseRecovery rec;
    auto score = [&](const Cvec& phi) {
        return certified_rate(f_cov, Cmat(phi * phi.adjoint()), eve, g_ab,
                              sigma_sq, p_out);
    };

    Cvec best_phi = unit_phases(principal_eigvec(q_star));
    double best_rate = score(best_phi);
    bool best_from_srocr = true;

    // Rank-one fraction of the incoming lift; Tr(Q) = m by construction.
    auto weight_of = [m](const Cmat& q) {
        return lambda_max_psd(q) / static_cast<double>(m);
    };
    double w = weight_of(q_star);

    if (w < 1.0 - 1e-6 && best_rate < target) {
        // Sequential relaxation: press the principal-eigenvalue fraction
        // toward 1, halving the pressure step whenever it overshoots into
        // infeasibility.
        Cmat q = q_star;
        double step = 0.1;
        while (rec.srocr_iters < 30 && w < 1.0 - 1e-6 && step >= 1e-4) {
            const double w_try = std::min(1.0, w + step);
            const Cvec u = principal_eigvec(q);
            const PhaseFeasibility sol = solve_phase_inner(
                f_cov, eve, g_ab, rate_target, sigma_sq, p_out, &u, w_try);
            ++rec.srocr_iters;
            if (sol.feasible()) {
                q = sol.q_cov;
                w = weight_of(q);
                const Cvec phi = unit_phases(principal_eigvec(q));
                const double r = score(phi);
                if (r > best_rate) {
                    best_rate = r;
                    best_phi = phi;
                    best_from_srocr = true;
                }
            } else {
                step *= 0.5;
            }
        }
    }

    if (best_rate < target) {
        // Gaussian randomization fallback: draw candidates from the lifted
        // covariance and project them onto unit modulus.
        const auto [cand_phi, cand_rate] =
            best_random_projection(q_star, 1000, seed, score);
        if (cand_rate > best_rate) {
            best_rate = cand_rate;
            best_phi = cand_phi;
            best_from_srocr = false;
        }
    }

    rec.phi = best_phi;
    rec.rate = std::max(0.0, best_rate);
    rec.degraded = best_rate < target;
    rec.randomized = !best_from_srocr;
    rec.rank_one = best_from_srocr && !rec.degraded;
    return rec;
}

PhaseRecovery gaussian_randomization(const Cmat& q_star, const Cmat& f_cov,
                                     const channel::EveStatModel& eve,
                                     const Cmat& g_ab, double rate_target,
                                     double sigma_sq, double p_out,
                                     std::uint64_t seed) {
    const double target = rate_target - 0.05;
    auto score = [&](const Cvec& phi) {
        return certified_rate(f_cov, Cmat(phi * phi.adjoint()), eve, g_ab,
                              sigma_sq, p_out);
    };
    const auto [phi, rate] = best_random_projection(q_star, 1000, seed, score);

    PhaseRecovery rec;
    rec.phi = phi;
    rec.rate = std::max(0.0, rate);
    rec.randomized = true;
    rec.rank_one = false;
    rec.degraded = rate < target;
    return rec;
}

double rate_upper_bound(const Cmat& g_ab, double power_budget, int n_irs,
                        double sigma_sq) {
    if (!(sigma_sq > 0.0)) throw std::invalid_argument("rate_upper_bound: sigma_sq must be positive");
    const double smax_sq = lambda_max_psd(g_ab.adjoint() * g_ab);
    return std::log2(1.0 + n_irs * power_budget * smax_sq / sigma_sq);
}

} // namespace irsloc::secrecy
