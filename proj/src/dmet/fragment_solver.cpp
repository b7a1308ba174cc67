// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/dmet/fragment_solver.hpp"

#include "qdmet/common/error.hpp"
#include "qdmet/mf/fci.hpp"
#include "qdmet/mf/lowdin.hpp"
#include "qdmet/mf/mp2.hpp"
#include "qdmet/mf/rhf.hpp"
#include "qdmet/vqe/active_space.hpp"

namespace qdmet::dmet {

double fragment_energy(const EmbeddingProblem& emb, const Eigen::MatrixXd& rdm1,
                       const Tensor4& rdm2) {
    const int n = emb.n_orb();
    const Eigen::MatrixXd a = emb.energy_one_body();
    double e = 0.0;
    for (int i = 0; i < emb.n_frag; ++i) {
        for (int j = 0; j < n; ++j) e += a(i, j) * rdm1(i, j);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    e += 0.5 * emb.eri(i, j, k, l) * rdm2(i, j, k, l);
    }
    return e;
}

double fragment_particle_number(const EmbeddingProblem& emb, const Eigen::MatrixXd& rdm1) {
    double nx = 0.0;
    for (int i = 0; i < emb.n_frag; ++i) nx += rdm1(i, i);
    return nx;
}

Tensor4 factorized_rdm2(const Eigen::MatrixXd& d) {
    const int n = static_cast<int>(d.rows());
    Tensor4 g(n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s)
                    g(p, q, r, s) = d(p, q) * d(r, s) - 0.5 * d(p, s) * d(r, q);
    return g;
}

namespace {

mf::RhfResult embedding_rhf(const EmbeddingProblem& emb, double mu) {
    const int n = emb.n_orb();
    // The democratic energy is linear in the density, so SCF residuals enter
    // at first order; converge well past the downstream tolerances.
    mf::RhfOptions opts;
    opts.conv_energy = 1e-12;
    opts.conv_error = 1e-10;
    return mf::run_rhf(emb.h_with_mu(mu), emb.eri, Eigen::MatrixXd::Identity(n, n),
                       /*e_const=*/0.0, emb.n_elec, opts);
}

FragmentSolution finish(const EmbeddingProblem& emb, Eigen::MatrixXd rdm1, Tensor4 rdm2,
                        bool converged, std::string note) {
    FragmentSolution sol;
    sol.rdm1 = std::move(rdm1);
    sol.rdm2 = std::move(rdm2);
    sol.energy_frag = fragment_energy(emb, sol.rdm1, sol.rdm2);
    sol.n_x = fragment_particle_number(emb, sol.rdm1);
    sol.converged = converged;
    sol.note = std::move(note);
    return sol;
}

FragmentSolution solve_mean_field(const EmbeddingProblem& emb, double mu) {
    const auto scf = embedding_rhf(emb, mu);
    return finish(emb, scf.D, factorized_rdm2(scf.D), scf.converged, "");
}

// MP2 keeps the mean-field 1-RDM and adds the first-order doubles block to
// the 2-RDM, so the full-space contraction reproduces E_HF + E2 exactly.
// Orbital-relaxation corrections to P are out of scope for this pairing.
FragmentSolution solve_mp2(const EmbeddingProblem& emb, double mu) {
    const auto scf = embedding_rhf(emb, mu);
    const auto mp2 = mf::run_mp2(scf.C, scf.eps, emb.eri, emb.n_elec);
    const int n = emb.n_orb();
    const int no = mp2.n_occ, nv = mp2.n_virt;

    Tensor4 gamma_mo(n);  // correlation part, MO basis
    for (int i = 0; i < no; ++i)
        for (int j = 0; j < no; ++j)
            for (int a = 0; a < nv; ++a)
                for (int b = 0; b < nv; ++b) {
                    const double t_tilde =
                        2.0 * mp2.t2_at(i, j, a, b) - mp2.t2_at(i, j, b, a);
                    gamma_mo(i, no + a, j, no + b) += t_tilde;
                    gamma_mo(no + a, i, no + b, j) += t_tilde;
                }
    // Back to the embedding basis (orbitals are orthonormal, C^T = C^{-1}).
    const Tensor4 gamma_emb = mf::transform_eri(gamma_mo, scf.C.transpose());

    Tensor4 rdm2 = factorized_rdm2(scf.D);
    for (std::size_t k = 0; k < rdm2.raw().size(); ++k) rdm2.raw()[k] += gamma_emb.raw()[k];
    return finish(emb, scf.D, std::move(rdm2), scf.converged, "");
}

FragmentSolution solve_fci(const EmbeddingProblem& emb, const FragmentSpec& spec, double mu) {
    const int n_alpha = emb.n_elec / 2;
    if (!spec.active_space) {
        const auto fci = mf::run_fci(emb.h_with_mu(mu), emb.eri, 0.0, n_alpha, n_alpha);
        return finish(emb, fci.rdm1, fci.rdm2, true, "");
    }

    // Orbital freezing: select around the embedding Fermi level, fold the
    // core field, solve the active window exactly, then rebuild full RDMs
    // with mean-field frozen blocks.
    const auto scf = embedding_rhf(emb, mu);
    const auto space = vqe::select_active_space(emb.n_orb(), emb.n_elec,
                                                spec.active_space->n_occ_active,
                                                spec.active_space->n_virt_active);
    const Eigen::MatrixXd h_mo = scf.C.transpose() * emb.h_with_mu(mu) * scf.C;
    const Tensor4 eri_mo = mf::transform_eri(emb.eri, scf.C);
    const auto folded = vqe::fold_frozen_core(h_mo, eri_mo, space);

    const int na_elec = space.n_elec_active() / 2;
    const auto fci = mf::run_fci(folded.h, folded.eri, 0.0, na_elec, na_elec);

    Eigen::MatrixXd rdm1_mo;
    Tensor4 rdm2_mo;
    vqe::assemble_rdms(space, fci.rdm1, fci.rdm2, rdm1_mo, rdm2_mo);

    const Eigen::MatrixXd rdm1 = scf.C * rdm1_mo * scf.C.transpose();
    const Tensor4 rdm2 = mf::transform_eri(rdm2_mo, scf.C.transpose());
    return finish(emb, rdm1, rdm2, scf.converged, "");
}

}  // namespace

FragmentSolution solve_fragment_classical(const EmbeddingProblem& emb, const FragmentSpec& spec,
                                          double mu) {
    switch (spec.solver) {
        case SolverKind::MeanField: return solve_mean_field(emb, mu);
        case SolverKind::Mp2: return solve_mp2(emb, mu);
        case SolverKind::Fci: return solve_fci(emb, spec, mu);
        case SolverKind::Vqe:
            throw ContractError(
                "uccsd-vqe fragments need the circuit-backed solver; wire the vqe layer in");
    }
    throw ContractError("unhandled solver kind");
}

}  // namespace qdmet::dmet
