// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/vqe/solver.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "qdmet/common/error.hpp"
#include "qdmet/mf/lowdin.hpp"
#include "qdmet/mf/mp2.hpp"
#include "qdmet/mf/rhf.hpp"
#include "qdmet/qsim/jordan_wigner.hpp"
#include "qdmet/qsim/statevector.hpp"
#include "qdmet/vqe/active_space.hpp"
#include "qdmet/vqe/rdm.hpp"

namespace qdmet::vqe {

namespace {

using dmet::EmbeddingProblem;
using dmet::FragmentSpec;

mf::RhfResult embedding_rhf(const EmbeddingProblem& emb, double mu) {
    const int n = emb.n_orb();
    // Same tight settings as the classical solvers: the democratic energy
    // is linear in the density, so SCF residuals propagate at first order.
    mf::RhfOptions opts;
    opts.conv_energy = 1e-12;
    opts.conv_error = 1e-10;
    return mf::run_rhf(emb.h_with_mu(mu), emb.eri, Eigen::MatrixXd::Identity(n, n),
                       /*e_const=*/0.0, emb.n_elec, opts);
}

// Paired-double warm start: theta for (i up, i down) -> (a up, a down)
// matches the MP2 amplitude t2(i,i,a,a) to first order; everything else
// starts at zero where the reference is a stationary point of the singles.
Eigen::VectorXd seeded_theta(const UccsdAnsatz& ansatz, const Eigen::VectorXd& eps_active,
                             const Tensor4& eri_active) {
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(ansatz.n_parameters());
    const int n_act = static_cast<int>(eps_active.size());
    const int no = ansatz.n_elec / 2;
    if (no == 0 || n_act == no) return theta;

    const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n_act, n_act);
    const auto mp2 = mf::run_mp2(identity, eps_active, eri_active, ansatz.n_elec);

    for (int k = 0; k < ansatz.n_parameters(); ++k) {
        const Excitation& ex = ansatz.generators[static_cast<std::size_t>(k)].excitation;
        if (ex.from.size() != 2) continue;
        const bool paired = ex.from[0] % 2 == 0 && ex.from[1] == ex.from[0] + 1 &&
                            ex.to[0] % 2 == 0 && ex.to[1] == ex.to[0] + 1;
        if (!paired) continue;
        const int i = ex.from[0] / 2;
        const int a = (ex.to[0] - ansatz.n_elec) / 2;
        theta[k] = mp2.t2_at(i, i, a, a);
    }
    return theta;
}

struct OptimisedFragment {
    mf::RhfResult scf;
    ActiveSpace space;
    FoldedProblem folded;
    Eigen::MatrixXd h_mo;
    Tensor4 eri_mo;
    UccsdAnsatz ansatz;
    VqeResult opt;
};

OptimisedFragment optimise_fragment(const EmbeddingProblem& emb, const FragmentSpec& spec,
                                    double mu, const VqeSolverOptions& opts) {
    OptimisedFragment out;
    out.scf = embedding_rhf(emb, mu);
    const int n_occ = emb.n_elec / 2;
    out.space = spec.active_space
                    ? select_active_space(emb.n_orb(), emb.n_elec,
                                          spec.active_space->n_occ_active,
                                          spec.active_space->n_virt_active)
                    : select_active_space(emb.n_orb(), emb.n_elec, n_occ, emb.n_orb() - n_occ);

    out.h_mo = mf::transform_one(emb.h_with_mu(mu), out.scf.C);
    out.eri_mo = mf::transform_eri(emb.eri, out.scf.C);
    out.folded = fold_frozen_core(out.h_mo, out.eri_mo, out.space);

    out.ansatz = build_uccsd(out.space.n_active(), out.space.n_elec_active());

    Eigen::VectorXd theta0 = Eigen::VectorXd::Zero(out.ansatz.n_parameters());
    if (opts.mp2_seed) {
        const auto active = out.space.active_indices();
        Eigen::VectorXd eps_active(active.size());
        for (std::size_t k = 0; k < active.size(); ++k)
            eps_active[static_cast<Eigen::Index>(k)] = out.scf.eps[active[k]];
        theta0 = seeded_theta(out.ansatz, eps_active, out.folded.eri);
    }

    const qsim::PauliSum ham = qsim::jw_hamiltonian(out.folded.h, out.folded.eri, 0.0);
    out.opt = run_vqe(ham, out.ansatz, theta0, opts.optimizer);
    return out;
}

}  // namespace

dmet::SolverFn make_vqe_solver(const VqeSolverOptions& opts) {
    return [opts](const EmbeddingProblem& emb, const FragmentSpec& spec,
                  double mu) -> dmet::FragmentSolution {
        const OptimisedFragment frag = optimise_fragment(emb, spec, mu, opts);
        const qsim::Statevector psi = uccsd_state(frag.ansatz, frag.opt.theta);
        const MeasuredRdms active = measure_rdms(psi, frag.space.n_active());

        Eigen::MatrixXd rdm1_mo;
        Tensor4 rdm2_mo;
        assemble_rdms(frag.space, active.rdm1, active.rdm2, rdm1_mo, rdm2_mo);

        dmet::FragmentSolution sol;
        sol.rdm1 = frag.scf.C * rdm1_mo * frag.scf.C.transpose();
        sol.rdm2 = mf::transform_eri(rdm2_mo, frag.scf.C.transpose());
        sol.energy_frag = dmet::fragment_energy(emb, sol.rdm1, sol.rdm2);
        sol.n_x = dmet::fragment_particle_number(emb, sol.rdm1);
        sol.converged = frag.scf.converged && frag.opt.converged;
        sol.note = "vqe iterations=" + std::to_string(frag.opt.n_iterations);
        return sol;
    };
}

VqeFragmentCircuit prepare_vqe_fragment(const EmbeddingProblem& emb, const FragmentSpec& frag,
                                        double mu, const VqeSolverOptions& opts) {
    if (frag.active_space)
        throw ContractError(
            "prepare_vqe_fragment: shot estimation needs the full embedding window, "
            "not a frozen-core reduction");

    const OptimisedFragment done = optimise_fragment(emb, frag, mu, opts);

    VqeFragmentCircuit out;
    out.ansatz = done.ansatz;
    out.theta = done.opt.theta;
    out.optimisation = done.opt;
    out.n_elec = emb.n_elec;
    out.hamiltonian = qsim::jw_hamiltonian(done.folded.h, done.folded.eri, 0.0);

    // Democratic row restriction in the embedding frame, rotated into the
    // molecular-orbital frame the circuit works in.
    const int n = emb.n_orb();
    const Eigen::MatrixXd a_full = emb.energy_one_body();
    Eigen::MatrixXd a_rows = Eigen::MatrixXd::Zero(n, n);
    Tensor4 w_rows(static_cast<std::size_t>(n));
    for (int i = 0; i < emb.n_frag; ++i) {
        a_rows.row(i) = a_full.row(i);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) w_rows(i, j, k, l) = emb.eri(i, j, k, l);
    }
    qsim::PauliOp raw = qsim::jw_coefficient_operator(mf::transform_one(a_rows, done.scf.C),
                                                      mf::transform_eri(w_rows, done.scf.C));
    qsim::PauliOp raw_dagger = raw.dagger();
    raw += raw_dagger;
    raw *= 0.5;
    raw.prune();
    out.fragment_obs = raw.hermitian();

    out.preparation = lower_pauli_exponentials(state_preparation(out.ansatz, out.theta));

    const qsim::Statevector psi = uccsd_state(out.ansatz, out.theta);
    out.e_frag_exact = expectation(psi, out.fragment_obs);
    out.e_elec_exact = expectation(psi, out.hamiltonian);
    return out;
}

}  // namespace qdmet::vqe
