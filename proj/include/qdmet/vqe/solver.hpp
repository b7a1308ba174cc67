// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <Eigen/Dense>

#include "qdmet/dmet/fragment_solver.hpp"
#include "qdmet/qsim/circuit.hpp"
#include "qdmet/qsim/pauli.hpp"
#include "qdmet/vqe/uccsd.hpp"
#include "qdmet/vqe/vqe_driver.hpp"

namespace qdmet::vqe {

struct VqeSolverOptions {
    VqeOptions optimizer;
    bool mp2_seed = true;  // warm-start paired doubles from MP2 amplitudes
};

/// Fragment solver running UCCSD-VQE on the embedding problem (optionally
/// reduced to an active window around the embedding Fermi level). The
/// statevector evaluation is exact, so the chemical-potential fit sees
/// noise-free energies; shot noise enters only through the re-evaluation
/// path below.
dmet::SolverFn make_vqe_solver(const VqeSolverOptions& opts = {});

/// Everything needed to re-price one optimised fragment on the noisy
/// emulator: a native-gate preparation from |0...0> and the democratic
/// fragment-energy observable in the same molecular-orbital frame the
/// circuit prepares. The observable is the hermitian part of the
/// row-restricted energy operator; the variational states are real, so its
/// expectation equals the fragment energy exactly.
struct VqeFragmentCircuit {
    UccsdAnsatz ansatz;
    Eigen::VectorXd theta;
    VqeResult optimisation;
    qsim::PauliSum hamiltonian;   // electronic part, chemical potential folded in
    qsim::PauliSum fragment_obs;  // hermitised democratic row observable
    qsim::Circuit preparation;    // native gates only
    int n_elec = 0;
    double e_frag_exact = 0.0;  // statevector value of fragment_obs
    double e_elec_exact = 0.0;  // statevector value of hamiltonian
};

/// Optimises the fragment like make_vqe_solver and packages the circuit and
/// observables for shot-based estimation. Orbital freezing is not supported
/// here: the observable construction needs the full embedding window.
VqeFragmentCircuit prepare_vqe_fragment(const dmet::EmbeddingProblem& emb,
                                        const dmet::FragmentSpec& frag, double mu,
                                        const VqeSolverOptions& opts = {});

}  // namespace qdmet::vqe
