// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "qdmet/dmet/embedding.hpp"
#include "qdmet/dmet/fragment.hpp"

namespace qdmet::dmet {

/// Solver output: embedding-basis density matrices plus the democratic
/// fragment energy and the fragment particle number derived from them.
struct FragmentSolution {
    Eigen::MatrixXd rdm1;  // spin-summed P
    Tensor4 rdm2;          // Gamma_pqrs = sum <a+_p a+_r a_s a_q> (chemist pairing)
    double energy_frag = 0.0;  // mu-free democratic-mixing energy E^x
    double n_x = 0.0;          // trace of the fragment block of rdm1
    bool converged = true;
    std::string note;
};

/// Democratic-mixing fragment energy: fragment-row contraction of the
/// one-body energy weight with P plus half the fragment-row contraction of
/// V with Gamma. The chemical potential never enters here.
double fragment_energy(const EmbeddingProblem& emb, const Eigen::MatrixXd& rdm1,
                       const Tensor4& rdm2);

/// Trace of rdm1 over the fragment orbitals.
double fragment_particle_number(const EmbeddingProblem& emb, const Eigen::MatrixXd& rdm1);

/// Closed-shell factorized two-body density D_pq D_rs - D_ps D_rq / 2.
Tensor4 factorized_rdm2(const Eigen::MatrixXd& d);

/// Pluggable fragment solver: the driver stays solver-agnostic so the
/// quantum-circuit solver can be layered on without a dependency cycle.
using SolverFn =
    std::function<FragmentSolution(const EmbeddingProblem&, const FragmentSpec&, double mu)>;

/// Classical solvers (mean-field, MP2, FCI). Requests for the circuit-based
/// solver raise ContractError; use the solver factory from the vqe layer.
FragmentSolution solve_fragment_classical(const EmbeddingProblem& emb, const FragmentSpec& spec,
                                          double mu);

}  // namespace qdmet::dmet
