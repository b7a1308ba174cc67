// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qdmet/common/tensor4.hpp"
#include "qdmet/dmet/bath.hpp"

namespace qdmet::dmet {

/// Fragment-plus-bath Hamiltonian. The one-body part carries the mean-field
/// potential of the frozen environment; the chemical potential is applied on
/// demand so one problem serves the whole mu search.
struct EmbeddingProblem {
    Eigen::MatrixXd h_emb;  // projected h plus the environment contraction v_env
    Eigen::MatrixXd v_env;  // sum_kl [(ij|kl) - (il|kj)/2] D_env_kl, projected
    Tensor4 eri;            // projected two-electron tensor
    double e_core = 0.0;    // energy of the frozen environment density
    int n_elec = 0;
    int n_frag = 0;
    int n_bath = 0;
    std::vector<int> frag_index_map;  // embedding index -> localized index (-1 for bath)

    int n_orb() const { return n_frag + n_bath; }

    /// One-body matrix with -mu on the fragment diagonal entries.
    Eigen::MatrixXd h_with_mu(double mu) const {
        Eigen::MatrixXd h = h_emb;
        for (int i = 0; i < n_frag; ++i) h(i, i) -= mu;
        return h;
    }

    /// One-body weight of the fragment energy formula: the environment
    /// contraction enters at half strength there, and mu not at all.
    Eigen::MatrixXd energy_one_body() const { return h_emb - 0.5 * v_env; }
};

/// Assembles the embedding Hamiltonian from the localized-basis integrals
/// and a Schmidt bath. fragment lists the localized orbital indices in the
/// order they appear as the leading embedding orbitals.
EmbeddingProblem build_embedding(const Eigen::MatrixXd& h_lo, const Tensor4& eri_lo,
                                 const SchmidtBath& bath, const std::vector<int>& fragment);

}  // namespace qdmet::dmet
