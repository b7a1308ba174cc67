// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdmet/dmet/embedding.hpp"
#include "qdmet/dmet/fragment.hpp"
#include "qdmet/dmet/fragment_solver.hpp"

namespace qdmet::dmet {

struct DmetOptions {
    double mu_tol = 1e-6;        // convergence on |sum_x N_x - N_elec|
    double mu_bracket = 0.5;     // initial half-width of the search window
    double mu_bracket_max = 4.0; // give up growing the window past this
    int max_iter = 100;
};

struct FragmentReport {
    std::string label;
    SolverKind solver = SolverKind::MeanField;
    double energy_frag = 0.0;
    double n_x = 0.0;
    int n_frag = 0;
    int n_bath = 0;
    int n_elec_emb = 0;
    bool converged = true;  // the fragment solver's own flag at the final mu
};

struct DmetResult {
    double e_total = 0.0;   // sum of fragment energies plus nuclear repulsion
    double mu_global = 0.0;
    double n_total = 0.0;   // sum of fragment particle numbers at mu_global
    double residual = 0.0;  // n_total - n_elec
    int mu_evaluations = 0;
    std::vector<FragmentReport> fragments;
};

// Bath construction and integral transforms for every fragment, done once.
// The chemical potential only shifts the fragment diagonal afterwards.
struct PreparedFragments {
    std::vector<FragmentSpec> specs;
    std::vector<SchmidtBath> baths;
    std::vector<EmbeddingProblem> problems;
};

PreparedFragments prepare_fragments(const Eigen::MatrixXd& h_lo, const Tensor4& eri_lo,
                                    const Eigen::MatrixXd& d_lo,
                                    const std::vector<FragmentSpec>& fragments);

// One-shot density matrix embedding over an orthonormal (localized) basis.
// Fragment problems are solved independently at a shared chemical potential,
// which is tuned until the democratically summed particle number matches the
// molecule. Fragment energies use the democratic-mixing weights.
DmetResult run_dmet(const Eigen::MatrixXd& h_lo, const Tensor4& eri_lo,
                    const Eigen::MatrixXd& d_lo, double e_nuc, int n_elec,
                    const std::vector<FragmentSpec>& fragments,
                    const DmetOptions& opts = {},
                    const SolverFn& solver = solve_fragment_classical);

// Total fragment particle number at each chemical potential in mu_grid.
std::vector<double> particle_number_scan(const PreparedFragments& prep,
                                         const std::vector<double>& mu_grid,
                                         const SolverFn& solver = solve_fragment_classical);

}  // namespace qdmet::dmet
