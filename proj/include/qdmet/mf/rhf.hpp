// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <Eigen/Dense>

#include "qdmet/chem/integrals.hpp"
#include "qdmet/common/tensor4.hpp"

namespace qdmet::mf {

struct RhfOptions {
    int max_iter = 200;
    double conv_energy = 1e-9;  // |dE| between cycles
    double conv_error = 1e-7;   // Frobenius norm of FDS - SDF
    int diis_depth = 8;
};

struct RhfResult {
    Eigen::MatrixXd C;    // MO coefficients (columns)
    Eigen::VectorXd eps;  // orbital energies, ascending
    Eigen::MatrixXd D;    // spin-summed density, tr(D S) = n_electrons
    Eigen::MatrixXd F;    // converged Fock matrix
    double e_elec = 0.0;
    double e_total = 0.0;  // e_elec + constant (nuclear or embedding core)
    int n_iter = 0;
    bool converged = false;
};

/// J_uv = sum_ls (uv|ls) D_ls for a symmetric spin-summed density.
Eigen::MatrixXd coulomb_matrix(const Tensor4& eri, const Eigen::MatrixXd& D);

/// K_uv = sum_ls (ul|sv) D_ls.
Eigen::MatrixXd exchange_matrix(const Tensor4& eri, const Eigen::MatrixXd& D);

/// Closed-shell Fock matrix h + J(D) - K(D)/2.
Eigen::MatrixXd build_fock(const Eigen::MatrixXd& h, const Tensor4& eri,
                           const Eigen::MatrixXd& D);

/// Restricted Hartree-Fock with DIIS in a possibly non-orthogonal basis.
/// Works for molecules (S from integrals) and for embedding Hamiltonians
/// (S = identity). n_electrons must be even. Throws ConditioningError when
/// SCF fails to converge within max_iter.
RhfResult run_rhf(const Eigen::MatrixXd& h, const Tensor4& eri,
                  const Eigen::MatrixXd& S, double e_const, int n_electrons,
                  const RhfOptions& opts = {});

/// Convenience wrapper for a molecular computation.
RhfResult run_rhf(const chem::Integrals& ints, int n_electrons, const RhfOptions& opts = {});

}  // namespace qdmet::mf
