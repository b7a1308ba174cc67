// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <Eigen/Dense>

#include "qdmet/chem/integrals.hpp"
#include "qdmet/common/tensor4.hpp"

namespace qdmet::mf {

/// Molecular problem re-expressed in symmetrically orthogonalised
/// (Löwdin) atomic orbitals. Each orthogonal orbital stays attached to
/// its parent AO's atom, which is what makes atom-based fragments well
/// defined downstream.
struct OrthoBasis {
    Eigen::MatrixXd x;       // S^{-1/2}
    Eigen::MatrixXd x_inv;   // S^{+1/2}
    Eigen::MatrixXd h;       // X h X
    Tensor4 eri;             // (pq|rs) in the orthogonal basis
    double e_const = 0.0;    // nuclear repulsion, carried along unchanged

    /// Density transported to the orthogonal basis: S^{1/2} D S^{1/2}.
    /// Preserves the trace, so electron counts survive the transform.
    Eigen::MatrixXd density(const Eigen::MatrixXd& d_ao) const { return x_inv * d_ao * x_inv; }
};

/// S^{-1/2} by symmetric eigendecomposition. Throws ConditioningError when
/// the smallest eigenvalue of S is below eps.
Eigen::MatrixXd inverse_sqrt(const Eigen::MatrixXd& S, double eps = 1e-10);

/// Transforms h and the two-electron tensor with the symmetric orthogonaliser.
OrthoBasis lowdin_orthogonalize(const chem::Integrals& ints);

/// Four-index transform (pq|rs) -> sum C_up C_vq C_lr C_gs (uv|lg).
/// C may be rectangular (n_ao rows, n_mo columns).
Tensor4 transform_eri(const Tensor4& eri, const Eigen::MatrixXd& C);

/// One-electron transform C^T M C.
Eigen::MatrixXd transform_one(const Eigen::MatrixXd& M, const Eigen::MatrixXd& C);

}  // namespace qdmet::mf
