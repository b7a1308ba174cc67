// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <Eigen/Dense>

#include "qdmet/chem/basis.hpp"
#include "qdmet/chem/molecule.hpp"
#include "qdmet/common/tensor4.hpp"

namespace qdmet::chem {

/// All one- and two-electron integrals over the contracted AO basis, plus the
/// nuclear repulsion energy. Everything is in atomic units.
struct Integrals {
    Eigen::MatrixXd overlap;   // S_uv
    Eigen::MatrixXd kinetic;   // T_uv
    Eigen::MatrixXd nuclear;   // V_uv, electron-nucleus attraction
    Eigen::MatrixXd h_core;    // T + V
    Tensor4 eri;               // (uv|ls), chemist notation
    double e_nuc = 0.0;

    Integrals() : eri(0) {}
};

/// Overlap of two contracted functions (exposed for tests).
double overlap_element(const ContractedGaussian& a, const ContractedGaussian& b);

/// Kinetic-energy matrix element of two contracted functions.
double kinetic_element(const ContractedGaussian& a, const ContractedGaussian& b);

/// Electron-nucleus attraction matrix element, summed over all nuclei.
double nuclear_element(const ContractedGaussian& a, const ContractedGaussian& b,
                       const Molecule& mol);

/// Two-electron repulsion integral (ab|cd) in chemist notation.
double eri_element(const ContractedGaussian& a, const ContractedGaussian& b,
                   const ContractedGaussian& c, const ContractedGaussian& d);

/// Point-charge repulsion between all nuclei.
double nuclear_repulsion(const Molecule& mol);

/// Computes the full integral set. Throws ConditioningError when the overlap
/// matrix is numerically singular (smallest eigenvalue below eps_linear_dep).
Integrals compute_integrals(const Molecule& mol, const BasisSet& basis,
                            double eps_linear_dep = 1e-8);

}  // namespace qdmet::chem
