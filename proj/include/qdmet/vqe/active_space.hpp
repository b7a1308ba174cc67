// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qdmet/common/tensor4.hpp"

namespace qdmet::vqe {

/// Orbital-freezing window around the Fermi level, in molecular-orbital
/// indices of whatever mean-field solution it was selected from.
struct ActiveSpace {
    std::vector<int> frozen_occ;
    std::vector<int> active_occ;
    std::vector<int> active_virt;
    std::vector<int> frozen_virt;

    int n_active() const {
        return static_cast<int>(active_occ.size() + active_virt.size());
    }
    int n_elec_active() const { return 2 * static_cast<int>(active_occ.size()); }
    int n_qubits() const { return 2 * n_active(); }
    /// Active MO indices, occupied first, each list ascending.
    std::vector<int> active_indices() const;
};

/// Splits n_active spatial orbitals around the Fermi level: an even count
/// goes half to HOMOs and half to LUMOs, an odd count puts the extra
/// orbital on the virtual side. Throws ContractError when the request
/// exceeds what the problem has.
ActiveSpace select_active_space(int n_orb, int n_elec, int n_active);

/// Explicit occupied/virtual split.
ActiveSpace select_active_space(int n_orb, int n_elec, int n_occ_active, int n_virt_active);

/// Active-space count that fills a given qubit budget (2 qubits per spatial
/// orbital). Throws ContractError for odd qubit counts.
ActiveSpace active_space_from_qubits(int n_orb, int n_elec, int n_qubits);

/// Integrals reduced to the active window, with the frozen-core mean field
/// folded into the one-body part and the frozen energy split off.
struct FoldedProblem {
    Eigen::MatrixXd h;   // n_active x n_active
    Tensor4 eri;         // active-only block
    double e_frozen = 0.0;
    Eigen::MatrixXd d_core;  // frozen-core density, full MO dimension
};

/// h and eri must be in the MO basis the active space was selected from.
FoldedProblem fold_frozen_core(const Eigen::MatrixXd& h_mo, const Tensor4& eri_mo,
                               const ActiveSpace& space);

/// Rebuilds full-MO-basis RDMs from active-space RDMs: the frozen core
/// contributes closed-shell mean-field blocks, cross terms included, so the
/// full-space energy contraction reproduces e_frozen plus the active energy.
void assemble_rdms(const ActiveSpace& space, const Eigen::MatrixXd& rdm1_active,
                   const Tensor4& rdm2_active, Eigen::MatrixXd& rdm1_mo, Tensor4& rdm2_mo);

}  // namespace qdmet::vqe
