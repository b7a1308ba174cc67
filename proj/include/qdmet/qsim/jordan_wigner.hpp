// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "qdmet/common/tensor4.hpp"
#include "qdmet/qsim/pauli.hpp"

namespace qdmet::qsim {

/// Spin orbitals interleave: qubit 2p is the up spin of spatial orbital p,
/// qubit 2p+1 the down spin. Particle number equals bitstring Hamming
/// weight, which the symmetry-verification filter relies on.
inline int spin_orbital(int spatial, int spin) { return 2 * spatial + spin; }

/// Fermionic ladder operators under the Jordan-Wigner encoding.
PauliOp jw_lowering(int orbital, int n_qubits);
PauliOp jw_raising(int orbital, int n_qubits);

/// a+_p a_q over spin orbitals.
PauliOp jw_excitation(int p, int q, int n_qubits);

/// A_pq a+a + 1/2 W_pqrs a+a+aa (chemist notation, spatial orbitals, spin
/// summed) as a raw qubit operator. A and W need not be symmetric, so the
/// result is generally non-hermitian; row-restricted fragment observables
/// are built this way and hermitised by the caller. Throws CapacityError
/// above 16 spatial orbitals (32 qubits).
PauliOp jw_coefficient_operator(const Eigen::MatrixXd& A, const Tensor4& W);

/// Maps h_pq a+a + 1/2 (pq|rs) a+a+aa plus a constant onto qubits and
/// checks hermiticity.
PauliSum jw_hamiltonian(const Eigen::MatrixXd& h, const Tensor4& V, double e_const);

/// Total particle number sum_q (I - Z_q)/2.
PauliSum jw_number_operator(int n_qubits);

/// Closed-shell reference determinant: the n_elec lowest spin orbitals.
std::uint64_t hf_reference_bits(int n_elec);

}  // namespace qdmet::qsim
