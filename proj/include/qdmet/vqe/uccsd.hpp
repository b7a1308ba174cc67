// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qdmet/qsim/circuit.hpp"
#include "qdmet/qsim/pauli.hpp"

namespace qdmet::vqe {

/// Spin-orbital excitation; occupied and virtual index lists ascending.
struct Excitation {
    std::vector<int> from;
    std::vector<int> to;
    bool operator==(const Excitation&) const = default;
};

/// One Pauli rotation of a trotterised generator. The anti-hermitian
/// cluster operator T - T+ maps under Jordan-Wigner to sum_P i w_P P with
/// real w_P; each factor contributes exp(i theta w_P P).
struct TrotterFactor {
    qsim::PauliString string;
    double weight = 0.0;
};

struct Generator {
    Excitation excitation;
    std::vector<TrotterFactor> factors;  // canonical string order
};

/// Unitary coupled-cluster singles-and-doubles ansatz over a closed-shell
/// reference determinant. Qubits interleave spins: 2p and 2p+1 are the two
/// spin orbitals of spatial orbital p, so the reference occupies the lowest
/// n_elec qubits.
struct UccsdAnsatz {
    int n_qubits = 0;
    int n_elec = 0;
    std::uint64_t reference_bits = 0;
    std::vector<Generator> generators;

    int n_parameters() const { return static_cast<int>(generators.size()); }
};

/// All Sz-conserving singles and doubles, singles first, each block in
/// lexicographic order of its index tuple. Two electrons in two spatial
/// orbitals give two singles and one double.
UccsdAnsatz build_uccsd(int n_spatial, int n_elec);

/// Single first-order Trotter step of exp(sum_k theta_k G_k): one PauliExp
/// gate per factor, generators in ansatz order. Applied to the reference
/// basis state this is the variational state.
qsim::Circuit trotter_circuit(const UccsdAnsatz& ansatz, const Eigen::VectorXd& theta);

/// Reference X gates followed by the Trotter step, executable from |0...0>.
/// This is the preparation the noisy emulation replays (after lowering the
/// exponentials to native gates).
qsim::Circuit state_preparation(const UccsdAnsatz& ansatz, const Eigen::VectorXd& theta);

}  // namespace qdmet::vqe
