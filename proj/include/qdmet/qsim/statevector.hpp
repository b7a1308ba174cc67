// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qdmet/qsim/circuit.hpp"
#include "qdmet/qsim/pauli.hpp"

namespace qdmet::qsim {

/// Dense 2^n register. Bit q of an amplitude index is the computational
/// value of qubit q.
struct Statevector {
    int n_qubits = 0;
    std::vector<std::complex<double>> amp;

    static Statevector basis_state(int n_qubits, std::uint64_t bits);
    double norm() const;
};

void apply_gate(Statevector& psi, const Gate& g);

/// Applies every gate in order, then checks the norm stayed at 1 within
/// 1e-10 (any drift indicates a broken gate, not physics).
void apply_circuit(Statevector& psi, const Circuit& c);

/// psi <- P psi, including the phases Y and Z strings contribute.
void apply_pauli(Statevector& psi, const PauliString& p);

std::complex<double> pauli_expectation(const Statevector& psi, const PauliString& p);

/// <psi|O|psi> for a hermitian operator; throws ContractError when the
/// accumulated imaginary residue reaches 1e-10.
double expectation(const Statevector& psi, const PauliSum& op);

/// Complex expectation for operator algebra (non-hermitian allowed).
std::complex<double> expectation(const Statevector& psi, const PauliOp& op);

/// O|psi> as a new (generally unnormalised) vector.
Statevector apply_observable(const Statevector& psi, const PauliSum& op);

}  // namespace qdmet::qsim
