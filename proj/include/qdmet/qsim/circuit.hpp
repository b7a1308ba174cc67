// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <vector>

#include "qdmet/qsim/pauli.hpp"

namespace qdmet::qsim {

struct Gate {
    enum class Kind { X, H, Rz, Ry, Cnot, PauliExp };
    Kind kind = Kind::X;
    int q0 = 0;           // target; control for Cnot
    int q1 = -1;          // Cnot target
    double angle = 0.0;   // Rz/Ry/PauliExp angle, exp(-i angle/2 P) convention
    PauliString pauli;    // PauliExp support
};

/// Ordered gate list. Qubit indices are validated at append time so a
/// circuit can always be applied to a matching register.
class Circuit {
  public:
    explicit Circuit(int n_qubits = 0) : n_qubits_(n_qubits) {}

    int n_qubits() const { return n_qubits_; }
    const std::vector<Gate>& gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }

    Circuit& x(int q);
    Circuit& h(int q);
    Circuit& rz(int q, double angle);
    Circuit& ry(int q, double angle);
    Circuit& cnot(int control, int target);
    Circuit& pauli_exp(const PauliString& p, double angle);
    Circuit& append(const Circuit& other);

  private:
    void check(int q) const;
    int n_qubits_;
    std::vector<Gate> gates_;
};

/// Expands every PauliExp into basis rotations, a CNOT parity ladder, one
/// Rz, and the mirror image. The result implements the same unitary exactly
/// (no stray global phase: the two S-dagger-style rotations cancel) and is
/// what the noisy emulation executes, since trajectory noise attaches to
/// elementary gates only. Identity-support exponentials only shift a global
/// phase and are dropped.
Circuit lower_pauli_exponentials(const Circuit& c);

}  // namespace qdmet::qsim
