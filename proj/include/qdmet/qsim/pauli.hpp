// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qdmet::qsim {

/// Pauli string in symplectic form over at most 64 qubits. Qubit q carries
/// X when only x has bit q, Z when only z has it, Y when both do. The
/// represented operator is i^{|x&z|} X^x Z^z, which makes every string
/// hermitian with eigenvalues +-1.
struct PauliString {
    std::uint64_t x = 0;
    std::uint64_t z = 0;

    bool identity() const { return x == 0 && z == 0; }
    std::uint64_t support() const { return x | z; }
    auto operator<=>(const PauliString&) const = default;
};

/// String product with the accumulated power of i: a * b = i^k * c.
struct PauliProduct {
    PauliString string;
    int phase_power = 0;  // exponent of i, 0..3
};
PauliProduct multiply(const PauliString& a, const PauliString& b);

bool commutes(const PauliString& a, const PauliString& b);

/// True when a and b act with the same Pauli on every shared qubit, which
/// lets them share one measurement basis.
bool qubitwise_compatible(const PauliString& a, const PauliString& b);

/// Human-readable form like "X0 Z2 Y5"; the identity prints as "I".
std::string to_label(const PauliString& s, int n_qubits);

struct PauliTerm {
    PauliString string;
    double coeff = 0.0;
};

/// Hermitian operator: merged strings with real coefficients in canonical
/// (x, z) order. Produced from PauliOp once construction algebra is done.
struct PauliSum {
    int n_qubits = 0;
    std::vector<PauliTerm> terms;

    double identity_coeff() const {
        return (!terms.empty() && terms.front().string.identity()) ? terms.front().coeff : 0.0;
    }
};

/// Complex linear combination of Pauli strings; the working representation
/// for fermionic operator algebra where intermediate products carry phases.
class PauliOp {
  public:
    explicit PauliOp(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    const std::map<PauliString, std::complex<double>>& terms() const { return terms_; }

    void add(const PauliString& s, std::complex<double> c);
    PauliOp& operator+=(const PauliOp& other);
    PauliOp& operator*=(std::complex<double> c);
    PauliOp operator*(const PauliOp& other) const;
    PauliOp dagger() const;

    /// Drops strings with |coefficient| below drop_tol.
    void prune(double drop_tol = 1e-12);

    /// Real view of a hermitian operator. Throws ContractError when any
    /// coefficient has imaginary part at or above imag_tol.
    PauliSum hermitian(double imag_tol = 1e-10, double drop_tol = 1e-12) const;

  private:
    int n_qubits_;
    std::map<PauliString, std::complex<double>> terms_;
};

}  // namespace qdmet::qsim
