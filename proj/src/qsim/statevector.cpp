// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/qsim/statevector.hpp"

#include <bit>
#include <cmath>

#include "qdmet/common/error.hpp"

namespace qdmet::qsim {

namespace {

using cd = std::complex<double>;

// P|k> = phase(k) |k ^ x>; Y contributes i per site, Z-type bits a sign.
cd pauli_phase(const PauliString& p, std::uint64_t k) {
    cd ph(1.0, 0.0);
    switch (std::popcount(p.x & p.z) & 3) {
        case 0: ph = {1.0, 0.0}; break;
        case 1: ph = {0.0, 1.0}; break;
        case 2: ph = {-1.0, 0.0}; break;
        default: ph = {0.0, -1.0}; break;
    }
    if (std::popcount(p.z & k) & 1) ph = -ph;
    return ph;
}

}  // namespace

Statevector Statevector::basis_state(int n_qubits, std::uint64_t bits) {
    if (n_qubits < 0 || n_qubits > 26)
        throw CapacityError("statevector: qubit count beyond dense capacity");
    if (n_qubits < 64 && (bits >> n_qubits) != 0)
        throw ContractError("statevector: basis bits out of range");
    Statevector s;
    s.n_qubits = n_qubits;
    s.amp.assign(std::size_t{1} << n_qubits, cd{0.0, 0.0});
    s.amp[bits] = 1.0;
    return s;
}

double Statevector::norm() const {
    double n2 = 0.0;
    for (const auto& a : amp) n2 += std::norm(a);
    return std::sqrt(n2);
}

void apply_gate(Statevector& psi, const Gate& g) {
    auto& a = psi.amp;
    const std::size_t dim = a.size();
    const std::uint64_t bit = 1ULL << g.q0;

    switch (g.kind) {
        case Gate::Kind::X:
            for (std::uint64_t k = 0; k < dim; ++k)
                if (!(k & bit)) std::swap(a[k], a[k | bit]);
            break;
        case Gate::Kind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            for (std::uint64_t k = 0; k < dim; ++k) {
                if (k & bit) continue;
                const cd lo = a[k], hi = a[k | bit];
                a[k] = r * (lo + hi);
                a[k | bit] = r * (lo - hi);
            }
            break;
        }
        case Gate::Kind::Rz: {
            const cd e0 = std::polar(1.0, -g.angle / 2.0), e1 = std::polar(1.0, g.angle / 2.0);
            for (std::uint64_t k = 0; k < dim; ++k) a[k] *= (k & bit) ? e1 : e0;
            break;
        }
        case Gate::Kind::Ry: {
            const double c = std::cos(g.angle / 2.0), s = std::sin(g.angle / 2.0);
            for (std::uint64_t k = 0; k < dim; ++k) {
                if (k & bit) continue;
                const cd lo = a[k], hi = a[k | bit];
                a[k] = c * lo - s * hi;
                a[k | bit] = s * lo + c * hi;
            }
            break;
        }
        case Gate::Kind::Cnot: {
            const std::uint64_t cbit = 1ULL << g.q0, tbit = 1ULL << g.q1;
            for (std::uint64_t k = 0; k < dim; ++k)
                if ((k & cbit) && !(k & tbit)) std::swap(a[k], a[k | tbit]);
            break;
        }
        case Gate::Kind::PauliExp: {
            const double c = std::cos(g.angle / 2.0), s = std::sin(g.angle / 2.0);
            const cd mis(0.0, -s);
            const PauliString& p = g.pauli;
            if (p.x == 0) {
                for (std::uint64_t k = 0; k < dim; ++k) {
                    const double sign = (std::popcount(p.z & k) & 1) ? -1.0 : 1.0;
                    a[k] *= cd{c, -s * sign};
                }
            } else {
                for (std::uint64_t k = 0; k < dim; ++k) {
                    const std::uint64_t j = k ^ p.x;
                    if (j < k) continue;
                    const cd ak = a[k], aj = a[j];
                    a[k] = c * ak + mis * pauli_phase(p, j) * aj;
                    a[j] = c * aj + mis * pauli_phase(p, k) * ak;
                }
            }
            break;
        }
    }
}

void apply_circuit(Statevector& psi, const Circuit& c) {
    if (c.n_qubits() != psi.n_qubits) throw ContractError("apply_circuit: width mismatch");
    for (const auto& g : c.gates()) apply_gate(psi, g);
    if (std::abs(psi.norm() - 1.0) > 1e-10)
        throw ContractError("apply_circuit: norm drifted, a gate is not unitary");
}

void apply_pauli(Statevector& psi, const PauliString& p) {
    auto& a = psi.amp;
    const std::size_t dim = a.size();
    if (p.x == 0) {
        for (std::uint64_t k = 0; k < dim; ++k)
            if (std::popcount(p.z & k) & 1) a[k] = -a[k];
        return;
    }
    for (std::uint64_t k = 0; k < dim; ++k) {
        const std::uint64_t j = k ^ p.x;
        if (j < k) continue;
        const cd ak = a[k], aj = a[j];
        a[j] = pauli_phase(p, k) * ak;
        a[k] = pauli_phase(p, j) * aj;
    }
}

std::complex<double> pauli_expectation(const Statevector& psi, const PauliString& p) {
    cd acc(0.0, 0.0);
    const auto& a = psi.amp;
    for (std::uint64_t k = 0; k < a.size(); ++k)
        acc += std::conj(a[k ^ p.x]) * pauli_phase(p, k) * a[k];
    return acc;
}

double expectation(const Statevector& psi, const PauliSum& op) {
    if (op.n_qubits != psi.n_qubits) throw ContractError("expectation: width mismatch");
    cd acc(0.0, 0.0);
    for (const auto& t : op.terms) acc += t.coeff * pauli_expectation(psi, t.string);
    if (std::abs(acc.imag()) >= 1e-10)
        throw ContractError("expectation: imaginary residue " + std::to_string(acc.imag()));
    return acc.real();
}

std::complex<double> expectation(const Statevector& psi, const PauliOp& op) {
    cd acc(0.0, 0.0);
    for (const auto& [s, c] : op.terms()) acc += c * pauli_expectation(psi, s);
    return acc;
}

Statevector apply_observable(const Statevector& psi, const PauliSum& op) {
    if (op.n_qubits != psi.n_qubits) throw ContractError("apply_observable: width mismatch");
    Statevector out;
    out.n_qubits = psi.n_qubits;
    out.amp.assign(psi.amp.size(), cd(0.0, 0.0));
    for (const auto& t : op.terms)
        for (std::uint64_t k = 0; k < psi.amp.size(); ++k)
            out.amp[k ^ t.string.x] += t.coeff * pauli_phase(t.string, k) * psi.amp[k];
    return out;
}

}  // namespace qdmet::qsim
