// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/qsim/pauli.hpp"

#include <bit>
#include <cmath>

#include "qdmet/common/error.hpp"

namespace qdmet::qsim {

namespace {

int popcount(std::uint64_t v) { return std::popcount(v); }

std::complex<double> i_power(int k) {
    switch (k & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

}  // namespace

PauliProduct multiply(const PauliString& a, const PauliString& b) {
    PauliProduct out;
    out.string = {a.x ^ b.x, a.z ^ b.z};
    // i^|x&z| X^x Z^z convention: collect the Y phases of each factor, the
    // anticommutation sign from moving Z^az past X^bx, and the Y phases the
    // product string absorbs back.
    int k = popcount(a.x & a.z) + popcount(b.x & b.z) + 2 * popcount(a.z & b.x) -
            popcount(out.string.x & out.string.z);
    out.phase_power = ((k % 4) + 4) % 4;
    return out;
}

bool commutes(const PauliString& a, const PauliString& b) {
    // Strings commute iff the symplectic form vanishes mod 2.
    return ((popcount(a.x & b.z) + popcount(a.z & b.x)) & 1) == 0;
}

bool qubitwise_compatible(const PauliString& a, const PauliString& b) {
    const std::uint64_t both = a.support() & b.support();
    return ((a.x ^ b.x) & both) == 0 && ((a.z ^ b.z) & both) == 0;
}

std::string to_label(const PauliString& s, int n_qubits) {
    std::string out;
    for (int q = 0; q < n_qubits; ++q) {
        const bool bx = (s.x >> q) & 1, bz = (s.z >> q) & 1;
        if (!bx && !bz) continue;
        if (!out.empty()) out += ' ';
        out += bx ? (bz ? 'Y' : 'X') : 'Z';
        out += std::to_string(q);
    }
    return out.empty() ? "I" : out;
}

PauliOp::PauliOp(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 0 || n_qubits > 64) throw CapacityError("PauliOp: qubit count out of range");
}

void PauliOp::add(const PauliString& s, std::complex<double> c) {
    auto [it, inserted] = terms_.try_emplace(s, c);
    if (!inserted) it->second += c;
}

PauliOp& PauliOp::operator+=(const PauliOp& other) {
    for (const auto& [s, c] : other.terms_) add(s, c);
    return *this;
}

PauliOp& PauliOp::operator*=(std::complex<double> c) {
    for (auto& [s, coeff] : terms_) coeff *= c;
    return *this;
}

PauliOp PauliOp::operator*(const PauliOp& other) const {
    PauliOp out(n_qubits_);
    for (const auto& [sa, ca] : terms_) {
        for (const auto& [sb, cb] : other.terms_) {
            const auto prod = multiply(sa, sb);
            out.add(prod.string, ca * cb * i_power(prod.phase_power));
        }
    }
    return out;
}

PauliOp PauliOp::dagger() const {
    PauliOp out(n_qubits_);
    for (const auto& [s, c] : terms_) out.add(s, std::conj(c));
    return out;
}

void PauliOp::prune(double drop_tol) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) < drop_tol) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
}

PauliSum PauliOp::hermitian(double imag_tol, double drop_tol) const {
    PauliSum out;
    out.n_qubits = n_qubits_;
    for (const auto& [s, c] : terms_) {
        if (std::abs(c) < drop_tol) continue;
        if (std::abs(c.imag()) >= imag_tol) {
            throw ContractError("hermitian operator has imaginary coefficient " +
                                std::to_string(c.imag()) + " on " + to_label(s, n_qubits_));
        }
        out.terms.push_back({s, c.real()});
    }
    return out;  // map iteration is already canonical (x, z) order
}

}  // namespace qdmet::qsim
