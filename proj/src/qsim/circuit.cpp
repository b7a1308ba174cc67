// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/qsim/circuit.hpp"

#include <cmath>
#include <vector>

#include "qdmet/common/error.hpp"

namespace qdmet::qsim {

void Circuit::check(int q) const {
    if (q < 0 || q >= n_qubits_) throw ContractError("circuit: qubit index out of range");
}

Circuit& Circuit::x(int q) {
    check(q);
    gates_.push_back({Gate::Kind::X, q, -1, 0.0, {}});
    return *this;
}

Circuit& Circuit::h(int q) {
    check(q);
    gates_.push_back({Gate::Kind::H, q, -1, 0.0, {}});
    return *this;
}

Circuit& Circuit::rz(int q, double angle) {
    check(q);
    gates_.push_back({Gate::Kind::Rz, q, -1, angle, {}});
    return *this;
}

Circuit& Circuit::ry(int q, double angle) {
    check(q);
    gates_.push_back({Gate::Kind::Ry, q, -1, angle, {}});
    return *this;
}

Circuit& Circuit::cnot(int control, int target) {
    check(control);
    check(target);
    if (control == target) throw ContractError("circuit: cnot control equals target");
    gates_.push_back({Gate::Kind::Cnot, control, target, 0.0, {}});
    return *this;
}

Circuit& Circuit::pauli_exp(const PauliString& p, double angle) {
    if (n_qubits_ < 64 && (p.support() >> n_qubits_) != 0)
        throw ContractError("circuit: pauli support out of range");
    gates_.push_back({Gate::Kind::PauliExp, 0, -1, angle, p});
    return *this;
}

Circuit& Circuit::append(const Circuit& other) {
    if (other.n_qubits_ != n_qubits_) throw ContractError("circuit: appending width mismatch");
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
}

Circuit lower_pauli_exponentials(const Circuit& c) {
    Circuit out(c.n_qubits());
    for (const auto& g : c.gates()) {
        switch (g.kind) {
            case Gate::Kind::X: out.x(g.q0); break;
            case Gate::Kind::H: out.h(g.q0); break;
            case Gate::Kind::Rz: out.rz(g.q0, g.angle); break;
            case Gate::Kind::Ry: out.ry(g.q0, g.angle); break;
            case Gate::Kind::Cnot: out.cnot(g.q0, g.q1); break;
            case Gate::Kind::PauliExp: {
                const std::uint64_t support = g.pauli.support();
                if (support == 0) break;  // pure global phase
                std::vector<int> qs;
                for (int q = 0; q < c.n_qubits(); ++q)
                    if ((support >> q) & 1) qs.push_back(q);
                for (int q : qs) {
                    const bool bx = (g.pauli.x >> q) & 1, bz = (g.pauli.z >> q) & 1;
                    if (bx && bz) {
                        out.rz(q, -M_PI / 2.0);
                        out.h(q);
                    } else if (bx) {
                        out.h(q);
                    }
                }
                for (std::size_t i = 0; i + 1 < qs.size(); ++i) out.cnot(qs[i], qs[i + 1]);
                out.rz(qs.back(), g.angle);
                for (std::size_t i = qs.size() - 1; i-- > 0;) out.cnot(qs[i], qs[i + 1]);
                for (auto it = qs.rbegin(); it != qs.rend(); ++it) {
                    const int q = *it;
                    const bool bx = (g.pauli.x >> q) & 1, bz = (g.pauli.z >> q) & 1;
                    if (bx && bz) {
                        out.h(q);
                        out.rz(q, M_PI / 2.0);
                    } else if (bx) {
                        out.h(q);
                    }
                }
                break;
            }
        }
    }
    return out;
}

}  // namespace qdmet::qsim
