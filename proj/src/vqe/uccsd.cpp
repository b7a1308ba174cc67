// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/vqe/uccsd.hpp"

#include <cmath>

#include "qdmet/common/error.hpp"
#include "qdmet/qsim/jordan_wigner.hpp"

namespace qdmet::vqe {

namespace {

using qsim::PauliOp;

// Weights of G = T - T+ written as sum_P i w_P P. Hermitian residue means
// the caller paired the ladder operators wrongly.
std::vector<TrotterFactor> antihermitian_factors(const PauliOp& t_op) {
    PauliOp gen = t_op;
    PauliOp neg_dagger = t_op.dagger();
    neg_dagger *= -1.0;
    gen += neg_dagger;
    gen.prune();

    std::vector<TrotterFactor> out;
    for (const auto& [s, c] : gen.terms()) {
        if (std::abs(c.real()) > 1e-12)
            throw ContractError("uccsd: generator has a hermitian pauli residue");
        if (s.identity() || std::abs(c.imag()) < 1e-14) continue;
        out.push_back({s, c.imag()});
    }
    return out;
}

}  // namespace

UccsdAnsatz build_uccsd(int n_spatial, int n_elec) {
    if (n_elec <= 0 || n_elec % 2 != 0)
        throw ContractError("uccsd: closed-shell reference needs a positive even electron count");
    const int nq = 2 * n_spatial;
    if (n_elec > nq) throw ContractError("uccsd: more electrons than spin orbitals");

    UccsdAnsatz a;
    a.n_qubits = nq;
    a.n_elec = n_elec;
    a.reference_bits = qsim::hf_reference_bits(n_elec);

    const auto spin = [](int so) { return so & 1; };

    for (int i = 0; i < n_elec; ++i)
        for (int v = n_elec; v < nq; ++v) {
            if (spin(i) != spin(v)) continue;
            const PauliOp t = qsim::jw_raising(v, nq) * qsim::jw_lowering(i, nq);
            a.generators.push_back({Excitation{{i}, {v}}, antihermitian_factors(t)});
        }

    for (int i = 0; i < n_elec; ++i)
        for (int j = i + 1; j < n_elec; ++j)
            for (int v = n_elec; v < nq; ++v)
                for (int w = v + 1; w < nq; ++w) {
                    if (spin(i) + spin(j) != spin(v) + spin(w)) continue;
                    const PauliOp t = qsim::jw_raising(v, nq) * qsim::jw_raising(w, nq) *
                                      qsim::jw_lowering(j, nq) * qsim::jw_lowering(i, nq);
                    a.generators.push_back({Excitation{{i, j}, {v, w}}, antihermitian_factors(t)});
                }
    return a;
}

qsim::Circuit trotter_circuit(const UccsdAnsatz& ansatz, const Eigen::VectorXd& theta) {
    if (theta.size() != ansatz.n_parameters())
        throw ContractError("uccsd: parameter count does not match the ansatz");
    qsim::Circuit c(ansatz.n_qubits);
    for (int k = 0; k < ansatz.n_parameters(); ++k)
        for (const auto& f : ansatz.generators[static_cast<std::size_t>(k)].factors)
            c.pauli_exp(f.string, -2.0 * theta[k] * f.weight);  // exp(i theta w P)
    return c;
}

qsim::Circuit state_preparation(const UccsdAnsatz& ansatz, const Eigen::VectorXd& theta) {
    qsim::Circuit c(ansatz.n_qubits);
    for (int q = 0; q < ansatz.n_qubits; ++q)
        if ((ansatz.reference_bits >> q) & 1) c.x(q);
    c.append(trotter_circuit(ansatz, theta));
    return c;
}

}  // namespace qdmet::vqe
