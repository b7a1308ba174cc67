// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/qsim/jordan_wigner.hpp"

#include <cmath>
#include <vector>

#include "qdmet/common/error.hpp"

namespace qdmet::qsim {

PauliOp jw_lowering(int orbital, int n_qubits) {
    if (orbital < 0 || orbital >= n_qubits) throw ContractError("jw_lowering: orbital out of range");
    PauliOp op(n_qubits);
    const std::uint64_t site = 1ULL << orbital;
    const std::uint64_t parity = site - 1;  // Z string on lower orbitals
    op.add({site, parity}, {0.5, 0.0});
    op.add({site, parity | site}, {0.0, 0.5});  // (X + iY)/2, Y = both bits
    return op;
}

PauliOp jw_raising(int orbital, int n_qubits) { return jw_lowering(orbital, n_qubits).dagger(); }

PauliOp jw_excitation(int p, int q, int n_qubits) {
    return jw_raising(p, n_qubits) * jw_lowering(q, n_qubits);
}

PauliOp jw_coefficient_operator(const Eigen::MatrixXd& A, const Tensor4& W) {
    const int n = static_cast<int>(A.rows());
    if (n > 16) throw CapacityError("jw_coefficient_operator: more than 16 spatial orbitals");
    if (static_cast<int>(W.dim()) != n || A.cols() != n)
        throw ContractError("jw_coefficient_operator: dimension mismatch");
    const int nq = 2 * n;

    std::vector<PauliOp> up, down;  // ladder cache per spin orbital
    up.reserve(nq);
    down.reserve(nq);
    for (int so = 0; so < nq; ++so) {
        down.push_back(jw_lowering(so, nq));
        up.push_back(jw_raising(so, nq));
    }

    PauliOp acc(nq);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            if (A(p, q) == 0.0) continue;
            for (int s = 0; s < 2; ++s) {
                PauliOp t = up[spin_orbital(p, s)] * down[spin_orbital(q, s)];
                t *= A(p, q);
                acc += t;
            }
        }
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) {
                    const double v = W(p, q, r, s);
                    if (std::abs(v) < 1e-14) continue;
                    for (int sg = 0; sg < 2; ++sg)
                        for (int tu = 0; tu < 2; ++tu) {
                            PauliOp t = up[spin_orbital(p, sg)] * up[spin_orbital(r, tu)] *
                                        down[spin_orbital(s, tu)] * down[spin_orbital(q, sg)];
                            t *= 0.5 * v;
                            acc += t;
                        }
                }
    acc.prune();
    return acc;
}

PauliSum jw_hamiltonian(const Eigen::MatrixXd& h, const Tensor4& V, double e_const) {
    PauliOp acc = jw_coefficient_operator(h, V);
    acc.add({0, 0}, e_const);
    acc.prune();
    return acc.hermitian();
}

PauliSum jw_number_operator(int n_qubits) {
    PauliOp acc(n_qubits);
    for (int q = 0; q < n_qubits; ++q) {
        acc.add({0, 0}, 0.5);
        acc.add({0, 1ULL << q}, -0.5);
    }
    return acc.hermitian();
}

std::uint64_t hf_reference_bits(int n_elec) {
    if (n_elec < 0 || n_elec > 63) throw ContractError("hf_reference_bits: electron count");
    return (1ULL << n_elec) - 1;
}

}  // namespace qdmet::qsim
