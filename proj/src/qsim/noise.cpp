// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/qsim/noise.hpp"

#include <algorithm>

#include "qdmet/common/error.hpp"

namespace qdmet::qsim {

std::size_t NoiseModel::pair_index(int a, int b) const {
    const int n = n_qubits();
    if (a == b || a < 0 || b < 0 || a >= n || b >= n)
        throw ContractError("noise model: bad qubit pair");
    if (a > b) std::swap(a, b);
    // Row-packed strict upper triangle.
    return static_cast<std::size_t>(a) * n - static_cast<std::size_t>(a) * (a + 1) / 2 +
           static_cast<std::size_t>(b - a - 1);
}

NoiseModel NoiseModel::uniform(int n_qubits, double readout, double p1, double p2) {
    NoiseModel m;
    m.read1_given0.assign(static_cast<std::size_t>(n_qubits), readout);
    m.read0_given1.assign(static_cast<std::size_t>(n_qubits), readout);
    m.depol1.assign(static_cast<std::size_t>(n_qubits), p1);
    m.depol2.assign(static_cast<std::size_t>(n_qubits) * (n_qubits - 1) / 2, p2);
    m.validate();
    return m;
}

NoiseModel NoiseModel::sampled(int n_qubits, std::uint64_t seed) {
    NoiseModel m;
    m.seed = seed;
    common::Rng rng(common::derive_seed(seed, "noise-calibration"));
    for (int q = 0; q < n_qubits; ++q) {
        m.read1_given0.push_back(rng.uniform(kReadoutErrMin, kReadoutErrMax));
        m.read0_given1.push_back(rng.uniform(kReadoutErrMin, kReadoutErrMax));
        m.depol1.push_back(rng.uniform(kDepol1Min, kDepol1Max));
    }
    for (int a = 0; a < n_qubits; ++a)
        for (int b = a + 1; b < n_qubits; ++b)
            m.depol2.push_back(rng.uniform(kDepol2Min, kDepol2Max));
    m.validate();
    return m;
}

void NoiseModel::validate() const {
    auto ok = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [](double p) { return p >= 0.0 && p <= 1.0; });
    };
    if (!ok(read1_given0) || !ok(read0_given1) || !ok(depol1) || !ok(depol2))
        throw ContractError("noise model: probability outside [0, 1]");
    if (read0_given1.size() != read1_given0.size() || depol1.size() != read1_given0.size())
        throw ContractError("noise model: per-qubit vectors disagree on qubit count");
}

namespace {

void random_pauli_on(Statevector& psi, int q, common::Rng& rng) {
    // Uniform over {X, Y, Z}: the trajectory form of a depolarising channel.
    const std::uint64_t bit = 1ULL << q;
    switch (rng.uniform_index(3)) {
        case 0: apply_pauli(psi, {bit, 0}); break;
        case 1: apply_pauli(psi, {bit, bit}); break;
        default: apply_pauli(psi, {0, bit}); break;
    }
}

void random_pauli_pair(Statevector& psi, int a, int b, common::Rng& rng) {
    // Uniform over the 15 non-identity two-qubit Paulis.
    const auto pick = 1 + rng.uniform_index(15);
    const int pa = static_cast<int>(pick % 4), pb = static_cast<int>(pick / 4);
    PauliString p;
    auto set = [&p](int which, int q) {
        const std::uint64_t bit = 1ULL << q;
        if (which == 1) p.x |= bit;            // X
        if (which == 2) p.x |= bit, p.z |= bit;  // Y
        if (which == 3) p.z |= bit;            // Z
    };
    set(pa, a);
    set(pb, b);
    apply_pauli(psi, p);
}

}  // namespace

void apply_circuit_noisy(Statevector& psi, const Circuit& c, const NoiseModel& noise,
                         common::Rng& rng) {
    if (c.n_qubits() != psi.n_qubits) throw ContractError("apply_circuit_noisy: width mismatch");
    if (noise.n_qubits() < c.n_qubits())
        throw ContractError("apply_circuit_noisy: noise model too narrow");
    for (const auto& g : c.gates()) {
        apply_gate(psi, g);
        switch (g.kind) {
            case Gate::Kind::X:
            case Gate::Kind::H:
            case Gate::Kind::Rz:
            case Gate::Kind::Ry:
                if (rng.uniform() < noise.depol1[static_cast<std::size_t>(g.q0)])
                    random_pauli_on(psi, g.q0, rng);
                break;
            case Gate::Kind::Cnot:
                if (rng.uniform() < noise.depol2_at(g.q0, g.q1))
                    random_pauli_pair(psi, g.q0, g.q1, rng);
                break;
            case Gate::Kind::PauliExp:
                break;
        }
    }
}

std::uint64_t apply_readout_noise(std::uint64_t bits, int n_qubits, const NoiseModel& noise,
                                  common::Rng& rng) {
    for (int q = 0; q < n_qubits; ++q) {
        const std::uint64_t bit = 1ULL << q;
        const double p_flip = (bits & bit) ? noise.read0_given1[static_cast<std::size_t>(q)]
                                           : noise.read1_given0[static_cast<std::size_t>(q)];
        if (rng.uniform() < p_flip) bits ^= bit;
    }
    return bits;
}

}  // namespace qdmet::qsim
