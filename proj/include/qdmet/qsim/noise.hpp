// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <cstdint>
#include <vector>

#include "qdmet/common/rng.hpp"
#include "qdmet/qsim/circuit.hpp"
#include "qdmet/qsim/statevector.hpp"

namespace qdmet::qsim {

/// Calibration ranges of the emulated device: readout flip probabilities,
/// single-qubit gate and CNOT depolarising rates.
inline constexpr double kReadoutErrMin = 5.1e-3;
inline constexpr double kReadoutErrMax = 2.48e-2;
inline constexpr double kDepol1Min = 1.868e-4;
inline constexpr double kDepol1Max = 3.025e-4;
inline constexpr double kDepol2Min = 4.587e-3;
inline constexpr double kDepol2Max = 1.037e-2;

/// Stochastic gate and readout noise. Readout errors are per qubit and
/// asymmetric; depolarising rates are per qubit (one-qubit gates) and per
/// qubit pair (CNOT). Applied trajectory-style: each noisy gate inserts a
/// random Pauli with its calibrated probability.
struct NoiseModel {
    std::vector<double> read1_given0;  // p(read 1 | qubit in 0)
    std::vector<double> read0_given1;  // p(read 0 | qubit in 1)
    std::vector<double> depol1;        // per qubit
    std::vector<double> depol2;        // per unordered pair, see pair_index
    std::uint64_t seed = 0;            // calibration draw identity

    int n_qubits() const { return static_cast<int>(read1_given0.size()); }
    std::size_t pair_index(int a, int b) const;
    double depol2_at(int a, int b) const { return depol2[pair_index(a, b)]; }

    /// Same probabilities on every qubit and pair.
    static NoiseModel uniform(int n_qubits, double readout, double p1, double p2);

    /// Per-qubit and per-pair rates drawn uniformly from the calibration
    /// ranges above, reproducibly from the seed.
    static NoiseModel sampled(int n_qubits, std::uint64_t seed);

    /// Throws ContractError when any probability leaves [0, 1].
    void validate() const;
};

/// Applies the circuit with trajectory noise: after each X/H/Rz/Ry a random
/// Pauli on the target with probability depol1, after each CNOT a random
/// two-qubit Pauli with probability depol2. PauliExp gates pass through
/// noiseless; noisy synthesis emits ladder gates instead.
void apply_circuit_noisy(Statevector& psi, const Circuit& c, const NoiseModel& noise,
                         common::Rng& rng);

/// Per-bit asymmetric readout flips on a measured bitstring.
std::uint64_t apply_readout_noise(std::uint64_t bits, int n_qubits, const NoiseModel& noise,
                                  common::Rng& rng);

}  // namespace qdmet::qsim
