// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qdmet/qsim/measurement.hpp"
#include "qdmet/qsim/noise.hpp"

namespace qdmet::mitigation {

/// Tensor-product readout calibration: one column-stochastic 2x2 matrix per
/// qubit, m(read, prepared). The full 2^n confusion matrix is their
/// Kronecker product but is never materialised.
struct ConfusionMatrix {
    std::vector<Eigen::Matrix2d> qubit;
    int n_calibration_shots = 0;

    int n_qubits() const { return static_cast<int>(qubit.size()); }

    /// 2-norm condition number of the tensor-product matrix: the product of
    /// the per-qubit condition numbers.
    double condition_number() const;

    /// Perfect readout.
    static ConfusionMatrix identity(int n_qubits);

    /// Known symmetric-flip model, column [[1-p, p], [p, 1-p]] on every
    /// qubit; the synthetic ground truth used in recovery tests.
    static ConfusionMatrix uniform_flip(int n_qubits, double p);
};

/// Estimates the per-qubit confusion matrices by running two calibration
/// circuits through the noisy emulator: all qubits prepared in |0> (empty
/// circuit) and in |1> (one X per qubit, which carries its own gate noise,
/// as it would on hardware). Requires n_shots >= 1000 per preparation.
ConfusionMatrix calibrate_spam(const qsim::NoiseModel& noise, int n_qubits, int n_shots,
                               std::uint64_t seed);

/// Readout-corrected outcome distribution. probs is dense over the 2^n
/// outcomes, non-negative and normalised; clipped_mass records how much
/// negative quasi-probability the inversion produced before clipping.
struct SpamMitigated {
    std::vector<double> probs;
    double clipped_mass = 0.0;
    double condition_number = 1.0;
};

/// Applies the per-qubit inverse confusion matrices axis by axis to the
/// empirical distribution of the table. Throws ConditioningError when any
/// per-qubit determinant falls below 1e-6 and CapacityError beyond 20
/// qubits (the corrected distribution is dense).
SpamMitigated mitigate_spam(const qsim::ShotTable& shots, const ConfusionMatrix& cal);

/// Grouped-observable energy from SPAM-corrected distributions, one
/// correction per measurement group table.
double estimate_energy_spam(const qsim::GroupedObservable& obs,
                            const std::vector<qsim::ShotTable>& tables,
                            const ConfusionMatrix& cal);

}  // namespace qdmet::mitigation
