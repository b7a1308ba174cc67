// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/mitigation/spam.hpp"

#include <cmath>
#include <cstdint>

#include "qdmet/common/error.hpp"
#include "qdmet/qsim/circuit.hpp"

namespace qdmet::mitigation {

using qsim::GroupedObservable;
using qsim::NoiseModel;
using qsim::ShotTable;

double ConfusionMatrix::condition_number() const {
    double cond = 1.0;
    for (const auto& m : qubit) {
        Eigen::JacobiSVD<Eigen::Matrix2d> svd(m);
        const double smin = svd.singularValues()(1);
        if (smin <= 0.0) throw ConditioningError("spam: singular confusion matrix");
        cond *= svd.singularValues()(0) / smin;
    }
    return cond;
}

ConfusionMatrix ConfusionMatrix::identity(int n_qubits) {
    ConfusionMatrix cal;
    cal.qubit.assign(static_cast<std::size_t>(n_qubits), Eigen::Matrix2d::Identity());
    return cal;
}

ConfusionMatrix ConfusionMatrix::uniform_flip(int n_qubits, double p) {
    if (p < 0.0 || p > 1.0) throw ContractError("spam: flip probability outside [0, 1]");
    Eigen::Matrix2d m;
    m << 1.0 - p, p, p, 1.0 - p;
    ConfusionMatrix cal;
    cal.qubit.assign(static_cast<std::size_t>(n_qubits), m);
    return cal;
}

ConfusionMatrix calibrate_spam(const NoiseModel& noise, int n_qubits, int n_shots,
                               std::uint64_t seed) {
    if (n_qubits <= 0) throw ContractError("spam: need at least one qubit");
    if (n_shots < 1000) throw ContractError("spam: calibration needs at least 1000 shots");

    common::Rng rng(common::derive_seed(seed, "spam-calibration"));
    const std::vector<qsim::PauliString> z_basis;  // measure as-is

    const qsim::Circuit keep_zero(n_qubits);
    qsim::Circuit flip_all(n_qubits);
    for (int q = 0; q < n_qubits; ++q) flip_all.x(q);

    const ShotTable t0 = sample_shots_noisy(0, keep_zero, z_basis, n_shots, noise, rng);
    const ShotTable t1 = sample_shots_noisy(0, flip_all, z_basis, n_shots, noise, rng);

    ConfusionMatrix cal;
    cal.n_calibration_shots = n_shots;
    cal.qubit.resize(static_cast<std::size_t>(n_qubits));
    for (int q = 0; q < n_qubits; ++q) {
        std::int64_t ones_from_zero = 0;
        std::int64_t zeros_from_one = 0;
        for (const auto& [bits, c] : t0.counts)
            if ((bits >> q) & 1) ones_from_zero += c;
        for (const auto& [bits, c] : t1.counts)
            if (!((bits >> q) & 1)) zeros_from_one += c;
        const double p10 = static_cast<double>(ones_from_zero) / n_shots;
        const double p01 = static_cast<double>(zeros_from_one) / n_shots;
        cal.qubit[q] << 1.0 - p10, p01, p10, 1.0 - p01;
    }
    return cal;
}

SpamMitigated mitigate_spam(const ShotTable& shots, const ConfusionMatrix& cal) {
    if (cal.n_qubits() != shots.n_qubits)
        throw ContractError("spam: calibration and table qubit counts differ");
    if (shots.n_qubits > 20) throw CapacityError("spam: dense correction capped at 20 qubits");
    const int total = shots.total_counts();
    if (total == 0) throw MitigationError("spam: empty shot table");

    SpamMitigated out;
    out.condition_number = cal.condition_number();

    const std::uint64_t dim = std::uint64_t{1} << shots.n_qubits;
    out.probs.assign(dim, 0.0);
    for (const auto& [bits, c] : shots.counts)
        out.probs[bits] = static_cast<double>(c) / total;

    // Axis-wise application of each per-qubit inverse; the Kronecker
    // inverse factorises, so 2x2 sweeps suffice.
    for (int q = 0; q < shots.n_qubits; ++q) {
        const Eigen::Matrix2d& m = cal.qubit[q];
        const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        if (std::abs(det) < 1e-6)
            throw ConditioningError("spam: confusion matrix is numerically singular");
        const std::uint64_t bit = std::uint64_t{1} << q;
        for (std::uint64_t k = 0; k < dim; ++k) {
            if (k & bit) continue;
            const double a0 = out.probs[k];
            const double a1 = out.probs[k | bit];
            out.probs[k] = (m(1, 1) * a0 - m(0, 1) * a1) / det;
            out.probs[k | bit] = (m(0, 0) * a1 - m(1, 0) * a0) / det;
        }
    }

    double kept = 0.0;
    for (double& p : out.probs) {
        if (p < 0.0) {
            out.clipped_mass -= p;
            p = 0.0;
        }
        kept += p;
    }
    if (kept <= 0.0) throw MitigationError("spam: correction clipped away the whole distribution");
    for (double& p : out.probs) p /= kept;
    return out;
}

double estimate_energy_spam(const GroupedObservable& obs, const std::vector<ShotTable>& tables,
                            const ConfusionMatrix& cal) {
    if (tables.size() != obs.groups.size())
        throw ContractError("spam: one table per measurement group required");
    double e = obs.identity;
    for (std::size_t g = 0; g < obs.groups.size(); ++g)
        e += estimate_group(obs.groups[g], mitigate_spam(tables[g], cal).probs);
    return e;
}

}  // namespace qdmet::mitigation
