// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdmet/common/rng.hpp"
#include "qdmet/qsim/circuit.hpp"
#include "qdmet/qsim/noise.hpp"
#include "qdmet/qsim/pauli.hpp"
#include "qdmet/qsim/statevector.hpp"

namespace qdmet::qsim {

/// Strings measured together in one shared basis. basis records, per qubit,
/// which Pauli the basis-change circuit diagonalises there.
struct MeasurementGroup {
    std::vector<PauliTerm> terms;
    PauliString basis;
};

/// Hamiltonian split for measurement: the identity piece needs no shots.
struct GroupedObservable {
    int n_qubits = 0;
    double identity = 0.0;
    std::vector<MeasurementGroup> groups;
};

/// Greedy qubit-wise-commutation grouping, largest coefficients first.
/// Every non-identity term lands in exactly one group.
GroupedObservable group_qubitwise(const PauliSum& obs);

/// Union basis of a set of strings. Throws ContractError when two strings
/// demand different Paulis on one qubit.
PauliString qubitwise_union(const std::vector<PauliString>& group, int n_qubits);

/// Rotations taking each measured Pauli to Z: H for X, S-dagger then H for Y.
Circuit basis_change_circuit(const PauliString& basis, int n_qubits);

/// Counted outcomes of repeated measurement in one basis. Bit q of a key is
/// qubit q's readout.
struct ShotTable {
    int n_qubits = 0;
    int n_shots = 0;
    PauliString basis;
    std::map<std::uint64_t, int> counts;

    int total_counts() const;
};

/// Noise-free sampling: the basis change is applied to a copy of the state
/// and outcomes are drawn from the exact distribution.
ShotTable sample_shots(const Statevector& state, const std::vector<PauliString>& group,
                       int n_shots, common::Rng& rng);

/// Hardware-style sampling: every shot replays the preparation circuit from
/// |init_bits> and the basis change with trajectory gate noise, then applies
/// per-bit readout flips.
ShotTable sample_shots_noisy(std::uint64_t init_bits, const Circuit& prep,
                             const std::vector<PauliString>& group, int n_shots,
                             const NoiseModel& noise, common::Rng& rng);

/// Sum of coeff * <string> estimated from counts (or a probability vector
/// over the 2^n outcomes, for mitigated distributions).
double estimate_group(const MeasurementGroup& g, const ShotTable& t);
double estimate_group(const MeasurementGroup& g, const std::vector<double>& probs);

/// identity + sum of per-group estimates; tables align with groups by index.
double estimate_energy(const GroupedObservable& obs, const std::vector<ShotTable>& tables);

/// One table per measurement group, drawn sequentially from one stream so
/// the whole call is reproducible from the rng seed.
std::vector<ShotTable> sample_grouped(const GroupedObservable& obs, const Statevector& state,
                                      int n_shots, common::Rng& rng);
std::vector<ShotTable> sample_grouped_noisy(const GroupedObservable& obs,
                                            std::uint64_t init_bits, const Circuit& prep,
                                            int n_shots, const NoiseModel& noise,
                                            common::Rng& rng);

nlohmann::json shot_table_to_json(const ShotTable& t);
ShotTable shot_table_from_json(const nlohmann::json& j);

/// "q_{n-1} ... q_0" rendering of an outcome, matching ket convention.
std::string bits_to_string(std::uint64_t bits, int n_qubits);

}  // namespace qdmet::qsim
