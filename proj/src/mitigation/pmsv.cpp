// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/mitigation/pmsv.hpp"

#include <bit>

#include "qdmet/common/error.hpp"

namespace qdmet::mitigation {

using qsim::GroupedObservable;
using qsim::ShotTable;

PmsvFiltered pmsv_filter(const ShotTable& shots, int n_elec) {
    if (n_elec < 0 || n_elec > shots.n_qubits)
        throw ContractError("pmsv: electron count outside the register");

    PmsvFiltered out;
    out.shots_total = shots.total_counts();
    if (shots.basis.x != 0) {
        // X or Y readout on some qubit: the measured operators do not
        // commute with total number, so the weight test is meaningless.
        out.table = shots;
        out.applied = false;
        out.shots_kept = out.shots_total;
        return out;
    }

    out.applied = true;
    out.table.n_qubits = shots.n_qubits;
    out.table.basis = shots.basis;
    for (const auto& [bits, c] : shots.counts) {
        if (std::popcount(bits) != n_elec) continue;
        out.table.counts[bits] = c;
        out.shots_kept += c;
    }
    out.table.n_shots = out.shots_kept;
    if (out.shots_total > 0 && out.shots_kept == 0)
        throw MitigationError("pmsv: no shot survived the particle-number filter");
    return out;
}

PmsvEstimate estimate_energy_pmsv(const GroupedObservable& obs,
                                  const std::vector<ShotTable>& tables, int n_elec) {
    if (tables.size() != obs.groups.size())
        throw ContractError("pmsv: one table per measurement group required");

    PmsvEstimate out;
    out.energy = obs.identity;
    for (std::size_t g = 0; g < obs.groups.size(); ++g) {
        const PmsvFiltered f = pmsv_filter(tables[g], n_elec);
        out.energy += estimate_group(obs.groups[g], f.table);
        out.shots_kept += f.shots_kept;
        out.shots_total += f.shots_total;
        if (!f.applied) ++out.groups_passed_through;
    }
    return out;
}

}  // namespace qdmet::mitigation
