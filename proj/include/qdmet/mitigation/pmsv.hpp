// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <vector>

#include "qdmet/qsim/measurement.hpp"

namespace qdmet::mitigation {

/// Outcome of particle-number symmetry verification on one shot table.
/// Filtering applies only when the measurement basis commutes with the
/// total-number operator, i.e. the group is measured purely in Z; other
/// groups pass through untouched with applied = false.
struct PmsvFiltered {
    qsim::ShotTable table;
    bool applied = false;
    int shots_kept = 0;
    int shots_total = 0;
};

/// Keeps only outcomes whose Hamming weight equals n_elec. Under the
/// interleaved Jordan-Wigner encoding the particle number of a Z-basis
/// readout is its popcount, so any other weight flags a corrupted shot.
/// Throws MitigationError when a filterable table retains nothing.
PmsvFiltered pmsv_filter(const qsim::ShotTable& shots, int n_elec);

/// Energy estimate plus the filter accounting the mitigation reports need.
struct PmsvEstimate {
    double energy = 0.0;
    int shots_kept = 0;
    int shots_total = 0;
    int groups_passed_through = 0;  // bases that do not commute with N
};

/// identity + per-group estimates over symmetry-filtered tables; counts are
/// renormalised inside the group estimator, so discarding shots never
/// rescales the energy.
PmsvEstimate estimate_energy_pmsv(const qsim::GroupedObservable& obs,
                                  const std::vector<qsim::ShotTable>& tables, int n_elec);

}  // namespace qdmet::mitigation
