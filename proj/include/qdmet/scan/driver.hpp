// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdmet/scan/config.hpp"

namespace qdmet::scan {

/// One result row. The fixed CSV columns mirror these fields; wall_seconds
/// is informational only and never serialised, so identical configs always
/// produce byte-identical output files.
struct ScanRow {
    std::string kind;            // distance | angle | mu | shots | dmet | charge-transfer
    double geom_param = 0.0;     // Angstrom, degrees, Hartree (mu), or displaced distance
    std::string fragmentation;   // partition label
    std::string solver;
    double e_total_ha = 0.0;
    double delta_e_ha = 0.0;
    double mu_ha = 0.0;
    std::vector<double> n_frag;  // per-fragment <N_x> (delta N on charge-transfer rows)
    std::uint64_t seed = 0;
    std::string scheme;          // "", ideal, raw, spam, pmsv
    int n_shots = 0;
    std::vector<std::string> flags;
    double wall_seconds = 0.0;
};

struct ScanResult {
    ScanConfig config;
    std::string config_hash;
    std::vector<ScanRow> rows;
    bool any_failed = false;  // at least one row carries a failed flag
};

/// One-shot DMET on the base geometry, one row per partition (kind "dmet").
ScanResult run_single_point(const ScanConfig& cfg);

/// Distance or angle scan over every partition. Distance scans price
/// delta E against the r0 row (exactly zero there), flag the final row
/// "plateau" when the last grid step's gradient drops below 0.5 mHa/A,
/// and append one charge-transfer row per partition between the closest
/// and farthest geometries. Failed cells become flagged rows; the scan
/// continues.
ScanResult run_dissociation(const ScanConfig& cfg);

/// Fragment particle numbers against the chemical potential on the base
/// geometry, plus one "optimized" row per partition at the mu that balances
/// the total electron count. Consecutive-row sign changes of N_a - N_b are
/// flagged as crossings.
ScanResult run_mu_scan(const ScanConfig& cfg);

/// Noisy shot sweep between the r0 and r1 geometries: fixed noise-free
/// UCCSD-VQE states, re-priced from sampled shots for every seed x shot
/// count, with every requested mitigation scheme applied to the same raw
/// tables. Emits one "ideal" statevector row per partition and one row per
/// (seed, count, scheme) carrying the mitigated delta E.
ScanResult run_shots_sweep(const ScanConfig& cfg);

/// Canonical emission order; emit sorts through this before writing.
void sort_rows(std::vector<ScanRow>& rows);

}  // namespace qdmet::scan
