// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <cstdint>
#include <string>

namespace qdmet::mitigation {

/// One mitigated energy estimate, as appended to scan outputs. The same raw
/// shots are priced under every scheme so their disagreement is measurable
/// per (seed, shot-count) cell.
struct MitigationReport {
    std::string scheme;  // "raw", "spam", or "pmsv"
    std::uint64_t seed = 0;
    int n_shots = 0;
    double e_raw = 0.0;
    double e_mitigated = 0.0;
    double shots_kept_fraction = 1.0;  // pmsv: kept / total, never above 1
    double condition_number = 1.0;     // spam: tensor-product calibration cond
    int groups_passed_through = 0;     // pmsv: bases not commuting with N
    bool failed = false;               // scheme raised; row kept, sweep continues
    std::string note;
};

}  // namespace qdmet::mitigation
