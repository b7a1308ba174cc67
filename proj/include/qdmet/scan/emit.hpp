// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qdmet/scan/driver.hpp"

namespace qdmet::scan {

/// Fixed-column CSV: kind, geom_param, fragmentation, solver, e_total_ha,
/// delta_e_ha, mu_ha, n_frag_json, seed, scheme, n_shots, flags. Floats are
/// printed with %.12g and rows in canonical order, so one config and seed
/// set always yields byte-identical text.
std::string to_csv(const ScanResult& result);

/// Row mirror of the CSV plus the canonical config echo and its hash.
/// Doubles round-trip exactly through this representation.
nlohmann::json to_json(const ScanResult& result);

/// Rebuilds a result (rows, hash, config parsed back from the echo) from
/// the JSON written by to_json.
ScanResult result_from_json(const nlohmann::json& j);

/// Writes <path_stem>.csv and/or <path_stem>.json, creating parent
/// directories. Throws Error when a file cannot be written.
std::vector<std::string> write_outputs(const ScanResult& result, const std::string& path_stem,
                                       const std::vector<std::string>& formats);

}  // namespace qdmet::scan
