// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qdmet/chem/basis.hpp"
#include "qdmet/chem/molecule.hpp"
#include "qdmet/dmet/fragment.hpp"

namespace qdmet::scan {

/// One orbital group of a partition. Groups given as atom indices are
/// resolved against the basis layout when the fragments are built, so one
/// config line covers every geometry of a scan.
struct FragmentGroup {
    bool by_atoms = false;
    std::vector<int> indices;
};

/// A named fragmentation strategy plus the solver that treats all of its
/// fragments. Comparing strategies or solvers means listing the partition
/// twice under different labels.
struct NamedPartition {
    std::string label;
    std::vector<FragmentGroup> groups;
    dmet::SolverKind solver = dmet::SolverKind::Fci;
};

/// Emulated device noise requested by a config. None keeps the shot path
/// exact; Uniform applies one rate everywhere; Sampled draws per-qubit and
/// per-pair rates from the calibration ranges, reproducibly from the seed.
struct NoiseConfig {
    enum class Mode { None, Uniform, Sampled };
    Mode mode = Mode::None;
    std::uint64_t seed = 0;
    double readout = 0.0;
    double depol1 = 0.0;
    double depol2 = 0.0;
};

/// Parsed scan request: sectioned key-value text (molecule, scan,
/// fragments, solvers, noise, mitigation, output). See the README for the
/// field-by-field format.
struct ScanConfig {
    chem::Molecule molecule;
    std::string molecule_source = "inline";
    int charge = 0;

    std::string kind;  // distance | angle | mu | shots
    std::vector<double> grid;
    std::vector<int> moving;
    std::array<double, 3> axis{0.0, 0.0, 1.0};
    std::array<double, 3> pivot{0.0, 0.0, 0.0};
    double r0 = 2.0;  // dissociation reference distance, Angstrom
    double r1 = 0.0;  // displaced geometry of a shots sweep
    std::vector<std::uint64_t> seeds{1, 2, 3, 4};

    std::vector<NamedPartition> partitions;

    NoiseConfig noise;
    std::vector<std::string> schemes{"raw", "spam", "pmsv"};
    int calibration_shots = 10000;

    std::string output_path;  // stem; empty writes nothing
    std::vector<std::string> formats{"csv", "json"};

    /// Deterministic round-trippable rendering; the config hash and the
    /// JSON echo are both built from it.
    std::string canonical_text() const;

    /// FNV-1a of canonical_text as 16 hex digits; stamped on every row.
    std::string hash() const;
};

/// Parses the sectioned key-value format. Unknown sections or keys, empty
/// or non-monotone grids, and malformed values raise ParseError.
ScanConfig parse_scan_config(const std::string& text);
ScanConfig parse_scan_config_file(const std::string& path);

/// Orbital-index fragments of one partition for a concrete basis layout.
/// Atom-anchored groups expand to the orbitals centred on those atoms.
std::vector<dmet::FragmentSpec> resolve_partition(const NamedPartition& partition,
                                                  const chem::BasisSet& basis);

}  // namespace qdmet::scan
