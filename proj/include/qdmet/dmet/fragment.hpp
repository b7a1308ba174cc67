// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qdmet/chem/basis.hpp"

namespace qdmet::dmet {

enum class SolverKind { MeanField, Mp2, Fci, Vqe };

SolverKind parse_solver(const std::string& name);
std::string to_string(SolverKind kind);

/// Orbital-freezing request: how many occupied / virtual embedding orbitals
/// stay active around the Fermi level.
struct ActiveSpaceSpec {
    int n_occ_active = 0;
    int n_virt_active = 0;
};

/// One fragment: a set of localized-orbital indices plus the solver that
/// will treat its embedding problem.
struct FragmentSpec {
    std::string label;
    std::vector<int> orbitals;  // localized-basis indices, kept sorted
    SolverKind solver = SolverKind::Fci;
    std::optional<ActiveSpaceSpec> active_space;
};

/// Checks that the fragments partition {0..n_orbitals-1} exactly.
/// Throws FragmentationError on overlap, gap, or out-of-range indices.
void validate_partition(const std::vector<FragmentSpec>& fragments, int n_orbitals);

/// Localized-orbital indices belonging to a set of atoms. In the Löwdin
/// basis every orthogonal orbital inherits its parent AO's atom.
std::vector<int> orbitals_for_atoms(const chem::BasisSet& basis, const std::vector<int>& atoms);

}  // namespace qdmet::dmet
