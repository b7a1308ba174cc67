// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/dmet/fragment.hpp"

#include <algorithm>

#include "qdmet/common/error.hpp"

namespace qdmet::dmet {

SolverKind parse_solver(const std::string& name) {
    if (name == "mean-field" || name == "meanfield" || name == "rhf") return SolverKind::MeanField;
    if (name == "mp2") return SolverKind::Mp2;
    if (name == "fci") return SolverKind::Fci;
    if (name == "uccsd-vqe" || name == "vqe") return SolverKind::Vqe;
    throw ParseError("unknown solver \"" + name +
                     "\" (expected mean-field, mp2, fci, or uccsd-vqe)");
}

std::string to_string(SolverKind kind) {
    switch (kind) {
        case SolverKind::MeanField: return "mean-field";
        case SolverKind::Mp2: return "mp2";
        case SolverKind::Fci: return "fci";
        case SolverKind::Vqe: return "uccsd-vqe";
    }
    return "?";
}

void validate_partition(const std::vector<FragmentSpec>& fragments, int n_orbitals) {
    if (fragments.empty()) throw FragmentationError("no fragments defined");
    std::vector<int> owner(static_cast<std::size_t>(n_orbitals), -1);
    for (std::size_t f = 0; f < fragments.size(); ++f) {
        if (fragments[f].orbitals.empty()) {
            throw FragmentationError("fragment \"" + fragments[f].label + "\" is empty");
        }
        for (int i : fragments[f].orbitals) {
            if (i < 0 || i >= n_orbitals) {
                throw FragmentationError("fragment \"" + fragments[f].label +
                                         "\" references orbital " + std::to_string(i) +
                                         " outside 0.." + std::to_string(n_orbitals - 1));
            }
            if (owner[static_cast<std::size_t>(i)] >= 0) {
                throw FragmentationError(
                    "orbital " + std::to_string(i) + " claimed by both \"" +
                    fragments[static_cast<std::size_t>(owner[static_cast<std::size_t>(i)])].label +
                    "\" and \"" + fragments[f].label + "\"");
            }
            owner[static_cast<std::size_t>(i)] = static_cast<int>(f);
        }
    }
    for (int i = 0; i < n_orbitals; ++i) {
        if (owner[static_cast<std::size_t>(i)] < 0) {
            throw FragmentationError("orbital " + std::to_string(i) +
                                     " is not covered by any fragment");
        }
    }
}

std::vector<int> orbitals_for_atoms(const chem::BasisSet& basis, const std::vector<int>& atoms) {
    std::vector<int> out;
    for (int a : atoms) {
        if (a < 0 || a >= basis.n_atoms()) {
            throw FragmentationError("atom index " + std::to_string(a) + " out of range");
        }
        const auto idx = basis.functions_on_atom(a);
        out.insert(out.end(), idx.begin(), idx.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace qdmet::dmet
