// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "qdmet/chem/molecule.hpp"

namespace qdmet::chem {

/// One contracted cartesian Gaussian: fixed angular part (l,m,n), shared
/// exponents across the contraction, coefficients premultiplied with the
/// primitive norms and rescaled so <g|g> = 1.
struct ContractedGaussian {
    std::array<double, 3> center_bohr{};
    std::array<int, 3> ang{};  // cartesian powers (l, m, n)
    std::vector<double> exps;
    std::vector<double> coefs;  // includes primitive normalisation
    int atom_index = 0;
};

/// Basis set for a molecule: a flat list of contracted functions plus the
/// atom each one sits on. Only s and p shells appear (STO-3G through Ne).
class BasisSet {
public:
    BasisSet(std::vector<ContractedGaussian> functions, int n_atoms)
        : functions_(std::move(functions)), n_atoms_(n_atoms) {}

    int size() const { return static_cast<int>(functions_.size()); }
    int n_atoms() const { return n_atoms_; }
    const ContractedGaussian& operator[](int i) const {
        return functions_[static_cast<std::size_t>(i)];
    }
    const std::vector<ContractedGaussian>& functions() const { return functions_; }

    /// Basis function indices centred on the given atom.
    std::vector<int> functions_on_atom(int atom) const;

private:
    std::vector<ContractedGaussian> functions_;
    int n_atoms_;
};

/// Builds an STO-3G basis for the molecule. Supported elements: H through Ne.
/// Throws ContractError for anything heavier.
BasisSet build_basis(const Molecule& mol);

/// Normalisation constant of a primitive cartesian Gaussian exp(-a r^2) x^l y^m z^n.
double primitive_norm(double a, int l, int m, int n);

}  // namespace qdmet::chem
