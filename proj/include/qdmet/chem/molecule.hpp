// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <array>
#include <string>
#include <vector>

namespace qdmet::chem {

/// Bohr per Ångström. Positions are stored in Ångström and converted at
/// integral time; all energies and matrix elements are atomic units.
inline constexpr double kBohrPerAngstrom = 1.8897259886;

struct Atom {
    std::string symbol;
    int z = 0;
    std::array<double, 3> pos_angstrom{};
};

class Molecule {
  public:
    Molecule() = default;
    Molecule(std::vector<Atom> atoms, int charge);

    const std::vector<Atom>& atoms() const { return atoms_; }
    int charge() const { return charge_; }
    int n_electrons() const { return n_electrons_; }
    std::size_t n_atoms() const { return atoms_.size(); }

    /// Returns a copy with every atom position replaced (same elements/charge).
    Molecule with_positions(const std::vector<std::array<double, 3>>& pos) const;

  private:
    std::vector<Atom> atoms_;
    int charge_ = 0;
    int n_electrons_ = 0;
};

/// Atomic number for an element symbol (H..Ar), or 0 if unknown.
int element_z(const std::string& symbol);

/// Parses standard XYZ text: count line, comment line, then one
/// "symbol x y z" line per atom, coordinates in Ångström.
Molecule parse_xyz(const std::string& text, int charge = 0);

/// Reads a file and forwards to parse_xyz.
Molecule parse_xyz_file(const std::string& path, int charge = 0);

}  // namespace qdmet::chem
