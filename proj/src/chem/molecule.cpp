// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/chem/molecule.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qdmet/common/error.hpp"

namespace qdmet::chem {

namespace {

constexpr const char* kSymbols[] = {"H",  "He", "Li", "Be", "B",  "C",
                                    "N",  "O",  "F",  "Ne", "Na", "Mg",
                                    "Al", "Si", "P",  "S",  "Cl", "Ar"};

}  // namespace

int element_z(const std::string& symbol) {
    for (std::size_t i = 0; i < std::size(kSymbols); ++i) {
        if (symbol == kSymbols[i]) return static_cast<int>(i) + 1;
    }
    return 0;
}

Molecule::Molecule(std::vector<Atom> atoms, int charge)
    : atoms_(std::move(atoms)), charge_(charge) {
    int z_total = 0;
    for (const auto& a : atoms_) z_total += a.z;
    n_electrons_ = z_total - charge_;
    if (n_electrons_ < 1) throw ContractError("molecule has no electrons");
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        for (std::size_t j = i + 1; j < atoms_.size(); ++j) {
            double r2 = 0.0;
            for (int d = 0; d < 3; ++d) {
                const double dd = atoms_[i].pos_angstrom[d] - atoms_[j].pos_angstrom[d];
                r2 += dd * dd;
            }
            if (r2 < 1e-12) {
                throw ContractError("atoms " + std::to_string(i) + " and " +
                                    std::to_string(j) + " coincide");
            }
        }
    }
}

Molecule Molecule::with_positions(const std::vector<std::array<double, 3>>& pos) const {
    if (pos.size() != atoms_.size()) throw ContractError("position count mismatch");
    std::vector<Atom> moved = atoms_;
    for (std::size_t i = 0; i < moved.size(); ++i) moved[i].pos_angstrom = pos[i];
    return Molecule(std::move(moved), charge_);
}

Molecule parse_xyz(const std::string& text, int charge) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    auto next_line = [&](bool required) -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            return true;
        }
        if (required) throw ParseError("xyz: unexpected end of input at line " +
                                       std::to_string(lineno + 1));
        return false;
    };

    next_line(true);
    int count = 0;
    {
        std::istringstream ls(line);
        if (!(ls >> count) || count <= 0) {
            throw ParseError("xyz: line 1: expected positive atom count, got \"" + line + "\"");
        }
    }
    next_line(true);  // comment line, ignored

    std::vector<Atom> atoms;
    atoms.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        next_line(true);
        std::istringstream ls(line);
        Atom a;
        if (!(ls >> a.symbol >> a.pos_angstrom[0] >> a.pos_angstrom[1] >> a.pos_angstrom[2])) {
            throw ParseError("xyz: line " + std::to_string(lineno) + ": malformed atom line \"" +
                             line + "\"");
        }
        a.z = element_z(a.symbol);
        if (a.z == 0) {
            throw ParseError("xyz: line " + std::to_string(lineno) + ": unknown element \"" +
                             a.symbol + "\"");
        }
        atoms.push_back(a);
    }
    // Trailing non-blank content means the count line lied.
    while (next_line(false)) {
        std::istringstream ls(line);
        std::string tok;
        if (ls >> tok) {
            throw ParseError("xyz: line " + std::to_string(lineno) +
                             ": more atoms than declared count " + std::to_string(count));
        }
    }
    return Molecule(std::move(atoms), charge);
}

Molecule parse_xyz_file(const std::string& path, int charge) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open xyz file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_xyz(ss.str(), charge);
}

}  // namespace qdmet::chem
