// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/chem/basis.hpp"

#include <cmath>

#include "qdmet/common/error.hpp"

namespace qdmet::chem {

namespace {

constexpr double kPi = 3.14159265358979323846;

// STO-3G: three Gaussians fit to a zeta = 1 Slater function, then scaled by
// zeta^2 per element. Contraction coefficients are zeta independent.
constexpr double k1sExp[3] = {2.227660584, 0.4057711562, 0.1098175104};
constexpr double k1sCoef[3] = {0.1543289673, 0.5353281423, 0.4446345422};

constexpr double k2spExp[3] = {0.9942026563, 0.2310314063, 0.0751385938};
constexpr double k2sCoef[3] = {-0.09996722919, 0.3995128261, 0.7001154689};
constexpr double k2pCoef[3] = {0.1559162750, 0.6076837186, 0.3919573931};

struct ElementZetas {
    double zeta1s;
    double zeta2sp;  // 0 when the element has no n = 2 shell
};

// Index = Z - 1, H through Ne.
constexpr ElementZetas kZetas[10] = {
    {1.24, 0.0},   // H
    {1.69, 0.0},   // He
    {2.69, 0.80},  // Li
    {3.68, 1.15},  // Be
    {4.68, 1.50},  // B
    {5.67, 1.72},  // C
    {6.67, 1.95},  // N
    {7.66, 2.25},  // O
    {8.65, 2.55},  // F
    {9.64, 2.88},  // Ne
};

double dfact(int n) {  // (2n - 1)!! with dfact(-1) = 1
    double r = 1.0;
    for (int k = 2 * n - 1; k > 1; k -= 2) r *= k;
    return r;
}

// Self-overlap of a contracted function whose coefficients already include
// the primitive norms; used to rescale the contraction to <g|g> = 1.
double contracted_self_overlap(const ContractedGaussian& g) {
    const int L = g.ang[0] + g.ang[1] + g.ang[2];
    double s = 0.0;
    for (std::size_t i = 0; i < g.exps.size(); ++i) {
        for (std::size_t j = 0; j < g.exps.size(); ++j) {
            const double p = g.exps[i] + g.exps[j];
            const double pref = std::pow(kPi / p, 1.5) / std::pow(2.0 * p, L);
            const double ang = dfact(g.ang[0]) * dfact(g.ang[1]) * dfact(g.ang[2]);
            s += g.coefs[i] * g.coefs[j] * pref * ang;
        }
    }
    return s;
}

void add_shell(std::vector<ContractedGaussian>& out, const std::array<double, 3>& center_bohr,
               int atom_index, double zeta, const double (&base_exp)[3],
               const double (&coef)[3], const std::array<int, 3>& ang) {
    ContractedGaussian g;
    g.center_bohr = center_bohr;
    g.ang = ang;
    g.atom_index = atom_index;
    const double z2 = zeta * zeta;
    for (int k = 0; k < 3; ++k) {
        const double a = base_exp[k] * z2;
        g.exps.push_back(a);
        g.coefs.push_back(coef[k] * primitive_norm(a, ang[0], ang[1], ang[2]));
    }
    const double s = contracted_self_overlap(g);
    const double rescale = 1.0 / std::sqrt(s);
    for (auto& c : g.coefs) c *= rescale;
    out.push_back(std::move(g));
}

}  // namespace

double primitive_norm(double a, int l, int m, int n) {
    const double num = std::pow(2.0 * a / kPi, 1.5) * std::pow(4.0 * a, l + m + n);
    const double den = dfact(l) * dfact(m) * dfact(n);
    return std::sqrt(num / den);
}

std::vector<int> BasisSet::functions_on_atom(int atom) const {
    std::vector<int> idx;
    for (int i = 0; i < size(); ++i) {
        if (functions_[static_cast<std::size_t>(i)].atom_index == atom) idx.push_back(i);
    }
    return idx;
}

BasisSet build_basis(const Molecule& mol) {
    std::vector<ContractedGaussian> funcs;
    for (std::size_t ai = 0; ai < mol.atoms().size(); ++ai) {
        const Atom& atom = mol.atoms()[ai];
        if (atom.z < 1 || atom.z > 10) {
            throw ContractError("basis: element " + atom.symbol +
                                " (Z=" + std::to_string(atom.z) + ") not in the STO-3G table");
        }
        std::array<double, 3> c{};
        for (int d = 0; d < 3; ++d) c[d] = atom.pos_angstrom[d] * kBohrPerAngstrom;
        const ElementZetas& zs = kZetas[atom.z - 1];
        const int a = static_cast<int>(ai);

        add_shell(funcs, c, a, zs.zeta1s, k1sExp, k1sCoef, {0, 0, 0});
        if (zs.zeta2sp > 0.0) {
            add_shell(funcs, c, a, zs.zeta2sp, k2spExp, k2sCoef, {0, 0, 0});
            add_shell(funcs, c, a, zs.zeta2sp, k2spExp, k2pCoef, {1, 0, 0});
            add_shell(funcs, c, a, zs.zeta2sp, k2spExp, k2pCoef, {0, 1, 0});
            add_shell(funcs, c, a, zs.zeta2sp, k2spExp, k2pCoef, {0, 0, 1});
        }
    }
    return BasisSet(std::move(funcs), static_cast<int>(mol.atoms().size()));
}

}  // namespace qdmet::chem
