// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/chem/integrals.hpp"

#include <cmath>

#include "qdmet/chem/boys.hpp"
#include "qdmet/common/error.hpp"

// McMurchie-Davidson scheme: cartesian Gaussian products are expanded in
// Hermite Gaussians (E coefficients), Coulomb integrals reduce to the Hermite
// integrals R_tuv built from Boys functions. Angular momenta here stay small
// (s and p shells, kinetic raises by two), so the plain recursions are fine.

namespace qdmet::chem {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Hermite expansion coefficient E_t^{ij} along one dimension.
// a, b: exponents; Q = A - B along this dimension.
double hermite_e(int i, int j, int t, double Q, double a, double b) {
    const double p = a + b;
    const double q = a * b / p;
    if (t < 0 || t > i + j) return 0.0;
    if (i == 0 && j == 0 && t == 0) return std::exp(-q * Q * Q);
    if (j == 0) {
        return (1.0 / (2.0 * p)) * hermite_e(i - 1, j, t - 1, Q, a, b) -
               (q * Q / a) * hermite_e(i - 1, j, t, Q, a, b) +
               (t + 1.0) * hermite_e(i - 1, j, t + 1, Q, a, b);
    }
    return (1.0 / (2.0 * p)) * hermite_e(i, j - 1, t - 1, Q, a, b) +
           (q * Q / b) * hermite_e(i, j - 1, t, Q, a, b) +
           (t + 1.0) * hermite_e(i, j - 1, t + 1, Q, a, b);
}

// Hermite Coulomb integral R_{tuv}^n for reduced exponent p and P - C vector.
double hermite_r(int t, int u, int v, int n, double p, double pcx, double pcy, double pcz,
                 double r2) {
    if (t == 0 && u == 0 && v == 0) {
        return std::pow(-2.0 * p, n) * boys(n, p * r2);
    }
    double val = 0.0;
    if (t > 0) {
        if (t > 1) val += (t - 1) * hermite_r(t - 2, u, v, n + 1, p, pcx, pcy, pcz, r2);
        val += pcx * hermite_r(t - 1, u, v, n + 1, p, pcx, pcy, pcz, r2);
    } else if (u > 0) {
        if (u > 1) val += (u - 1) * hermite_r(t, u - 2, v, n + 1, p, pcx, pcy, pcz, r2);
        val += pcy * hermite_r(t, u - 1, v, n + 1, p, pcx, pcy, pcz, r2);
    } else {
        if (v > 1) val += (v - 1) * hermite_r(t, u, v - 2, n + 1, p, pcx, pcy, pcz, r2);
        val += pcz * hermite_r(t, u, v - 1, n + 1, p, pcx, pcy, pcz, r2);
    }
    return val;
}

// Primitive overlap for exponents a, b with cartesian powers la, lb.
double prim_overlap(double a, const std::array<int, 3>& la, const std::array<double, 3>& A,
                    double b, const std::array<int, 3>& lb, const std::array<double, 3>& B) {
    const double p = a + b;
    double s = std::pow(kPi / p, 1.5);
    for (int d = 0; d < 3; ++d) {
        s *= hermite_e(la[d], lb[d], 0, A[d] - B[d], a, b);
    }
    return s;
}

// Primitive kinetic energy via overlaps with ket angular momentum shifted.
double prim_kinetic(double a, const std::array<int, 3>& la, const std::array<double, 3>& A,
                    double b, const std::array<int, 3>& lb, const std::array<double, 3>& B) {
    const int l = lb[0], m = lb[1], n = lb[2];
    double term0 = b * (2.0 * (l + m + n) + 3.0) * prim_overlap(a, la, A, b, lb, B);
    double term1 = 0.0;
    double term2 = 0.0;
    for (int d = 0; d < 3; ++d) {
        std::array<int, 3> up = lb;
        up[d] += 2;
        term1 += prim_overlap(a, la, A, b, up, B);
        if (lb[d] >= 2) {
            std::array<int, 3> dn = lb;
            dn[d] -= 2;
            term2 += lb[d] * (lb[d] - 1.0) * prim_overlap(a, la, A, b, dn, B);
        }
    }
    return term0 - 2.0 * b * b * term1 - 0.5 * term2;
}

// Primitive nuclear attraction to a unit charge at C.
double prim_nuclear(double a, const std::array<int, 3>& la, const std::array<double, 3>& A,
                    double b, const std::array<int, 3>& lb, const std::array<double, 3>& B,
                    const std::array<double, 3>& C) {
    const double p = a + b;
    std::array<double, 3> P{};
    for (int d = 0; d < 3; ++d) P[d] = (a * A[d] + b * B[d]) / p;
    const double pcx = P[0] - C[0], pcy = P[1] - C[1], pcz = P[2] - C[2];
    const double r2 = pcx * pcx + pcy * pcy + pcz * pcz;
    double val = 0.0;
    for (int t = 0; t <= la[0] + lb[0]; ++t) {
        for (int u = 0; u <= la[1] + lb[1]; ++u) {
            for (int v = 0; v <= la[2] + lb[2]; ++v) {
                val += hermite_e(la[0], lb[0], t, A[0] - B[0], a, b) *
                       hermite_e(la[1], lb[1], u, A[1] - B[1], a, b) *
                       hermite_e(la[2], lb[2], v, A[2] - B[2], a, b) *
                       hermite_r(t, u, v, 0, p, pcx, pcy, pcz, r2);
            }
        }
    }
    return val * 2.0 * kPi / p;
}

// Primitive (ab|cd).
double prim_eri(double a, const std::array<int, 3>& la, const std::array<double, 3>& A,
                double b, const std::array<int, 3>& lb, const std::array<double, 3>& B,
                double c, const std::array<int, 3>& lc, const std::array<double, 3>& C,
                double d, const std::array<int, 3>& ld, const std::array<double, 3>& D) {
    const double p = a + b;
    const double q = c + d;
    const double alpha = p * q / (p + q);
    std::array<double, 3> P{}, Q{};
    for (int w = 0; w < 3; ++w) {
        P[w] = (a * A[w] + b * B[w]) / p;
        Q[w] = (c * C[w] + d * D[w]) / q;
    }
    const double pqx = P[0] - Q[0], pqy = P[1] - Q[1], pqz = P[2] - Q[2];
    const double r2 = pqx * pqx + pqy * pqy + pqz * pqz;

    double val = 0.0;
    for (int t = 0; t <= la[0] + lb[0]; ++t)
        for (int u = 0; u <= la[1] + lb[1]; ++u)
            for (int v = 0; v <= la[2] + lb[2]; ++v) {
                const double e_bra = hermite_e(la[0], lb[0], t, A[0] - B[0], a, b) *
                                     hermite_e(la[1], lb[1], u, A[1] - B[1], a, b) *
                                     hermite_e(la[2], lb[2], v, A[2] - B[2], a, b);
                if (e_bra == 0.0) continue;
                for (int tau = 0; tau <= lc[0] + ld[0]; ++tau)
                    for (int nu = 0; nu <= lc[1] + ld[1]; ++nu)
                        for (int phi = 0; phi <= lc[2] + ld[2]; ++phi) {
                            const double e_ket =
                                hermite_e(lc[0], ld[0], tau, C[0] - D[0], c, d) *
                                hermite_e(lc[1], ld[1], nu, C[1] - D[1], c, d) *
                                hermite_e(lc[2], ld[2], phi, C[2] - D[2], c, d);
                            if (e_ket == 0.0) continue;
                            const double sign = ((tau + nu + phi) % 2 == 0) ? 1.0 : -1.0;
                            val += e_bra * e_ket * sign *
                                   hermite_r(t + tau, u + nu, v + phi, 0, alpha, pqx, pqy, pqz,
                                             r2);
                        }
            }
    return val * 2.0 * std::pow(kPi, 2.5) / (p * q * std::sqrt(p + q));
}

template <typename Prim>
double contract2(const ContractedGaussian& a, const ContractedGaussian& b, Prim prim) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.exps.size(); ++i) {
        for (std::size_t j = 0; j < b.exps.size(); ++j) {
            s += a.coefs[i] * b.coefs[j] * prim(a.exps[i], b.exps[j]);
        }
    }
    return s;
}

}  // namespace

double overlap_element(const ContractedGaussian& a, const ContractedGaussian& b) {
    return contract2(a, b, [&](double ea, double eb) {
        return prim_overlap(ea, a.ang, a.center_bohr, eb, b.ang, b.center_bohr);
    });
}

double kinetic_element(const ContractedGaussian& a, const ContractedGaussian& b) {
    return contract2(a, b, [&](double ea, double eb) {
        return prim_kinetic(ea, a.ang, a.center_bohr, eb, b.ang, b.center_bohr);
    });
}

double nuclear_element(const ContractedGaussian& a, const ContractedGaussian& b,
                       const Molecule& mol) {
    double v = 0.0;
    for (const Atom& atom : mol.atoms()) {
        std::array<double, 3> c{};
        for (int d = 0; d < 3; ++d) c[d] = atom.pos_angstrom[d] * kBohrPerAngstrom;
        v -= atom.z * contract2(a, b, [&](double ea, double eb) {
            return prim_nuclear(ea, a.ang, a.center_bohr, eb, b.ang, b.center_bohr, c);
        });
    }
    return v;
}

double eri_element(const ContractedGaussian& a, const ContractedGaussian& b,
                   const ContractedGaussian& c, const ContractedGaussian& d) {
    double val = 0.0;
    for (std::size_t i = 0; i < a.exps.size(); ++i)
        for (std::size_t j = 0; j < b.exps.size(); ++j)
            for (std::size_t k = 0; k < c.exps.size(); ++k)
                for (std::size_t l = 0; l < d.exps.size(); ++l) {
                    val += a.coefs[i] * b.coefs[j] * c.coefs[k] * d.coefs[l] *
                           prim_eri(a.exps[i], a.ang, a.center_bohr, b.exps[j], b.ang,
                                    b.center_bohr, c.exps[k], c.ang, c.center_bohr, d.exps[l],
                                    d.ang, d.center_bohr);
                }
    return val;
}

double nuclear_repulsion(const Molecule& mol) {
    double e = 0.0;
    const auto& atoms = mol.atoms();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        for (std::size_t j = i + 1; j < atoms.size(); ++j) {
            double r2 = 0.0;
            for (int d = 0; d < 3; ++d) {
                const double dd =
                    (atoms[i].pos_angstrom[d] - atoms[j].pos_angstrom[d]) * kBohrPerAngstrom;
                r2 += dd * dd;
            }
            e += atoms[i].z * atoms[j].z / std::sqrt(r2);
        }
    }
    return e;
}

Integrals compute_integrals(const Molecule& mol, const BasisSet& basis, double eps_linear_dep) {
    const int n = basis.size();
    Integrals out;
    out.overlap.resize(n, n);
    out.kinetic.resize(n, n);
    out.nuclear.resize(n, n);
    out.eri = Tensor4(n);

    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const double s = overlap_element(basis[i], basis[j]);
            const double t = kinetic_element(basis[i], basis[j]);
            const double v = nuclear_element(basis[i], basis[j], mol);
            out.overlap(i, j) = out.overlap(j, i) = s;
            out.kinetic(i, j) = out.kinetic(j, i) = t;
            out.nuclear(i, j) = out.nuclear(j, i) = v;
        }
    }
    out.h_core = out.kinetic + out.nuclear;

    // Unique quartets under the 8-fold permutational symmetry of (ij|kl).
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            for (int k = 0; k <= i; ++k) {
                const int lmax = (k == i) ? j : k;
                for (int l = 0; l <= lmax; ++l) {
                    const double v = eri_element(basis[i], basis[j], basis[k], basis[l]);
                    out.eri(i, j, k, l) = v;
                    out.eri(j, i, k, l) = v;
                    out.eri(i, j, l, k) = v;
                    out.eri(j, i, l, k) = v;
                    out.eri(k, l, i, j) = v;
                    out.eri(l, k, i, j) = v;
                    out.eri(k, l, j, i) = v;
                    out.eri(l, k, j, i) = v;
                }
            }

    out.e_nuc = nuclear_repulsion(mol);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.overlap);
    const double smin = es.eigenvalues().minCoeff();
    if (smin < eps_linear_dep) {
        throw ConditioningError("overlap matrix is near singular: min eigenvalue " +
                                std::to_string(smin));
    }
    return out;
}

}  // namespace qdmet::chem
