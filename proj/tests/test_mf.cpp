// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include <doctest.h>

#include <cmath>
#include <vector>

#include "qdmet/chem/basis.hpp"
#include "qdmet/chem/integrals.hpp"
#include "qdmet/chem/molecule.hpp"
#include "qdmet/common/error.hpp"
#include "qdmet/mf/fci.hpp"
#include "qdmet/mf/lowdin.hpp"
#include "qdmet/mf/mp2.hpp"
#include "qdmet/mf/rhf.hpp"

using namespace qdmet;
using namespace qdmet::chem;
using namespace qdmet::mf;

namespace {

Molecule h2_at_bohr(double r_bohr) {
    const double r_ang = r_bohr / kBohrPerAngstrom;
    return Molecule({{"H", 1, {0, 0, 0}}, {"H", 1, {0, 0, r_ang}}}, 0);
}

Molecule lih(double r_ang = 1.6) {
    return Molecule({{"Li", 3, {0, 0, 0}}, {"H", 1, {0, 0, r_ang}}}, 0);
}

// Closed-shell energy of a two-electron system with both electrons in the
// normalised orbital c: E = 2 h_cc + (cc|cc).
double two_electron_energy(const Eigen::VectorXd& c, const Eigen::MatrixXd& h,
                           const Tensor4& eri) {
    const int n = static_cast<int>(c.size());
    double hcc = 0.0, g = 0.0;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            hcc += c(u) * c(v) * h(u, v);
            for (int l = 0; l < n; ++l)
                for (int s = 0; s < n; ++s)
                    g += c(u) * c(v) * c(l) * c(s) *
                         eri(static_cast<std::size_t>(u), static_cast<std::size_t>(v),
                             static_cast<std::size_t>(l), static_cast<std::size_t>(s));
        }
    return 2.0 * hcc + g;
}

}  // namespace

TEST_CASE("rhf h2 matches brute-force orbital scan") {
    const Molecule m = h2_at_bohr(1.4);
    const auto ints = compute_integrals(m, build_basis(m));
    const auto scf = run_rhf(ints, m.n_electrons());
    CHECK(scf.converged);

    // One-parameter oracle: every normalised real orbital in a 2-AO basis is
    // cos(t) chi0 + sin(t) chi1 up to normalisation. Minimise on a fine grid.
    double best = 1e9;
    const int grid = 40000;
    for (int k = 0; k < grid; ++k) {
        const double t = M_PI * k / grid;
        Eigen::VectorXd c(2);
        c << std::cos(t), std::sin(t);
        const double norm2 = c.transpose() * ints.overlap * c;
        c /= std::sqrt(norm2);
        best = std::min(best, two_electron_energy(c, ints.h_core, ints.eri));
    }
    CHECK(scf.e_elec == doctest::Approx(best).epsilon(1e-7));

    // Frozen total energy for H2/STO-3G at 1.4 bohr.
    CHECK(scf.e_total == doctest::Approx(-1.116714).epsilon(2e-5));
    CHECK(scf.n_iter <= 30);
}

TEST_CASE("rhf helium closed form") {
    const Molecule he = Molecule({{"He", 2, {0, 0, 0}}}, 0);
    const auto ints = compute_integrals(he, build_basis(he));
    const auto scf = run_rhf(ints, 2);
    // One basis function: the orbital is fixed, E = 2 h00 + (00|00).
    const double exact = 2.0 * ints.h_core(0, 0) + ints.eri(0, 0, 0, 0);
    CHECK(scf.e_total == doctest::Approx(exact).epsilon(1e-12));
    CHECK(scf.e_total == doctest::Approx(-2.8077840).epsilon(1e-5));
}

TEST_CASE("rhf density and fock invariants") {
    const auto m = lih();
    const auto ints = compute_integrals(m, build_basis(m));
    const auto scf = run_rhf(ints, m.n_electrons());
    CHECK(scf.converged);

    // tr(D S) counts electrons.
    CHECK((scf.D * ints.overlap).trace() == doctest::Approx(4.0).epsilon(1e-9));
    // Converged commutator is small.
    CHECK((scf.F * scf.D * ints.overlap - ints.overlap * scf.D * scf.F).norm() < 1e-6);
    // Orbital energies ascend.
    for (int i = 1; i < scf.eps.size(); ++i) CHECK(scf.eps(i) >= scf.eps(i - 1) - 1e-12);
    // C diagonalises F in the S metric.
    const Eigen::MatrixXd fmo = scf.C.transpose() * scf.F * scf.C;
    for (int i = 0; i < fmo.rows(); ++i)
        for (int j = 0; j < fmo.cols(); ++j)
            if (i != j) CHECK(std::abs(fmo(i, j)) < 1e-6);
}

TEST_CASE("rhf energy is invariant under rigid motions") {
    const auto i0 = compute_integrals(lih(), build_basis(lih()));
    const double e0 = run_rhf(i0, 4).e_total;

    const double c = std::cos(0.6), s = std::sin(0.6);
    const Molecule rot = lih().with_positions({{0.2, -0.4, 0.1},
                                               {0.2 + 1.6 * s, -0.4, 0.1 + 1.6 * c}});
    const auto i1 = compute_integrals(rot, build_basis(rot));
    CHECK(run_rhf(i1, 4).e_total == doctest::Approx(e0).epsilon(1e-9));
}

TEST_CASE("rhf rejects odd electron counts") {
    const Molecule he = Molecule({{"He", 2, {0, 0, 0}}}, 0);
    const auto ints = compute_integrals(he, build_basis(he));
    CHECK_THROWS_AS(run_rhf(ints, 3), ContractError);
}

TEST_CASE("lowdin orthogonalisation properties") {
    const auto m = lih();
    const auto ints = compute_integrals(m, build_basis(m));
    const auto ob = lowdin_orthogonalize(ints);
    const int n = static_cast<int>(ints.overlap.rows());

    // X S X = I and X X_inv = I.
    CHECK((ob.x * ints.overlap * ob.x - Eigen::MatrixXd::Identity(n, n)).norm() < 1e-11);
    CHECK((ob.x * ob.x_inv - Eigen::MatrixXd::Identity(n, n)).norm() < 1e-11);

    // Transported density keeps the electron count without a metric.
    const auto scf = run_rhf(ints, 4);
    const Eigen::MatrixXd d_lo = ob.density(scf.D);
    CHECK(d_lo.trace() == doctest::Approx(4.0).epsilon(1e-9));

    // Two-electron closed form for S^{-1/2} on a 2x2 overlap: eigenvectors
    // (1,1)/sqrt2 and (1,-1)/sqrt2 with eigenvalues 1 +- s.
    const auto h2 = h2_at_bohr(1.4);
    const auto ih2 = compute_integrals(h2, build_basis(h2));
    const double s01 = ih2.overlap(0, 1);
    Eigen::MatrixXd xref(2, 2);
    const double a = 0.5 * (1.0 / std::sqrt(1.0 + s01) + 1.0 / std::sqrt(1.0 - s01));
    const double b = 0.5 * (1.0 / std::sqrt(1.0 + s01) - 1.0 / std::sqrt(1.0 - s01));
    xref << a, b, b, a;
    CHECK((inverse_sqrt(ih2.overlap) - xref).norm() < 1e-12);
}

TEST_CASE("four-index transform matches naive contraction") {
    const auto m = h2_at_bohr(1.4);
    const auto ints = compute_integrals(m, build_basis(m));
    const Eigen::MatrixXd X = inverse_sqrt(ints.overlap);
    const Tensor4 t = transform_eri(ints.eri, X);
    const int n = 2;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) {
                    double ref = 0.0;
                    for (int u = 0; u < n; ++u)
                        for (int v = 0; v < n; ++v)
                            for (int l = 0; l < n; ++l)
                                for (int g = 0; g < n; ++g)
                                    ref += X(u, p) * X(v, q) * X(l, r) * X(g, s) *
                                           ints.eri(static_cast<std::size_t>(u),
                                                    static_cast<std::size_t>(v),
                                                    static_cast<std::size_t>(l),
                                                    static_cast<std::size_t>(g));
                    CHECK(t(static_cast<std::size_t>(p), static_cast<std::size_t>(q),
                            static_cast<std::size_t>(r), static_cast<std::size_t>(s)) ==
                          doctest::Approx(ref).epsilon(1e-12));
                }
}

TEST_CASE("mp2 closed form for h2 and sign property") {
    const auto m = h2_at_bohr(1.4);
    const auto ints = compute_integrals(m, build_basis(m));
    const auto scf = run_rhf(ints, 2);
    const auto mp2 = run_mp2(scf.C, scf.eps, ints.eri, 2);

    // Single occupied, single virtual: E2 = K01^2 / (2 (e0 - e1)).
    const Tensor4 mo = transform_eri(ints.eri, scf.C);
    const double k01 = mo(0, 1, 0, 1);
    const double e2_ref = k01 * k01 / (2.0 * (scf.eps(0) - scf.eps(1)));
    CHECK(mp2.e_corr == doctest::Approx(e2_ref).epsilon(1e-12));
    CHECK(mp2.e_corr < 0.0);
    CHECK(mp2.e_corr == doctest::Approx(-0.013).epsilon(0.25));

    const auto ml = lih();
    const auto il = compute_integrals(ml, build_basis(ml));
    const auto sl = run_rhf(il, 4);
    CHECK(run_mp2(sl.C, sl.eps, il.eri, 4).e_corr < 0.0);
}

TEST_CASE("fci h2 against hand-built ci matrix") {
    const auto m = h2_at_bohr(1.4);
    const auto ints = compute_integrals(m, build_basis(m));
    const auto scf = run_rhf(ints, 2);

    const Eigen::MatrixXd hmo = transform_one(ints.h_core, scf.C);
    const Tensor4 vmo = transform_eri(ints.eri, scf.C);
    const auto fci = run_fci(hmo, vmo, ints.e_nuc, 1, 1);

    // Independent 4x4 CI matrix over {|00|, |01|, |10|, |11|} (alpha beta)
    // in the MO basis, from the Slater-Condon rules.
    const double h00 = hmo(0, 0), h11 = hmo(1, 1), h01 = hmo(0, 1);
    const double g0000 = vmo(0, 0, 0, 0), g1111 = vmo(1, 1, 1, 1);
    const double g0011 = vmo(0, 0, 1, 1), g0101 = vmo(0, 1, 0, 1);
    const double g0100 = vmo(0, 1, 0, 0), g0111 = vmo(0, 1, 1, 1);
    Eigen::MatrixXd H(4, 4);
    H << 2 * h00 + g0000, h01 + g0100, h01 + g0100, g0101,
         h01 + g0100, h00 + h11 + g0011, g0101, h01 + g0111,
         h01 + g0100, g0101, h00 + h11 + g0011, h01 + g0111,
         g0101, h01 + g0111, h01 + g0111, 2 * h11 + g1111;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    CHECK(fci.energy == doctest::Approx(es.eigenvalues()(0) + ints.e_nuc).epsilon(1e-12));

    // Variational bound and a frozen landmark.
    CHECK(fci.energy < scf.e_total);
    CHECK(fci.energy == doctest::Approx(-1.137).epsilon(2e-3));
}

TEST_CASE("fci rdm invariants and energy reconstruction") {
    const auto m = h2_at_bohr(1.4);
    const auto ints = compute_integrals(m, build_basis(m));
    const auto ob = lowdin_orthogonalize(ints);
    const auto fci = run_fci(ob.h, ob.eri, ob.e_const, 1, 1);

    const int n = 2;
    CHECK(fci.rdm1.trace() == doctest::Approx(2.0).epsilon(1e-10));
    CHECK((fci.rdm1 - fci.rdm1.transpose()).norm() < 1e-10);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fci.rdm1);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
    CHECK(es.eigenvalues().maxCoeff() < 2.0 + 1e-10);

    double pair_trace = 0.0;
    for (int p = 0; p < n; ++p)
        for (int r = 0; r < n; ++r)
            pair_trace += fci.rdm2(static_cast<std::size_t>(p), static_cast<std::size_t>(p),
                                   static_cast<std::size_t>(r), static_cast<std::size_t>(r));
    CHECK(pair_trace == doctest::Approx(2.0).epsilon(1e-10));  // N (N - 1)

    double e = ob.e_const;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            e += ob.h(p, q) * fci.rdm1(p, q);
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s)
                    e += 0.5 *
                         ob.eri(static_cast<std::size_t>(p), static_cast<std::size_t>(q),
                                static_cast<std::size_t>(r), static_cast<std::size_t>(s)) *
                         fci.rdm2(static_cast<std::size_t>(p), static_cast<std::size_t>(q),
                                  static_cast<std::size_t>(r), static_cast<std::size_t>(s));
        }
    CHECK(e == doctest::Approx(fci.energy).epsilon(1e-10));
}

TEST_CASE("fci is basis independent") {
    const auto m = h2_at_bohr(1.4);
    const auto ints = compute_integrals(m, build_basis(m));
    const auto ob = lowdin_orthogonalize(ints);
    const auto scf = run_rhf(ints, 2);

    const double e_lo = run_fci(ob.h, ob.eri, ints.e_nuc, 1, 1).energy;
    const double e_mo = run_fci(transform_one(ints.h_core, scf.C),
                                transform_eri(ints.eri, scf.C), ints.e_nuc, 1, 1)
                            .energy;
    CHECK(e_lo == doctest::Approx(e_mo).epsilon(1e-11));
}

TEST_CASE("fci capacity guard") {
    const auto m = lih();
    const auto ints = compute_integrals(m, build_basis(m));
    const auto ob = lowdin_orthogonalize(ints);
    FciOptions opts;
    opts.max_determinants = 10;  // C(6,2)^2 = 225 > 10
    CHECK_THROWS_AS(run_fci(ob.h, ob.eri, ob.e_const, 2, 2, opts), CapacityError);
}

TEST_CASE("fci lih ground state below rhf") {
    const auto m = lih();
    const auto ints = compute_integrals(m, build_basis(m));
    const auto ob = lowdin_orthogonalize(ints);
    const auto scf = run_rhf(ints, 4);
    const auto fci = run_fci(ob.h, ob.eri, ob.e_const, 2, 2);
    CHECK(fci.energy < scf.e_total);
    CHECK(fci.energy > scf.e_total - 0.1);  // correlation is small here
    CHECK(fci.rdm1.trace() == doctest::Approx(4.0).epsilon(1e-9));
}
