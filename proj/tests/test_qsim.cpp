// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "qdmet/chem/integrals.hpp"
#include "qdmet/chem/molecule.hpp"
#include "qdmet/common/error.hpp"
#include "qdmet/common/rng.hpp"
#include "qdmet/mf/fci.hpp"
#include "qdmet/mf/lowdin.hpp"
#include "qdmet/mf/rhf.hpp"
#include "qdmet/qsim/jordan_wigner.hpp"
#include "qdmet/qsim/measurement.hpp"
#include "qdmet/qsim/noise.hpp"
#include "qdmet/qsim/statevector.hpp"

#include "oracle.hpp"

using namespace qdmet;
using namespace qdmet::chem;
using namespace qdmet::common;
using namespace qdmet::qsim;
using testutil::dense_op;
using testutil::dense_string;
using testutil::dense_sum;
using testutil::h2_mo_problem;
using testutil::random_state;
using testutil::random_string;
using testutil::to_vector;
using cd = std::complex<double>;

namespace {

std::vector<PauliString> strings_of(const MeasurementGroup& g) {
    std::vector<PauliString> out;
    for (const auto& t : g.terms) out.push_back(t.string);
    return out;
}

}  // namespace

TEST_CASE("single qubit pauli products follow the algebra") {
    const PauliString X{1, 0}, Y{1, 1}, Z{0, 1}, I{0, 0};

    auto xy = multiply(X, Y);
    CHECK(xy.string == Z);
    CHECK(xy.phase_power == 1);  // XY = iZ

    auto yx = multiply(Y, X);
    CHECK(yx.string == Z);
    CHECK(yx.phase_power == 3);  // YX = -iZ

    auto yz = multiply(Y, Z);
    CHECK(yz.string == X);
    CHECK(yz.phase_power == 1);

    auto zx = multiply(Z, X);
    CHECK(zx.string == Y);
    CHECK(zx.phase_power == 1);

    for (const auto& p : {X, Y, Z, I}) {
        auto sq = multiply(p, p);
        CHECK(sq.string == I);
        CHECK(sq.phase_power == 0);
    }

    CHECK(commutes(X, X));
    CHECK(commutes(X, I));
    CHECK(!commutes(X, Y));
    CHECK(!commutes(X, Z));
    CHECK(!commutes(Y, Z));
}

TEST_CASE("random pauli products match the dense oracle") {
    Rng rng(derive_seed(11, "pauli-products"));
    const int nq = 3;
    for (int trial = 0; trial < 40; ++trial) {
        const PauliString a = random_string(nq, rng);
        const PauliString b = random_string(nq, rng);
        const auto prod = multiply(a, b);
        const cd phase = std::pow(cd(0, 1), prod.phase_power);
        const Eigen::MatrixXcd lhs = dense_string(a, nq) * dense_string(b, nq);
        const Eigen::MatrixXcd rhs = phase * dense_string(prod.string, nq);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);

        const Eigen::MatrixXcd comm = lhs - dense_string(b, nq) * dense_string(a, nq);
        CHECK(commutes(a, b) == (comm.cwiseAbs().maxCoeff() < 1e-12));
    }
}

TEST_CASE("qubitwise compatibility is the shared single qubit basis test") {
    const PauliString x0{1, 0}, z1{0, 2}, x0x1{3, 0}, z0{0, 1};
    CHECK(qubitwise_compatible(x0, z1));
    CHECK(qubitwise_compatible(x0, x0x1));
    CHECK(!qubitwise_compatible(x0, z0));
    CHECK(qubitwise_compatible(z0, z1));
    // Qubitwise compatibility is strictly stronger than commutation.
    const PauliString xx{3, 0}, yy{3, 3};
    CHECK(commutes(xx, yy));
    CHECK(!qubitwise_compatible(xx, yy));
}

TEST_CASE("pauli op arithmetic matches the dense oracle") {
    Rng rng(derive_seed(12, "pauli-ops"));
    const int nq = 2;
    for (int trial = 0; trial < 10; ++trial) {
        PauliOp a(nq), b(nq);
        for (int t = 0; t < 4; ++t) {
            a.add(random_string(nq, rng), cd(rng.uniform(-1, 1), rng.uniform(-1, 1)));
            b.add(random_string(nq, rng), cd(rng.uniform(-1, 1), rng.uniform(-1, 1)));
        }
        const Eigen::MatrixXcd da = dense_op(a), db = dense_op(b);
        CHECK((dense_op(a * b) - da * db).cwiseAbs().maxCoeff() < 1e-12);
        PauliOp sum = a;
        sum += b;
        CHECK((dense_op(sum) - (da + db)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((dense_op(a.dagger()) - da.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("to_label names the single qubit factors") {
    CHECK(to_label(PauliString{0, 0}, 3) == "I");
    CHECK(to_label(PauliString{1, 0}, 3) == "X0");
    CHECK(to_label(PauliString{4, 4}, 3) == "Y2");
    CHECK(to_label(PauliString{2, 5}, 3) == "Z0 X1 Z2");
}

TEST_CASE("jordan wigner ladder operators satisfy the anticommutation relations") {
    // Dense brute force over the full Fock space of three spatial orbitals.
    const int nq = 6;
    const Eigen::Index dim = 64;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
    std::vector<Eigen::MatrixXcd> low(nq), raise(nq);
    for (int p = 0; p < nq; ++p) {
        low[p] = dense_op(jw_lowering(p, nq));
        raise[p] = dense_op(jw_raising(p, nq));
        CHECK((raise[p] - low[p].adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
    for (int p = 0; p < nq; ++p) {
        for (int q = 0; q < nq; ++q) {
            const Eigen::MatrixXcd mixed = low[p] * raise[q] + raise[q] * low[p];
            const Eigen::MatrixXcd target = (p == q) ? id : Eigen::MatrixXcd::Zero(dim, dim);
            CHECK((mixed - target).cwiseAbs().maxCoeff() < 1e-12);
            const Eigen::MatrixXcd same = low[p] * low[q] + low[q] * low[p];
            CHECK(same.cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("number operator on one site maps to half of identity minus z") {
    const PauliOp n0 = jw_excitation(0, 0, 2);
    const auto terms = n0.terms();
    REQUIRE(terms.size() == 2);
    CHECK(std::abs(terms.at(PauliString{0, 0}) - cd(0.5, 0)) < 1e-14);
    CHECK(std::abs(terms.at(PauliString{0, 1}) - cd(-0.5, 0)) < 1e-14);

    const PauliSum num = jw_number_operator(4);
    for (std::uint64_t bits : {0ull, 1ull, 5ull, 15ull, 10ull}) {
        const Statevector psi = Statevector::basis_state(4, bits);
        CHECK(expectation(psi, num) == doctest::Approx(double(std::popcount(bits))).epsilon(1e-12));
    }
}

TEST_CASE("hartree fock bitstring reproduces the mean field energy") {
    const auto p = h2_mo_problem(0.74);
    const PauliSum ham = jw_hamiltonian(p.h, p.eri, 0.0);
    CHECK(ham.n_qubits == 4);
    const Statevector psi = Statevector::basis_state(4, hf_reference_bits(p.n_elec));
    CHECK(expectation(psi, ham) == doctest::Approx(p.e_elec_hf).epsilon(1e-10));
}

TEST_CASE("mapped h2 hamiltonian reaches the fci ground state") {
    const auto p = h2_mo_problem(0.74);
    const PauliSum ham = jw_hamiltonian(p.h, p.eri, p.e_nuc);
    PauliOp op(4);
    for (const auto& t : ham.terms) op.add(t.string, cd(t.coeff, 0));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_op(op));
    const mf::FciResult fci = mf::run_fci(p.h, p.eri, p.e_nuc, 1, 1);
    CHECK(es.eigenvalues().minCoeff() == doctest::Approx(fci.energy).epsilon(1e-10));
}

TEST_CASE("jordan wigner rejects systems past the qubit budget") {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(17, 17);
    Tensor4 eri(17);
    CHECK_THROWS_AS((void)jw_hamiltonian(h, eri, 0.0), CapacityError);
}

TEST_CASE("elementary gates match their matrices") {
    Rng rng(derive_seed(13, "gates"));
    const int nq = 3;
    for (int q = 0; q < nq; ++q) {
        const Statevector psi = random_state(nq, rng);
        const Eigen::VectorXcd v = to_vector(psi);

        Statevector sx = psi;
        apply_gate(sx, Gate{Gate::Kind::X, q, -1, 0.0, {}});
        CHECK((to_vector(sx) - dense_string(PauliString{1ull << q, 0}, nq) * v).cwiseAbs().maxCoeff() < 1e-12);

        const double theta = rng.uniform(-3.0, 3.0);
        Statevector sz = psi;
        apply_gate(sz, Gate{Gate::Kind::Rz, q, -1, theta, {}});
        Eigen::MatrixXcd rz = std::cos(theta / 2) * Eigen::MatrixXcd::Identity(8, 8) -
                              cd(0, std::sin(theta / 2)) * dense_string(PauliString{0, 1ull << q}, nq);
        CHECK((to_vector(sz) - rz * v).cwiseAbs().maxCoeff() < 1e-12);

        Statevector sy = psi;
        apply_gate(sy, Gate{Gate::Kind::Ry, q, -1, theta, {}});
        Eigen::MatrixXcd ry = std::cos(theta / 2) * Eigen::MatrixXcd::Identity(8, 8) -
                              cd(0, std::sin(theta / 2)) * dense_string(PauliString{1ull << q, 1ull << q}, nq);
        CHECK((to_vector(sy) - ry * v).cwiseAbs().maxCoeff() < 1e-12);

        Statevector sh = psi;
        apply_gate(sh, Gate{Gate::Kind::H, q, -1, 0.0, {}});
        Eigen::MatrixXcd hmat = (dense_string(PauliString{1ull << q, 0}, nq) +
                                 dense_string(PauliString{0, 1ull << q}, nq)) /
                                std::sqrt(2.0);
        CHECK((to_vector(sh) - hmat * v).cwiseAbs().maxCoeff() < 1e-12);
    }

    // CNOT truth table on two qubits, control 0 target 1.
    for (std::uint64_t in : {0ull, 1ull, 2ull, 3ull}) {
        Statevector s = Statevector::basis_state(2, in);
        apply_gate(s, Gate{Gate::Kind::Cnot, 0, 1, 0.0, {}});
        const std::uint64_t expected = (in & 1ull) ? (in ^ 2ull) : in;
        CHECK(std::abs(s.amp[expected] - cd(1, 0)) < 1e-14);
    }
}

TEST_CASE("pauli exponential matches the dense exponential") {
    Rng rng(derive_seed(14, "pauli-exp"));
    const int nq = 3;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(8, 8);
    for (int trial = 0; trial < 25; ++trial) {
        const PauliString p = random_string(nq, rng);
        const double theta = rng.uniform(-3.0, 3.0);
        const Statevector psi = random_state(nq, rng);
        Statevector out = psi;
        apply_gate(out, Gate{Gate::Kind::PauliExp, 0, -1, theta, p});
        // exp(-i theta/2 P) = cos(theta/2) I - i sin(theta/2) P since P^2 = I.
        const Eigen::MatrixXcd u =
            std::cos(theta / 2) * id - cd(0, std::sin(theta / 2)) * dense_string(p, nq);
        CHECK((to_vector(out) - u * to_vector(psi)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("rotating a plus state about z sweeps the x expectation") {
    for (double theta : {0.0, 0.3, 1.0, 2.2, 3.14}) {
        Circuit c(1);
        c.h(0);
        c.pauli_exp(PauliString{0, 1}, theta);
        Statevector psi = Statevector::basis_state(1, 0);
        apply_circuit(psi, c);
        PauliSum obs;
        obs.n_qubits = 1;
        obs.terms.push_back({PauliString{1, 0}, 1.0});
        CHECK(expectation(psi, obs) == doctest::Approx(std::cos(theta)).epsilon(1e-10));
    }
}

TEST_CASE("long random circuits preserve the norm") {
    Rng rng(derive_seed(15, "unitarity"));
    const int nq = 4;
    Circuit c(nq);
    for (int g = 0; g < 2000; ++g) {
        switch (rng.uniform_index(6)) {
            case 0: c.x(int(rng.uniform_index(nq))); break;
            case 1: c.h(int(rng.uniform_index(nq))); break;
            case 2: c.rz(int(rng.uniform_index(nq)), rng.uniform(-3, 3)); break;
            case 3: c.ry(int(rng.uniform_index(nq)), rng.uniform(-3, 3)); break;
            case 4: {
                const int a = int(rng.uniform_index(nq));
                const int b = (a + 1 + int(rng.uniform_index(nq - 1))) % nq;
                c.cnot(a, b);
                break;
            }
            default: c.pauli_exp(random_string(nq, rng), rng.uniform(-3, 3)); break;
        }
    }
    Statevector psi = random_state(nq, rng);
    apply_circuit(psi, c);
    CHECK(std::abs(psi.norm() - 1.0) < 1e-10);
}

TEST_CASE("statevector expectation matches the dense oracle") {
    Rng rng(derive_seed(16, "expectation"));
    const int nq = 2;
    for (int trial = 0; trial < 10; ++trial) {
        PauliSum obs;
        obs.n_qubits = nq;
        for (int t = 0; t < 5; ++t) obs.terms.push_back({random_string(nq, rng), rng.uniform(-2, 2)});
        const Statevector psi = random_state(nq, rng);
        const Eigen::VectorXcd v = to_vector(psi);
        const cd expected = v.dot(dense_sum(obs) * v);
        CHECK(expectation(psi, obs) == doctest::Approx(expected.real()).epsilon(1e-10));

        const PauliString p = random_string(nq, rng);
        Statevector applied = psi;
        apply_pauli(applied, p);
        CHECK((to_vector(applied) - dense_string(p, nq) * v).cwiseAbs().maxCoeff() < 1e-12);
        const cd pexp = pauli_expectation(psi, p);
        const cd pref = v.dot(dense_string(p, nq) * v);
        CHECK(std::abs(pexp - pref) < 1e-12);
    }
}

TEST_CASE("circuit builders validate their wires") {
    Circuit c(2);
    CHECK_THROWS_AS(c.x(2), ContractError);
    CHECK_THROWS_AS(c.x(-1), ContractError);
    CHECK_THROWS_AS(c.cnot(0, 0), ContractError);
    CHECK_THROWS_AS(c.cnot(0, 5), ContractError);
    CHECK_THROWS_AS(c.pauli_exp(PauliString{4, 0}, 0.1), ContractError);
    CHECK_THROWS_AS(Statevector::basis_state(27, 0), CapacityError);
}

TEST_CASE("qubitwise grouping covers every term exactly once") {
    const auto p = h2_mo_problem(0.74);
    const PauliSum ham = jw_hamiltonian(p.h, p.eri, p.e_nuc);
    const GroupedObservable grouped = group_qubitwise(ham);

    std::size_t n_grouped = 0;
    std::map<PauliString, int> seen;
    for (const auto& g : grouped.groups) {
        REQUIRE(!g.terms.empty());
        n_grouped += g.terms.size();
        for (const auto& t : g.terms) {
            seen[t.string] += 1;
            CHECK(!t.string.identity());
            // Every member measures in the group basis qubit by qubit.
            CHECK(qubitwise_compatible(t.string, g.basis));
        }
        for (const auto& a : g.terms)
            for (const auto& b : g.terms) CHECK(qubitwise_compatible(a.string, b.string));
    }
    for (const auto& [s, count] : seen) CHECK(count == 1);

    std::size_t n_nonidentity = 0;
    double id_coeff = 0.0;
    for (const auto& t : ham.terms) {
        if (t.string.identity())
            id_coeff += t.coeff;
        else
            ++n_nonidentity;
    }
    CHECK(n_grouped == n_nonidentity);
    CHECK(grouped.identity == doctest::Approx(id_coeff).epsilon(1e-14));
    CHECK(grouped.groups.size() < n_nonidentity);  // grouping actually merges

    // Grouping is deterministic.
    const GroupedObservable again = group_qubitwise(ham);
    REQUIRE(again.groups.size() == grouped.groups.size());
    for (std::size_t i = 0; i < again.groups.size(); ++i)
        CHECK(again.groups[i].basis == grouped.groups[i].basis);
}

TEST_CASE("union of incompatible strings is rejected") {
    const std::vector<PauliString> clash{PauliString{1, 0}, PauliString{0, 1}};
    CHECK_THROWS_AS((void)qubitwise_union(clash, 1), ContractError);
    CHECK(qubitwise_union({PauliString{1, 0}, PauliString{0, 2}}, 2) == PauliString{1, 2});
}

TEST_CASE("noiseless sampling of a basis state is deterministic") {
    const Statevector psi = Statevector::basis_state(2, 0);
    MeasurementGroup g;
    g.terms.push_back({PauliString{0, 1}, 1.0});
    g.basis = PauliString{0, 1};
    Rng rng(derive_seed(17, "all-zero"));
    const ShotTable table = sample_shots(psi, strings_of(g), 500, rng);
    REQUIRE(table.counts.size() == 1);
    CHECK(table.counts.at(0) == 500);
    CHECK(table.total_counts() == 500);
    CHECK(estimate_group(g, table) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("seeded sampling is reproducible and seed sensitive") {
    const auto p = h2_mo_problem(0.74);
    const PauliSum ham = jw_hamiltonian(p.h, p.eri, p.e_nuc);
    const GroupedObservable grouped = group_qubitwise(ham);
    Circuit prep(4);
    prep.x(0);
    prep.x(1);
    prep.h(2);
    prep.cnot(2, 3);
    Statevector psi = Statevector::basis_state(4, 0);
    apply_circuit(psi, prep);

    auto run = [&](std::uint64_t seed) {
        std::vector<ShotTable> tables;
        for (std::size_t i = 0; i < grouped.groups.size(); ++i) {
            Rng rng(derive_seed(seed, "group-" + std::to_string(i)));
            tables.push_back(sample_shots(psi, strings_of(grouped.groups[i]), 512, rng));
        }
        return tables;
    };
    const auto a = run(7), b = run(7), c = run(8);
    bool identical = true, differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        identical = identical && (a[i].counts == b[i].counts);
        differs = differs || (a[i].counts != c[i].counts);
    }
    CHECK(identical);
    CHECK(differs);
    CHECK(estimate_energy(grouped, a) == estimate_energy(grouped, b));  // bit identical
}

TEST_CASE("shot estimates concentrate as the budget grows") {
    const auto p = h2_mo_problem(0.74);
    const PauliSum ham = jw_hamiltonian(p.h, p.eri, p.e_nuc);
    const GroupedObservable grouped = group_qubitwise(ham);

    Circuit prep(4);
    prep.x(0);
    prep.x(1);
    prep.pauli_exp(PauliString{0b1111, 0b0011}, 0.23);
    Statevector psi = Statevector::basis_state(4, 0);
    apply_circuit(psi, prep);
    const double exact = expectation(psi, ham);

    // Oracle for the sampling variance: rotate into each group basis and
    // accumulate the variance of the measured parity sum.
    double var_sum = 0.0;
    for (const auto& g : grouped.groups) {
        Statevector rotated = psi;
        apply_circuit(rotated, basis_change_circuit(g.basis, 4));
        double mean = 0.0, second = 0.0;
        for (std::size_t k = 0; k < rotated.amp.size(); ++k) {
            const double prob = std::norm(rotated.amp[k]);
            double value = 0.0;
            for (const auto& t : g.terms) {
                const int parity = std::popcount(std::uint64_t(k) & t.string.support()) & 1;
                value += parity ? -t.coeff : t.coeff;
            }
            mean += prob * value;
            second += prob * value * value;
        }
        var_sum += second - mean * mean;
    }

    for (int n_shots : {100, 1000, 10000, 100000}) {
        std::vector<ShotTable> tables;
        for (std::size_t i = 0; i < grouped.groups.size(); ++i) {
            Rng rng(derive_seed(19, "sweep-" + std::to_string(n_shots) + "-" + std::to_string(i)));
            tables.push_back(sample_shots(psi, strings_of(grouped.groups[i]), n_shots, rng));
        }
        const double est = estimate_energy(grouped, tables);
        const double sigma = std::sqrt(var_sum / double(n_shots));
        CHECK(std::abs(est - exact) < 4.0 * sigma + 1e-12);
    }
}

TEST_CASE("noise model validation and sampling stay inside the device ranges") {
    const NoiseModel flat = NoiseModel::uniform(3, 0.01, 2e-4, 6e-3);
    flat.validate();
    CHECK(flat.n_qubits() == 3);
    CHECK(flat.depol2.size() == 3);
    CHECK(flat.depol2_at(0, 2) == doctest::Approx(6e-3));
    CHECK(flat.depol2_at(2, 0) == doctest::Approx(6e-3));
    CHECK_THROWS_AS((void)flat.depol2_at(1, 1), ContractError);

    const NoiseModel drawn = NoiseModel::sampled(5, 42);
    drawn.validate();
    for (int q = 0; q < 5; ++q) {
        CHECK(drawn.read1_given0[q] >= kReadoutErrMin);
        CHECK(drawn.read1_given0[q] <= kReadoutErrMax);
        CHECK(drawn.read0_given1[q] >= kReadoutErrMin);
        CHECK(drawn.read0_given1[q] <= kReadoutErrMax);
        CHECK(drawn.depol1[q] >= kDepol1Min);
        CHECK(drawn.depol1[q] <= kDepol1Max);
    }
    for (double p2 : drawn.depol2) {
        CHECK(p2 >= kDepol2Min);
        CHECK(p2 <= kDepol2Max);
    }
    const NoiseModel redrawn = NoiseModel::sampled(5, 42);
    CHECK(redrawn.depol2 == drawn.depol2);

    NoiseModel bad = flat;
    bad.read1_given0[0] = 1.5;
    CHECK_THROWS_AS(bad.validate(), ContractError);
}

TEST_CASE("a half strength readout flip scrambles a fixed bit") {
    NoiseModel noise = NoiseModel::uniform(1, 0.5, 0.0, 0.0);
    MeasurementGroup g;
    g.terms.push_back({PauliString{0, 1}, 1.0});
    g.basis = PauliString{0, 1};
    Rng rng(derive_seed(21, "readout-half"));
    Circuit prep(1);
    const int n_shots = 10000;
    const ShotTable table = sample_shots_noisy(0, prep, strings_of(g), n_shots, noise, rng);
    const double p1 = double(table.counts.count(1) ? table.counts.at(1) : 0) / n_shots;
    const double sigma = std::sqrt(0.25 / n_shots);
    CHECK(std::abs(p1 - 0.5) < 3.0 * sigma);
}

TEST_CASE("depolarizing trajectories spread a clean preparation") {
    // One qubit, X gate with strong depolarizing noise and clean readout:
    // a third of the error events leave Z untouched (Z branch), so the
    // outcome distribution acquires weight on 0.
    NoiseModel noise = NoiseModel::uniform(1, 0.0, 0.3, 0.0);
    MeasurementGroup g;
    g.terms.push_back({PauliString{0, 1}, 1.0});
    g.basis = PauliString{0, 1};
    Circuit prep(1);
    prep.x(0);
    Rng rng(derive_seed(22, "depol"));
    const int n_shots = 20000;
    const ShotTable table = sample_shots_noisy(0, prep, strings_of(g), n_shots, noise, rng);
    const double p0 = double(table.counts.count(0) ? table.counts.at(0) : 0) / n_shots;
    // Flip probability is 2/3 * 0.3 = 0.2, so p0 = 0.2.
    const double sigma = std::sqrt(0.2 * 0.8 / n_shots);
    CHECK(std::abs(p0 - 0.2) < 4.0 * sigma);

    Rng rng_a(derive_seed(23, "traj")), rng_b(derive_seed(23, "traj"));
    const ShotTable ta = sample_shots_noisy(0, prep, strings_of(g), 256, noise, rng_a);
    const ShotTable tb = sample_shots_noisy(0, prep, strings_of(g), 256, noise, rng_b);
    CHECK(ta.counts == tb.counts);
}

TEST_CASE("noiseless shot tables round trip through json") {
    const auto p = h2_mo_problem(0.74);
    const PauliSum ham = jw_hamiltonian(p.h, p.eri, p.e_nuc);
    const GroupedObservable grouped = group_qubitwise(ham);
    Statevector psi = Statevector::basis_state(4, 3);
    Rng rng(derive_seed(24, "json"));
    const ShotTable table = sample_shots(psi, strings_of(grouped.groups.front()), 200, rng);
    const ShotTable back = shot_table_from_json(shot_table_to_json(table));
    CHECK(back.n_qubits == table.n_qubits);
    CHECK(back.n_shots == table.n_shots);
    CHECK(back.basis == table.basis);
    CHECK(back.counts == table.counts);

    CHECK(bits_to_string(0b0011, 4) == "0011");
    CHECK(bits_to_string(0b0100, 4) == "0100");
    CHECK(bits_to_string(0, 2) == "00");
}
