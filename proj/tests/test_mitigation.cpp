// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qdmet/common/error.hpp"
#include "qdmet/common/rng.hpp"
#include "qdmet/mitigation/pmsv.hpp"
#include "qdmet/mitigation/spam.hpp"
#include "qdmet/qsim/jordan_wigner.hpp"
#include "qdmet/qsim/measurement.hpp"
#include "qdmet/qsim/noise.hpp"
#include "qdmet/qsim/statevector.hpp"
#include "qdmet/vqe/uccsd.hpp"
#include "qdmet/vqe/vqe_driver.hpp"

#include "oracle.hpp"

using namespace qdmet;
using namespace qdmet::common;
using namespace qdmet::mitigation;
using namespace qdmet::qsim;
using testutil::h2_mo_problem;

namespace {

// Readout-only noise: gates stay clean so the flip statistics are exact.
NoiseModel readout_only(int n_qubits, double p) {
    return NoiseModel::uniform(n_qubits, p, 0.0, 0.0);
}

// Optimised 4-qubit H2 state plus its grouped Hamiltonian.
struct H2Setup {
    GroupedObservable grouped;
    Statevector psi;
    Circuit prep;
    double e_exact = 0.0;
};

H2Setup h2_setup(double bond) {
    const auto p = h2_mo_problem(bond);
    const PauliSum ham = jw_hamiltonian(p.h, p.eri, p.e_nuc);
    const vqe::UccsdAnsatz ansatz = vqe::build_uccsd(2, 2);
    const auto res = vqe::run_vqe(ham, ansatz, Eigen::VectorXd::Zero(3));
    H2Setup out;
    out.grouped = group_qubitwise(ham);
    out.psi = vqe::uccsd_state(ansatz, res.theta);
    out.prep = lower_pauli_exponentials(vqe::state_preparation(ansatz, res.theta));
    out.e_exact = res.energy;
    return out;
}

}  // namespace

TEST_CASE("noiseless calibration is the identity within shot noise") {
    const int n_shots = 20000;
    const auto cal = calibrate_spam(readout_only(3, 0.0), 3, n_shots, 7);
    REQUIRE(cal.n_qubits() == 3);
    CHECK(cal.n_calibration_shots == n_shots);
    for (const auto& m : cal.qubit) {
        CHECK(m(0, 0) == 1.0);
        CHECK(m(1, 1) == 1.0);
        CHECK(m(1, 0) == 0.0);
        CHECK(m(0, 1) == 0.0);
    }
    CHECK(cal.condition_number() == doctest::Approx(1.0));
}

TEST_CASE("calibration estimates a known flip rate within three sigma") {
    const double p = 0.02;
    const int n_shots = 10000;
    const double sigma = std::sqrt(p * (1 - p) / n_shots);
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        const auto cal = calibrate_spam(readout_only(4, p), 4, n_shots, seed);
        for (const auto& m : cal.qubit) {
            CHECK(std::abs(m(1, 0) - p) < 3 * sigma);
            CHECK(std::abs(m(0, 1) - p) < 3 * sigma);
            // Column-stochastic by construction.
            CHECK(m(0, 0) + m(1, 0) == doctest::Approx(1.0));
            CHECK(m(0, 1) + m(1, 1) == doctest::Approx(1.0));
            CHECK(m(0, 0) > m(1, 0));  // sane device: diagonal dominates
        }
    }
    CHECK_THROWS_AS((void)calibrate_spam(readout_only(2, p), 2, 999, 1), ContractError);
}

TEST_CASE("identity calibration leaves the distribution unchanged") {
    Rng rng(derive_seed(40, "spam-identity"));
    Statevector plus = Statevector::basis_state(3, 0b101);
    const ShotTable t = sample_shots(plus, {PauliString{0, 0b111}}, 500, rng);
    const auto mit = mitigate_spam(t, ConfusionMatrix::identity(3));
    CHECK(mit.clipped_mass == 0.0);
    CHECK(mit.condition_number == doctest::Approx(1.0));
    for (std::uint64_t k = 0; k < 8; ++k) {
        const auto it = t.counts.find(k);
        const double raw = it == t.counts.end() ? 0.0 : static_cast<double>(it->second) / 500;
        CHECK(mit.probs[k] == doctest::Approx(raw).epsilon(1e-12));
    }
}

TEST_CASE("spam inversion recovers the true distribution within three sigma") {
    // Forward model: exact flip channel applied in sampling; inverse applied
    // with the exactly known matrix. The multinomial covariance propagated
    // through the linear inverse gives the oracle error bars.
    const double p = 0.02;
    const int nq = 4;
    const int n_shots = 10000;
    const std::uint64_t dim = 16;

    const H2Setup setup = h2_setup(0.74);
    const NoiseModel noise = readout_only(nq, p);
    const auto cal = ConfusionMatrix::uniform_flip(nq, p);

    // Dense forward matrix for the oracle only; bit q of an outcome index
    // is qubit q, matching the sweep in mitigate_spam.
    Eigen::MatrixXd fwd(dim, dim);
    for (std::uint64_t r = 0; r < dim; ++r)
        for (std::uint64_t c = 0; c < dim; ++c) {
            double v = 1.0;
            for (int q = 0; q < nq; ++q) v *= cal.qubit[q]((r >> q) & 1, (c >> q) & 1);
            fwd(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
        }
    const Eigen::MatrixXd inv = fwd.inverse();

    for (std::uint64_t seed : {11u, 12u, 13u, 14u}) {
        Rng rng(derive_seed(seed, "spam-recovery"));
        for (std::size_t g = 0; g < setup.grouped.groups.size(); ++g) {
            const auto& group = setup.grouped.groups[g];
            std::vector<PauliString> strings;
            for (const auto& t : group.terms) strings.push_back(t.string);

            // Ideal distribution in this group's measurement basis.
            Statevector rotated = setup.psi;
            apply_circuit(rotated, basis_change_circuit(group.basis, nq));
            Eigen::VectorXd ideal(dim);
            for (std::uint64_t k = 0; k < dim; ++k) ideal(k) = std::norm(rotated.amp[k]);

            const ShotTable noisy =
                sample_shots_noisy(0, setup.prep, strings, n_shots, noise, rng);
            const auto mit = mitigate_spam(noisy, cal);

            const Eigen::VectorXd p_raw = fwd * ideal;
            for (std::uint64_t k = 0; k < dim; ++k) {
                double var = 0.0;
                for (std::uint64_t j = 0; j < dim; ++j) {
                    var += inv(k, j) * inv(k, j) * p_raw(j) * (1 - p_raw(j)) / n_shots;
                    for (std::uint64_t l = 0; l < dim; ++l)
                        if (l != j) var -= inv(k, j) * inv(k, l) * p_raw(j) * p_raw(l) / n_shots;
                }
                const double sigma = std::sqrt(std::max(var, 1e-16));
                CHECK(std::abs(mit.probs[k] - ideal(k)) < 3 * sigma + 2e-3);
            }
        }
    }
}

TEST_CASE("mitigated energies beat raw ones under readout noise") {
    const double p = 0.02;
    const int n_shots = 10000;
    const H2Setup setup = h2_setup(0.74);
    const NoiseModel noise = readout_only(4, p);
    const auto cal = ConfusionMatrix::uniform_flip(4, p);

    int spam_wins = 0;
    int pmsv_wins = 0;
    for (std::uint64_t seed : {21u, 22u, 23u, 24u}) {
        Rng rng(derive_seed(seed, "scheme-compare"));
        const auto tables = sample_grouped_noisy(setup.grouped, 0, setup.prep, n_shots, noise, rng);
        const double e_raw = estimate_energy(setup.grouped, tables);
        const double e_spam = estimate_energy_spam(setup.grouped, tables, cal);
        const auto pmsv = estimate_energy_pmsv(setup.grouped, tables, 2);

        if (std::abs(e_spam - setup.e_exact) < std::abs(e_raw - setup.e_exact)) ++spam_wins;
        if (std::abs(pmsv.energy - setup.e_exact) < std::abs(e_raw - setup.e_exact)) ++pmsv_wins;
        CHECK(pmsv.shots_kept <= pmsv.shots_total);
        CHECK(pmsv.groups_passed_through > 0);  // H2 has X/Y groups
    }
    CHECK(spam_wins == 4);
    CHECK(pmsv_wins >= 3);  // pmsv cannot touch non-Z groups, allow one tie
}

TEST_CASE("spam rejects singular calibrations and foreign tables") {
    Rng rng(derive_seed(41, "spam-errors"));
    Statevector psi = Statevector::basis_state(2, 0b01);
    const ShotTable t = sample_shots(psi, {PauliString{0, 0b11}}, 100, rng);

    CHECK_THROWS_AS((void)mitigate_spam(t, ConfusionMatrix::identity(3)), ContractError);
    // p = 1/2 makes the column space collapse: readout carries no signal.
    CHECK_THROWS_AS((void)mitigate_spam(t, ConfusionMatrix::uniform_flip(2, 0.5)),
                    ConditioningError);

    ShotTable empty;
    empty.n_qubits = 2;
    CHECK_THROWS_AS((void)mitigate_spam(empty, ConfusionMatrix::identity(2)), MitigationError);
}

TEST_CASE("pmsv keeps exactly the right weight sector") {
    ShotTable t;
    t.n_qubits = 4;
    t.n_shots = 40;
    t.basis = PauliString{0, 0b1111};  // pure Z readout
    t.counts[0b0011] = 25;
    t.counts[0b0001] = 5;   // weight 1: dropped
    t.counts[0b0111] = 6;   // weight 3: dropped
    t.counts[0b0101] = 4;   // weight 2: kept
    const PmsvFiltered f = pmsv_filter(t, 2);

    CHECK(f.applied);
    CHECK(f.shots_total == 40);
    CHECK(f.shots_kept == 29);
    CHECK(f.table.counts.size() == 2);
    for (const auto& [bits, c] : f.table.counts) CHECK(std::popcount(bits) == 2);

    // Idempotence: a second pass changes nothing.
    const PmsvFiltered f2 = pmsv_filter(f.table, 2);
    CHECK(f2.shots_kept == f.shots_kept);
    CHECK(f2.table.counts == f.table.counts);
}

TEST_CASE("pmsv passes non-z bases through with a flag") {
    ShotTable t;
    t.n_qubits = 2;
    t.n_shots = 10;
    t.basis = PauliString{0b01, 0b10};  // X on qubit 0, Z on qubit 1
    t.counts[0b00] = 7;
    t.counts[0b01] = 3;
    const PmsvFiltered f = pmsv_filter(t, 1);
    CHECK(!f.applied);
    CHECK(f.shots_kept == 10);
    CHECK(f.table.counts == t.counts);
}

TEST_CASE("pmsv raises when the filter empties a table") {
    ShotTable t;
    t.n_qubits = 3;
    t.n_shots = 5;
    t.basis = PauliString{0, 0b111};
    t.counts[0b111] = 5;
    CHECK_THROWS_AS((void)pmsv_filter(t, 1), MitigationError);
    CHECK_THROWS_AS((void)pmsv_filter(t, 5), ContractError);
}

TEST_CASE("noiseless shots survive pmsv untouched") {
    const H2Setup setup = h2_setup(1.0);
    Rng rng(derive_seed(42, "pmsv-noiseless"));
    const auto tables = sample_grouped(setup.grouped, setup.psi, 4000, rng);
    const auto est = estimate_energy_pmsv(setup.grouped, tables, 2);

    int z_total = 0;
    int z_kept = 0;
    for (std::size_t g = 0; g < tables.size(); ++g) {
        const PmsvFiltered f = pmsv_filter(tables[g], 2);
        if (!f.applied) continue;
        z_total += f.shots_total;
        z_kept += f.shots_kept;
    }
    CHECK(z_total > 0);
    CHECK(z_kept == z_total);  // 100% retention without noise
    CHECK(est.energy == doctest::Approx(estimate_energy(setup.grouped, tables)).epsilon(1e-12));
}

TEST_CASE("pmsv retention tracks the per-bit survival product") {
    // Readout-only noise on the Hartree-Fock determinant: the retained
    // fraction is the no-flip product to first order. Weight-preserving
    // double flips re-enter at second order, hence the slack.
    const double p = 0.015;
    const int nq = 4;
    const int n_shots = 20000;
    Circuit prep(nq);
    prep.x(0);
    prep.x(1);

    Rng rng(derive_seed(43, "pmsv-retention"));
    const ShotTable t = sample_shots_noisy(0, prep, {PauliString{0, 0b1111}}, n_shots,
                                           readout_only(nq, p), rng);
    const PmsvFiltered f = pmsv_filter(t, 2);

    const double survive = std::pow(1 - p, nq);
    const double measured = static_cast<double>(f.shots_kept) / f.shots_total;
    const double sigma = std::sqrt(survive * (1 - survive) / n_shots);
    CHECK(std::abs(measured - survive) < 3 * sigma + 4 * p * p);
}

TEST_CASE("retained pmsv shots are sound under the device noise ranges") {
    const H2Setup setup = h2_setup(0.74);
    const NoiseModel noise = NoiseModel::sampled(4, 99);
    Rng rng(derive_seed(44, "pmsv-soundness"));
    const auto tables = sample_grouped_noisy(setup.grouped, 0, setup.prep, 10000, noise, rng);
    for (const auto& t : tables) {
        const PmsvFiltered f = pmsv_filter(t, 2);
        if (!f.applied) continue;
        CHECK(f.shots_kept < f.shots_total);  // this noise level always trips some shots
        for (const auto& [bits, c] : f.table.counts) CHECK(std::popcount(bits) == 2);
    }
}
