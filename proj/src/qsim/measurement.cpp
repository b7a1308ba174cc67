// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/qsim/measurement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "qdmet/common/error.hpp"

namespace qdmet::qsim {

GroupedObservable group_qubitwise(const PauliSum& obs) {
    GroupedObservable out;
    out.n_qubits = obs.n_qubits;

    std::vector<PauliTerm> work;
    for (const auto& t : obs.terms) {
        if (t.string.identity()) {
            out.identity += t.coeff;
        } else {
            work.push_back(t);
        }
    }
    std::sort(work.begin(), work.end(), [](const PauliTerm& a, const PauliTerm& b) {
        const double ma = std::abs(a.coeff), mb = std::abs(b.coeff);
        if (ma != mb) return ma > mb;
        return a.string < b.string;
    });

    for (const auto& t : work) {
        bool placed = false;
        for (auto& g : out.groups) {
            if (qubitwise_compatible(t.string, g.basis)) {
                g.terms.push_back(t);
                g.basis.x |= t.string.x;
                g.basis.z |= t.string.z;
                placed = true;
                break;
            }
        }
        if (!placed) out.groups.push_back({{t}, t.string});
    }
    return out;
}

PauliString qubitwise_union(const std::vector<PauliString>& group, int n_qubits) {
    PauliString basis;
    for (const auto& s : group) {
        if (n_qubits < 64 && (s.support() >> n_qubits) != 0)
            throw ContractError("measurement group: string wider than register");
        if (!qubitwise_compatible(s, basis))
            throw ContractError("measurement group does not share a qubit-wise basis");
        basis.x |= s.x;
        basis.z |= s.z;
    }
    return basis;
}

Circuit basis_change_circuit(const PauliString& basis, int n_qubits) {
    Circuit c(n_qubits);
    for (int q = 0; q < n_qubits; ++q) {
        const std::uint64_t bit = 1ULL << q;
        const bool bx = basis.x & bit, bz = basis.z & bit;
        if (bx && bz) {
            c.rz(q, -M_PI / 2.0);  // S-dagger up to global phase
            c.h(q);
        } else if (bx) {
            c.h(q);
        }
    }
    return c;
}

int ShotTable::total_counts() const {
    int total = 0;
    for (const auto& [bits, n] : counts) total += n;
    return total;
}

namespace {

std::uint64_t draw_outcome(const Statevector& psi, common::Rng& rng) {
    const double u = rng.uniform();
    double acc = 0.0;
    const std::uint64_t last = psi.amp.size() - 1;
    for (std::uint64_t k = 0; k < psi.amp.size(); ++k) {
        acc += std::norm(psi.amp[k]);
        if (u < acc) return k;
    }
    return last;  // u landed in the rounding slack at the top
}

}  // namespace

ShotTable sample_shots(const Statevector& state, const std::vector<PauliString>& group,
                       int n_shots, common::Rng& rng) {
    if (n_shots <= 0) throw ContractError("sample_shots: shot count must be positive");
    ShotTable t;
    t.n_qubits = state.n_qubits;
    t.n_shots = n_shots;
    t.basis = qubitwise_union(group, state.n_qubits);

    Statevector rotated = state;
    apply_circuit(rotated, basis_change_circuit(t.basis, state.n_qubits));
    for (int s = 0; s < n_shots; ++s) ++t.counts[draw_outcome(rotated, rng)];
    return t;
}

ShotTable sample_shots_noisy(std::uint64_t init_bits, const Circuit& prep,
                             const std::vector<PauliString>& group, int n_shots,
                             const NoiseModel& noise, common::Rng& rng) {
    if (n_shots <= 0) throw ContractError("sample_shots: shot count must be positive");
    const int nq = prep.n_qubits();
    ShotTable t;
    t.n_qubits = nq;
    t.n_shots = n_shots;
    t.basis = qubitwise_union(group, nq);
    const Circuit rotate = basis_change_circuit(t.basis, nq);

    for (int s = 0; s < n_shots; ++s) {
        Statevector psi = Statevector::basis_state(nq, init_bits);
        apply_circuit_noisy(psi, prep, noise, rng);
        apply_circuit_noisy(psi, rotate, noise, rng);
        const std::uint64_t raw = draw_outcome(psi, rng);
        ++t.counts[apply_readout_noise(raw, nq, noise, rng)];
    }
    return t;
}

namespace {

double parity_sum_counts(const ShotTable& t, std::uint64_t support) {
    double acc = 0.0;
    for (const auto& [bits, n] : t.counts)
        acc += (std::popcount(bits & support) & 1) ? -static_cast<double>(n)
                                                   : static_cast<double>(n);
    return acc;
}

}  // namespace

double estimate_group(const MeasurementGroup& g, const ShotTable& t) {
    const int total = t.total_counts();
    if (total == 0) throw ContractError("estimate_group: no counts to estimate from");
    double e = 0.0;
    for (const auto& term : g.terms)
        e += term.coeff * parity_sum_counts(t, term.string.support()) / total;
    return e;
}

double estimate_group(const MeasurementGroup& g, const std::vector<double>& probs) {
    double e = 0.0;
    for (const auto& term : g.terms) {
        const std::uint64_t support = term.string.support();
        double exp_val = 0.0;
        for (std::uint64_t k = 0; k < probs.size(); ++k)
            exp_val += (std::popcount(k & support) & 1) ? -probs[k] : probs[k];
        e += term.coeff * exp_val;
    }
    return e;
}

double estimate_energy(const GroupedObservable& obs, const std::vector<ShotTable>& tables) {
    if (tables.size() != obs.groups.size())
        throw ContractError("estimate_energy: one table per group required");
    double e = obs.identity;
    for (std::size_t i = 0; i < tables.size(); ++i) e += estimate_group(obs.groups[i], tables[i]);
    return e;
}

namespace {

std::vector<PauliString> member_strings(const MeasurementGroup& g) {
    std::vector<PauliString> out;
    out.reserve(g.terms.size());
    for (const auto& t : g.terms) out.push_back(t.string);
    return out;
}

}  // namespace

std::vector<ShotTable> sample_grouped(const GroupedObservable& obs, const Statevector& state,
                                      int n_shots, common::Rng& rng) {
    std::vector<ShotTable> tables;
    tables.reserve(obs.groups.size());
    for (const auto& g : obs.groups)
        tables.push_back(sample_shots(state, member_strings(g), n_shots, rng));
    return tables;
}

std::vector<ShotTable> sample_grouped_noisy(const GroupedObservable& obs,
                                            std::uint64_t init_bits, const Circuit& prep,
                                            int n_shots, const NoiseModel& noise,
                                            common::Rng& rng) {
    std::vector<ShotTable> tables;
    tables.reserve(obs.groups.size());
    for (const auto& g : obs.groups)
        tables.push_back(
            sample_shots_noisy(init_bits, prep, member_strings(g), n_shots, noise, rng));
    return tables;
}

std::string bits_to_string(std::uint64_t bits, int n_qubits) {
    std::string s(static_cast<std::size_t>(n_qubits), '0');
    for (int q = 0; q < n_qubits; ++q)
        if ((bits >> q) & 1) s[static_cast<std::size_t>(n_qubits - 1 - q)] = '1';
    return s;
}

nlohmann::json shot_table_to_json(const ShotTable& t) {
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [bits, n] : t.counts) counts[bits_to_string(bits, t.n_qubits)] = n;
    return {{"n_qubits", t.n_qubits},
            {"n_shots", t.n_shots},
            {"basis_x", t.basis.x},
            {"basis_z", t.basis.z},
            {"counts", counts}};
}

ShotTable shot_table_from_json(const nlohmann::json& j) {
    ShotTable t;
    t.n_qubits = j.at("n_qubits").get<int>();
    t.n_shots = j.at("n_shots").get<int>();
    t.basis.x = j.at("basis_x").get<std::uint64_t>();
    t.basis.z = j.at("basis_z").get<std::uint64_t>();
    for (const auto& [key, val] : j.at("counts").items()) {
        std::uint64_t bits = 0;
        if (key.size() != static_cast<std::size_t>(t.n_qubits))
            throw ParseError("shot table: outcome key width mismatch");
        for (int q = 0; q < t.n_qubits; ++q) {
            const char c = key[static_cast<std::size_t>(t.n_qubits - 1 - q)];
            if (c == '1') {
                bits |= 1ULL << q;
            } else if (c != '0') {
                throw ParseError("shot table: outcome key must be binary");
            }
        }
        t.counts[bits] = val.get<int>();
    }
    return t;
}

}  // namespace qdmet::qsim
