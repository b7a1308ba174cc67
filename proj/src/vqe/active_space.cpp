// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/vqe/active_space.hpp"

#include "qdmet/common/error.hpp"
#include "qdmet/dmet/fragment_solver.hpp"

namespace qdmet::vqe {

std::vector<int> ActiveSpace::active_indices() const {
    std::vector<int> idx = active_occ;
    idx.insert(idx.end(), active_virt.begin(), active_virt.end());
    return idx;
}

ActiveSpace select_active_space(int n_orb, int n_elec, int n_occ_active, int n_virt_active) {
    if (n_elec % 2 != 0) throw ContractError("active space: even electron count required");
    const int n_occ = n_elec / 2;
    const int n_virt = n_orb - n_occ;
    if (n_occ_active < 0 || n_virt_active < 0 || n_occ_active > n_occ ||
        n_virt_active > n_virt) {
        throw ContractError("active space request (" + std::to_string(n_occ_active) + " occ, " +
                            std::to_string(n_virt_active) + " virt) exceeds available (" +
                            std::to_string(n_occ) + " occ, " + std::to_string(n_virt) +
                            " virt)");
    }
    ActiveSpace s;
    for (int i = 0; i < n_occ - n_occ_active; ++i) s.frozen_occ.push_back(i);
    for (int i = n_occ - n_occ_active; i < n_occ; ++i) s.active_occ.push_back(i);
    for (int a = n_occ; a < n_occ + n_virt_active; ++a) s.active_virt.push_back(a);
    for (int a = n_occ + n_virt_active; a < n_orb; ++a) s.frozen_virt.push_back(a);
    return s;
}

ActiveSpace select_active_space(int n_orb, int n_elec, int n_active) {
    // Even counts split evenly; an odd count gives the extra orbital to the
    // virtual side.
    const int n_occ_active = n_active / 2;
    const int n_virt_active = n_active - n_occ_active;
    return select_active_space(n_orb, n_elec, n_occ_active, n_virt_active);
}

ActiveSpace active_space_from_qubits(int n_orb, int n_elec, int n_qubits) {
    if (n_qubits % 2 != 0) throw ContractError("qubit count must be even (2 per orbital)");
    return select_active_space(n_orb, n_elec, n_qubits / 2);
}

FoldedProblem fold_frozen_core(const Eigen::MatrixXd& h_mo, const Tensor4& eri_mo,
                               const ActiveSpace& space) {
    const int n = static_cast<int>(h_mo.rows());
    FoldedProblem out;
    out.d_core = Eigen::MatrixXd::Zero(n, n);
    for (int c : space.frozen_occ) out.d_core(c, c) = 2.0;

    // Mean field of the core, spin summed: J - K/2.
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            double v = 0.0;
            for (int c : space.frozen_occ) {
                v += 2.0 * eri_mo(static_cast<std::size_t>(p), static_cast<std::size_t>(q),
                                  static_cast<std::size_t>(c), static_cast<std::size_t>(c)) -
                     eri_mo(static_cast<std::size_t>(p), static_cast<std::size_t>(c),
                            static_cast<std::size_t>(c), static_cast<std::size_t>(q));
            }
            g(p, q) = v;
        }

    out.e_frozen = ((h_mo + 0.5 * g).array() * out.d_core.array()).sum();

    const std::vector<int> act = space.active_indices();
    const int na = static_cast<int>(act.size());
    out.h.resize(na, na);
    out.eri = Tensor4(static_cast<std::size_t>(na));
    for (int p = 0; p < na; ++p)
        for (int q = 0; q < na; ++q) {
            out.h(p, q) = h_mo(act[static_cast<std::size_t>(p)], act[static_cast<std::size_t>(q)]) +
                          g(act[static_cast<std::size_t>(p)], act[static_cast<std::size_t>(q)]);
            for (int r = 0; r < na; ++r)
                for (int s = 0; s < na; ++s)
                    out.eri(static_cast<std::size_t>(p), static_cast<std::size_t>(q),
                            static_cast<std::size_t>(r), static_cast<std::size_t>(s)) =
                        eri_mo(static_cast<std::size_t>(act[static_cast<std::size_t>(p)]),
                               static_cast<std::size_t>(act[static_cast<std::size_t>(q)]),
                               static_cast<std::size_t>(act[static_cast<std::size_t>(r)]),
                               static_cast<std::size_t>(act[static_cast<std::size_t>(s)]));
        }
    return out;
}

void assemble_rdms(const ActiveSpace& space, const Eigen::MatrixXd& rdm1_active,
                   const Tensor4& rdm2_active, Eigen::MatrixXd& rdm1_mo, Tensor4& rdm2_mo) {
    const std::vector<int> act = space.active_indices();
    const int na = static_cast<int>(act.size());
    const int n = na + static_cast<int>(space.frozen_occ.size() + space.frozen_virt.size());

    Eigen::MatrixXd d_core = Eigen::MatrixXd::Zero(n, n);
    for (int c : space.frozen_occ) d_core(c, c) = 2.0;

    Eigen::MatrixXd d_act = Eigen::MatrixXd::Zero(n, n);
    for (int p = 0; p < na; ++p)
        for (int q = 0; q < na; ++q)
            d_act(act[static_cast<std::size_t>(p)], act[static_cast<std::size_t>(q)]) =
                rdm1_active(p, q);

    rdm1_mo = d_core + d_act;

    // Factorized(core + active 1-RDM) - factorized(active 1-RDM) gives the
    // core-core and core-active mean-field blocks; the genuine active
    // two-body correlations ride on top.
    rdm2_mo = dmet::factorized_rdm2(rdm1_mo);
    const Tensor4 fact_act = dmet::factorized_rdm2(d_act);
    for (std::size_t i = 0; i < rdm2_mo.raw().size(); ++i) rdm2_mo.raw()[i] -= fact_act.raw()[i];
    for (int p = 0; p < na; ++p)
        for (int q = 0; q < na; ++q)
            for (int r = 0; r < na; ++r)
                for (int s = 0; s < na; ++s)
                    rdm2_mo(static_cast<std::size_t>(act[static_cast<std::size_t>(p)]),
                            static_cast<std::size_t>(act[static_cast<std::size_t>(q)]),
                            static_cast<std::size_t>(act[static_cast<std::size_t>(r)]),
                            static_cast<std::size_t>(act[static_cast<std::size_t>(s)])) +=
                        rdm2_active(static_cast<std::size_t>(p), static_cast<std::size_t>(q),
                                    static_cast<std::size_t>(r), static_cast<std::size_t>(s));
}

}  // namespace qdmet::vqe
