// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/dmet/embedding.hpp"

#include "qdmet/common/error.hpp"
#include "qdmet/mf/lowdin.hpp"
#include "qdmet/mf/rhf.hpp"

namespace qdmet::dmet {

EmbeddingProblem build_embedding(const Eigen::MatrixXd& h_lo, const Tensor4& eri_lo,
                                 const SchmidtBath& bath, const std::vector<int>& fragment) {
    if (static_cast<int>(fragment.size()) != bath.n_frag) {
        throw ContractError("build_embedding: fragment size does not match bath");
    }
    const Eigen::MatrixXd& P = bath.projection;

    EmbeddingProblem out;
    out.n_frag = bath.n_frag;
    out.n_bath = bath.n_bath;
    out.n_elec = bath.n_elec_emb;

    // Spin-summed environment mean field: J - K/2 of the core density.
    const Eigen::MatrixXd g_env = mf::coulomb_matrix(eri_lo, bath.d_env) -
                                  0.5 * mf::exchange_matrix(eri_lo, bath.d_env);
    out.v_env = P.transpose() * g_env * P;
    out.h_emb = P.transpose() * h_lo * P + out.v_env;
    out.eri = mf::transform_eri(eri_lo, P);
    out.e_core = (h_lo.array() * bath.d_env.array()).sum() +
                 0.5 * (g_env.array() * bath.d_env.array()).sum();

    out.frag_index_map.assign(static_cast<std::size_t>(out.n_orb()), -1);
    for (int i = 0; i < out.n_frag; ++i) {
        out.frag_index_map[static_cast<std::size_t>(i)] = fragment[static_cast<std::size_t>(i)];
    }
    return out;
}

}  // namespace qdmet::dmet
