// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/dmet/bath.hpp"

#include <algorithm>
#include <cmath>

#include "qdmet/common/error.hpp"

namespace qdmet::dmet {

SchmidtBath schmidt_bath(const Eigen::MatrixXd& d_lo, const std::vector<int>& fragment,
                         double eps) {
    const int n = static_cast<int>(d_lo.rows());
    std::vector<bool> in_frag(static_cast<std::size_t>(n), false);
    for (int i : fragment) {
        if (i < 0 || i >= n) throw FragmentationError("fragment orbital index out of range");
        if (in_frag[static_cast<std::size_t>(i)]) {
            throw FragmentationError("fragment lists orbital " + std::to_string(i) + " twice");
        }
        in_frag[static_cast<std::size_t>(i)] = true;
    }
    std::vector<int> env;
    for (int i = 0; i < n; ++i) {
        if (!in_frag[static_cast<std::size_t>(i)]) env.push_back(i);
    }

    SchmidtBath out;
    out.n_frag = static_cast<int>(fragment.size());

    const int ne = static_cast<int>(env.size());
    Eigen::MatrixXd dee(ne, ne);
    for (int a = 0; a < ne; ++a)
        for (int b = 0; b < ne; ++b)
            dee(a, b) = d_lo(env[static_cast<std::size_t>(a)], env[static_cast<std::size_t>(b)]);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    if (ne > 0) es.compute(dee);  // a whole-molecule fragment has no environment

    out.d_env = Eigen::MatrixXd::Zero(n, n);
    std::vector<Eigen::VectorXd> bath_cols;
    double n_core = 0.0;
    for (int k = 0; k < ne; ++k) {
        const double occ = es.eigenvalues()(k);
        if (occ > eps && occ < 2.0 - eps) {
            Eigen::VectorXd full = Eigen::VectorXd::Zero(n);
            for (int a = 0; a < ne; ++a) full(env[static_cast<std::size_t>(a)]) = es.eigenvectors()(a, k);
            bath_cols.push_back(full);
            out.bath_occupations.push_back(occ);
        } else if (occ >= 2.0 - eps) {
            Eigen::VectorXd full = Eigen::VectorXd::Zero(n);
            for (int a = 0; a < ne; ++a) full(env[static_cast<std::size_t>(a)]) = es.eigenvectors()(a, k);
            out.d_env += occ * full * full.transpose();
            n_core += occ;
        }
        // occupations <= eps are empty environment orbitals and are dropped
    }
    out.n_bath = static_cast<int>(bath_cols.size());

    const int n_emb = out.n_frag + out.n_bath;
    out.projection = Eigen::MatrixXd::Zero(n, n_emb);
    for (int c = 0; c < out.n_frag; ++c) out.projection(fragment[static_cast<std::size_t>(c)], c) = 1.0;
    for (int c = 0; c < out.n_bath; ++c) out.projection.col(out.n_frag + c) = bath_cols[static_cast<std::size_t>(c)];

    // Electron count inside the embedding space.
    const Eigen::MatrixXd d_emb = out.projection.transpose() * d_lo * out.projection;
    const double raw = d_emb.trace();
    const int rounded = 2 * static_cast<int>(std::lround(raw / 2.0));
    out.occupancy_deviation = std::abs(raw - rounded);
    if (out.occupancy_deviation > 0.1) {
        throw FragmentationError(
            "embedding electron count " + std::to_string(raw) + " is " +
            std::to_string(out.occupancy_deviation) + " away from the nearest even integer; " +
            "the fragment choice does not give a closed-shell embedding");
    }
    out.n_elec_emb = rounded;
    return out;
}

}  // namespace qdmet::dmet
