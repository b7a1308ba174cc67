// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <Eigen/Dense>
#include <vector>

namespace qdmet::dmet {

/// Schmidt decomposition of an idempotent-like mean-field density around one
/// fragment. The embedding space is fragment orbitals plus the fractionally
/// occupied environment eigenvectors (bath); the fully occupied remainder
/// becomes the static environment density.
struct SchmidtBath {
    Eigen::MatrixXd projection;  // n_lo x n_emb, orthonormal columns; fragment first
    Eigen::MatrixXd d_env;       // env core density in the localized basis
    int n_frag = 0;
    int n_bath = 0;
    int n_elec_emb = 0;            // rounded even electron count in the embedding space
    double occupancy_deviation = 0.0;  // |raw count - rounded count|
    std::vector<double> bath_occupations;  // environment eigenvalues kept as bath
};

/// Diagonalises the environment block of d_lo. Eigenvectors with occupation
/// in (eps, 2 - eps) become bath orbitals; occupation >= 2 - eps goes to the
/// core density. Throws FragmentationError when the projected electron count
/// is further than 0.1 from an even integer.
SchmidtBath schmidt_bath(const Eigen::MatrixXd& d_lo, const std::vector<int>& fragment,
                         double eps = 1e-10);

}  // namespace qdmet::dmet
