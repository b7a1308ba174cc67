// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qdmet/common/tensor4.hpp"

namespace qdmet::mf {

struct Mp2Result {
    double e_corr = 0.0;  // second order correlation energy, always <= 0
    int n_occ = 0;
    int n_virt = 0;
    /// t2[((i*n_occ + j)*n_virt + a)*n_virt + b] = (ia|jb) / (e_i+e_j-e_a-e_b),
    /// the first order doubles amplitudes; reused to seed the UCCSD optimiser.
    std::vector<double> t2;

    double t2_at(int i, int j, int a, int b) const {
        return t2[static_cast<std::size_t>(((i * n_occ + j) * n_virt + a) * n_virt + b)];
    }
};

/// Closed-shell MP2 on top of converged RHF orbitals. C and eps come from
/// the SCF solution, eri is in the same basis C refers to. Throws
/// ConditioningError when an occupied-virtual gap is degenerate.
Mp2Result run_mp2(const Eigen::MatrixXd& C, const Eigen::VectorXd& eps, const Tensor4& eri,
                  int n_electrons);

}  // namespace qdmet::mf
