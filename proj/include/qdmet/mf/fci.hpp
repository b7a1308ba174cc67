// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "qdmet/common/tensor4.hpp"

namespace qdmet::mf {

struct FciOptions {
    std::size_t max_determinants = 1'000'000;
};

/// Exact diagonalisation result. RDM conventions (spin summed):
///   rdm1(p,q)      = sum_s  < a+_{ps} a_{qs} >
///   rdm2(p,q,r,s)  = sum_st < a+_{ps} a+_{rt} a_{st} a_{qs} >   (chemist pairing)
/// so that E = sum h_pq rdm1_pq + 1/2 sum (pq|rs) rdm2_pqrs + e_const,
/// tr rdm1 = N and sum_{pr} rdm2_pprr = N(N-1).
struct FciResult {
    double energy = 0.0;
    Eigen::VectorXd ci;
    Eigen::MatrixXd rdm1;
    Tensor4 rdm2;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> dets;  // (alpha, beta) masks
};

/// Dense full CI in a given orbital basis. h and V are the one- and
/// two-electron integrals (chemist notation) over n spatial orbitals.
/// Throws CapacityError when the determinant space exceeds the option cap.
FciResult run_fci(const Eigen::MatrixXd& h, const Tensor4& V, double e_const, int n_alpha,
                  int n_beta, const FciOptions& opts = {});

}  // namespace qdmet::mf
