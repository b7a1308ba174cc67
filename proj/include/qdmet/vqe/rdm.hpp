// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <Eigen/Dense>

#include "qdmet/common/tensor4.hpp"
#include "qdmet/qsim/statevector.hpp"

namespace qdmet::vqe {

struct MeasuredRdms {
    Eigen::MatrixXd rdm1;  // spin-summed, spatial indices
    Tensor4 rdm2;          // Gamma_pqrs = sum <a+_p a+_r a_s a_q>, chemist pairing
};

/// Spin-summed density matrices from operator expectations on a simulated
/// state with interleaved spin orbitals (2 n_spatial qubits). Imaginary
/// residues above 1e-10 raise ContractError; the states this is used on
/// are real.
MeasuredRdms measure_rdms(const qsim::Statevector& psi, int n_spatial);

}  // namespace qdmet::vqe
