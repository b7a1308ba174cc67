// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qdmet/qsim/pauli.hpp"
#include "qdmet/qsim/statevector.hpp"
#include "qdmet/vqe/uccsd.hpp"

namespace qdmet::vqe {

struct VqeOptions {
    int max_iter = 200;
    double grad_tol = 1e-8;  // infinity norm of the gradient
    double armijo_c1 = 1e-4;
    int max_halvings = 40;
};

struct VqeResult {
    double energy = 0.0;
    Eigen::VectorXd theta;
    int n_iterations = 0;
    bool converged = false;
    std::vector<double> history;  // energy after every accepted step
};

/// The variational state for fixed parameters.
qsim::Statevector uccsd_state(const UccsdAnsatz& ansatz, const Eigen::VectorXd& theta);

/// E(theta) = <ref| U(theta)+ H U(theta) |ref>.
double vqe_energy(const qsim::PauliSum& ham, const UccsdAnsatz& ansatz,
                  const Eigen::VectorXd& theta);

/// Energy plus the exact gradient of the trotterised ansatz from one
/// reverse sweep over the rotation factors (adjoint method); cost is two
/// state propagations regardless of the parameter count.
double vqe_energy_gradient(const qsim::PauliSum& ham, const UccsdAnsatz& ansatz,
                           const Eigen::VectorXd& theta, Eigen::VectorXd& grad);

/// BFGS with Armijo backtracking from theta0. Non-convergence is reported
/// through the flag, not an exception, so callers can decide what a
/// marginal optimisation is worth.
VqeResult run_vqe(const qsim::PauliSum& ham, const UccsdAnsatz& ansatz,
                  const Eigen::VectorXd& theta0, const VqeOptions& opts = {});

}  // namespace qdmet::vqe
