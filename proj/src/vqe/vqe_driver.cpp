// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/vqe/vqe_driver.hpp"

#include <cmath>
#include <complex>
#include <cstdint>

#include "qdmet/common/error.hpp"

namespace qdmet::vqe {

namespace {

using qsim::Gate;
using qsim::PauliString;
using qsim::Statevector;
using cd = std::complex<double>;

struct FlatFactor {
    PauliString string;
    double angle = 0.0;  // exp(-i angle/2 P)
    double weight = 0.0;
    int param = 0;
};

std::vector<FlatFactor> flatten(const UccsdAnsatz& a, const Eigen::VectorXd& theta) {
    if (theta.size() != a.n_parameters())
        throw ContractError("vqe: parameter count does not match the ansatz");
    std::vector<FlatFactor> flat;
    for (int k = 0; k < a.n_parameters(); ++k)
        for (const auto& f : a.generators[static_cast<std::size_t>(k)].factors)
            flat.push_back({f.string, -2.0 * theta[k] * f.weight, f.weight, k});
    return flat;
}

cd dot(const Statevector& x, const Statevector& y) {
    cd acc(0.0, 0.0);
    for (std::size_t k = 0; k < x.amp.size(); ++k) acc += std::conj(x.amp[k]) * y.amp[k];
    return acc;
}

}  // namespace

Statevector uccsd_state(const UccsdAnsatz& ansatz, const Eigen::VectorXd& theta) {
    Statevector psi = Statevector::basis_state(ansatz.n_qubits, ansatz.reference_bits);
    apply_circuit(psi, trotter_circuit(ansatz, theta));
    return psi;
}

double vqe_energy(const qsim::PauliSum& ham, const UccsdAnsatz& ansatz,
                  const Eigen::VectorXd& theta) {
    return expectation(uccsd_state(ansatz, theta), ham);
}

double vqe_energy_gradient(const qsim::PauliSum& ham, const UccsdAnsatz& ansatz,
                           const Eigen::VectorXd& theta, Eigen::VectorXd& grad) {
    const auto flat = flatten(ansatz, theta);
    grad = Eigen::VectorXd::Zero(ansatz.n_parameters());

    Statevector psi = Statevector::basis_state(ansatz.n_qubits, ansatz.reference_bits);
    for (const auto& f : flat)
        apply_gate(psi, Gate{Gate::Kind::PauliExp, 0, -1, f.angle, f.string});

    Statevector b = apply_observable(psi, ham);  // <b| tracks <psi| H U ... U
    const double energy = dot(psi, b).real();

    // Reverse sweep: with psi_m the state after factor m and b_m the
    // back-propagated costate, dE/dangle_m = Im <b_m|P_m|psi_m> and
    // dangle/dtheta = -2 w.
    for (std::size_t m = flat.size(); m-- > 0;) {
        Statevector p_psi = psi;
        apply_pauli(p_psi, flat[m].string);
        grad[flat[m].param] += -2.0 * flat[m].weight * dot(b, p_psi).imag();

        const Gate inverse{Gate::Kind::PauliExp, 0, -1, -flat[m].angle, flat[m].string};
        apply_gate(psi, inverse);
        apply_gate(b, inverse);
    }
    return energy;
}

VqeResult run_vqe(const qsim::PauliSum& ham, const UccsdAnsatz& ansatz,
                  const Eigen::VectorXd& theta0, const VqeOptions& opts) {
    const int n = ansatz.n_parameters();
    VqeResult res;
    res.theta = theta0;

    if (n == 0) {  // nothing to vary: the reference is the state
        res.energy = expectation(
            Statevector::basis_state(ansatz.n_qubits, ansatz.reference_bits), ham);
        res.converged = true;
        res.history.push_back(res.energy);
        return res;
    }

    Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd g(n), g_next(n);
    double e = vqe_energy_gradient(ham, ansatz, res.theta, g);
    res.history.push_back(e);

    for (int it = 0; it < opts.max_iter; ++it) {
        if (g.lpNorm<Eigen::Infinity>() < opts.grad_tol) {
            res.converged = true;
            break;
        }

        Eigen::VectorXd p = -h_inv * g;
        double slope = g.dot(p);
        if (slope >= 0.0) {  // curvature estimate went bad; restart steepest
            h_inv.setIdentity();
            p = -g;
            slope = g.dot(p);
        }

        double alpha = 1.0;
        double e_next = e;
        bool decreased = false;
        for (int half = 0; half < opts.max_halvings; ++half) {
            e_next = vqe_energy(ham, ansatz, res.theta + alpha * p);
            if (e_next <= e + opts.armijo_c1 * alpha * slope) {
                decreased = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!decreased) break;  // line search exhausted at this accuracy

        const Eigen::VectorXd s = alpha * p;
        res.theta += s;
        e_next = vqe_energy_gradient(ham, ansatz, res.theta, g_next);
        const Eigen::VectorXd y = g_next - g;
        const double sy = s.dot(y);
        if (sy > 1e-12) {
            const Eigen::VectorXd hy = h_inv * y;
            const double yhy = y.dot(hy);
            h_inv += ((sy + yhy) / (sy * sy)) * (s * s.transpose()) -
                     (hy * s.transpose() + s * hy.transpose()) / sy;
        }
        g = g_next;
        e = e_next;
        res.history.push_back(e);
        res.n_iterations = it + 1;
    }

    // max_iter exhaustion leaves converged false unless the final gradient
    // happens to satisfy the tolerance.
    if (!res.converged) res.converged = g.lpNorm<Eigen::Infinity>() < opts.grad_tol;
    res.energy = e;
    return res;
}

}  // namespace qdmet::vqe
