// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/mf/rhf.hpp"

#include <cmath>
#include <deque>

#include "qdmet/common/error.hpp"

namespace qdmet::mf {

namespace {

// Pulay DIIS over Fock matrices with commutator errors.
class Diis {
public:
    explicit Diis(int depth) : depth_(depth) {}

    void push(const Eigen::MatrixXd& fock, const Eigen::MatrixXd& err) {
        focks_.push_back(fock);
        errs_.push_back(err);
        if (static_cast<int>(focks_.size()) > depth_) {
            focks_.pop_front();
            errs_.pop_front();
        }
    }

    // Extrapolated Fock matrix; falls back to the latest one while the
    // history is too short or the B system is singular.
    Eigen::MatrixXd extrapolate() const {
        const int m = static_cast<int>(focks_.size());
        if (m < 2) return focks_.back();
        Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m + 1, m + 1);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                B(i, j) = (errs_[static_cast<std::size_t>(i)].array() *
                           errs_[static_cast<std::size_t>(j)].array())
                              .sum();
            }
            B(i, m) = B(m, i) = -1.0;
        }
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
        rhs(m) = -1.0;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
        if (!lu.isInvertible()) return focks_.back();
        const Eigen::VectorXd c = lu.solve(rhs);
        Eigen::MatrixXd f = Eigen::MatrixXd::Zero(focks_.back().rows(), focks_.back().cols());
        for (int i = 0; i < m; ++i) f += c(i) * focks_[static_cast<std::size_t>(i)];
        return f;
    }

private:
    int depth_;
    std::deque<Eigen::MatrixXd> focks_;
    std::deque<Eigen::MatrixXd> errs_;
};

}  // namespace

Eigen::MatrixXd coulomb_matrix(const Tensor4& eri, const Eigen::MatrixXd& D) {
    const auto n = eri.dim();
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            double s = 0.0;
            for (std::size_t l = 0; l < n; ++l)
                for (std::size_t g = 0; g < n; ++g)
                    s += eri(u, v, l, g) * D(static_cast<Eigen::Index>(l),
                                             static_cast<Eigen::Index>(g));
            J(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) = s;
        }
    return J;
}

Eigen::MatrixXd exchange_matrix(const Tensor4& eri, const Eigen::MatrixXd& D) {
    const auto n = eri.dim();
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            double s = 0.0;
            for (std::size_t l = 0; l < n; ++l)
                for (std::size_t g = 0; g < n; ++g)
                    s += eri(u, l, g, v) * D(static_cast<Eigen::Index>(l),
                                             static_cast<Eigen::Index>(g));
            K(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) = s;
        }
    return K;
}

Eigen::MatrixXd build_fock(const Eigen::MatrixXd& h, const Tensor4& eri,
                           const Eigen::MatrixXd& D) {
    return h + coulomb_matrix(eri, D) - 0.5 * exchange_matrix(eri, D);
}

RhfResult run_rhf(const Eigen::MatrixXd& h, const Tensor4& eri, const Eigen::MatrixXd& S,
                  double e_const, int n_electrons, const RhfOptions& opts) {
    if (n_electrons <= 0 || n_electrons % 2 != 0) {
        throw ContractError("RHF needs a positive even electron count, got " +
                            std::to_string(n_electrons));
    }
    const int n = static_cast<int>(h.rows());
    const int n_occ = n_electrons / 2;
    if (n_occ > n) throw ContractError("RHF: more electron pairs than orbitals");

    // Orthogonalising transform X = S^{-1/2}.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_s(S);
    if (es_s.eigenvalues().minCoeff() < 1e-10) {
        throw ConditioningError("RHF: overlap matrix near singular");
    }
    const Eigen::MatrixXd X = es_s.operatorInverseSqrt();

    auto solve_fock = [&](const Eigen::MatrixXd& F, Eigen::MatrixXd& C, Eigen::VectorXd& eps) {
        const Eigen::MatrixXd Fp = X.transpose() * F * X;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Fp);
        eps = es.eigenvalues();
        C = X * es.eigenvectors();
    };

    RhfResult res;
    Eigen::MatrixXd F = h;  // core guess
    solve_fock(F, res.C, res.eps);
    Eigen::MatrixXd D = 2.0 * res.C.leftCols(n_occ) * res.C.leftCols(n_occ).transpose();

    Diis diis(opts.diis_depth);
    double e_prev = 0.0;
    for (int it = 1; it <= opts.max_iter; ++it) {
        F = build_fock(h, eri, D);
        const double e_elec = 0.5 * (D.array() * (h + F).array()).sum();
        const Eigen::MatrixXd err = F * D * S - S * D * F;
        const double err_norm = err.norm();
        const double de = std::abs(e_elec - e_prev);

        res.n_iter = it;
        res.e_elec = e_elec;
        if (it > 1 && de < opts.conv_energy && err_norm < opts.conv_error) {
            res.converged = true;
            res.F = F;
            res.D = D;
            solve_fock(F, res.C, res.eps);
            res.e_total = res.e_elec + e_const;
            return res;
        }
        e_prev = e_elec;

        diis.push(F, err);
        const Eigen::MatrixXd F_use = diis.extrapolate();
        solve_fock(F_use, res.C, res.eps);
        D = 2.0 * res.C.leftCols(n_occ) * res.C.leftCols(n_occ).transpose();
    }
    throw ConditioningError("RHF did not converge in " + std::to_string(opts.max_iter) +
                            " iterations (last dE " + std::to_string(res.e_elec - e_prev) + ")");
}

RhfResult run_rhf(const chem::Integrals& ints, int n_electrons, const RhfOptions& opts) {
    return run_rhf(ints.h_core, ints.eri, ints.overlap, ints.e_nuc, n_electrons, opts);
}

}  // namespace qdmet::mf
