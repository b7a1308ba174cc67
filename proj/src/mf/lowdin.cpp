// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/mf/lowdin.hpp"

#include "qdmet/common/error.hpp"

namespace qdmet::mf {

Eigen::MatrixXd inverse_sqrt(const Eigen::MatrixXd& S, double eps) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    if (es.eigenvalues().minCoeff() < eps) {
        throw ConditioningError("inverse_sqrt: matrix eigenvalue below " + std::to_string(eps));
    }
    return es.operatorInverseSqrt();
}

Eigen::MatrixXd transform_one(const Eigen::MatrixXd& M, const Eigen::MatrixXd& C) {
    return C.transpose() * M * C;
}

Tensor4 transform_eri(const Tensor4& eri, const Eigen::MatrixXd& C) {
    const std::size_t n = eri.dim();
    if (static_cast<std::size_t>(C.rows()) != n) {
        throw ContractError("transform_eri: row count does not match tensor dimension");
    }
    const std::size_t m = static_cast<std::size_t>(C.cols());

    // Four quarter transforms, one index at a time. Generic strides keep a
    // single kernel: at each stage the transformed index moves to the back.
    std::vector<double> cur = eri.raw();
    std::vector<std::size_t> dims = {n, n, n, n};
    for (int stage = 0; stage < 4; ++stage) {
        const std::size_t rest = dims[1] * dims[2] * dims[3];
        std::vector<double> next(rest * m, 0.0);
        // cur laid out as [i0][rest]; contract i0 with C and rotate axes:
        // next[rest][p] so after four stages the original order is restored.
        for (std::size_t i0 = 0; i0 < dims[0]; ++i0) {
            for (std::size_t p = 0; p < m; ++p) {
                const double c = C(static_cast<Eigen::Index>(i0), static_cast<Eigen::Index>(p));
                if (c == 0.0) continue;
                const double* src = cur.data() + i0 * rest;
                double* dst = next.data() + p;
                for (std::size_t r = 0; r < rest; ++r) dst[r * m] += c * src[r];
            }
        }
        cur = std::move(next);
        dims = {dims[1], dims[2], dims[3], m};
    }

    Tensor4 out(m);
    out.raw() = std::move(cur);
    return out;
}

OrthoBasis lowdin_orthogonalize(const chem::Integrals& ints) {
    OrthoBasis ob;
    ob.x = inverse_sqrt(ints.overlap);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ints.overlap);
    ob.x_inv = es.operatorSqrt();
    ob.h = transform_one(ints.h_core, ob.x);
    ob.eri = transform_eri(ints.eri, ob.x);
    ob.e_const = ints.e_nuc;
    return ob;
}

}  // namespace qdmet::mf
