// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/mf/mp2.hpp"

#include <cmath>

#include "qdmet/common/error.hpp"
#include "qdmet/mf/lowdin.hpp"

namespace qdmet::mf {

Mp2Result run_mp2(const Eigen::MatrixXd& C, const Eigen::VectorXd& eps, const Tensor4& eri,
                  int n_electrons) {
    if (n_electrons % 2 != 0) throw ContractError("MP2: even electron count required");
    const int n = static_cast<int>(C.cols());
    const int no = n_electrons / 2;
    const int nv = n - no;
    Mp2Result res;
    res.n_occ = no;
    res.n_virt = nv;
    if (nv == 0) return res;  // nothing to correlate

    const Tensor4 mo = transform_eri(eri, C);

    res.t2.assign(static_cast<std::size_t>(no) * no * nv * nv, 0.0);
    double e2 = 0.0;
    for (int i = 0; i < no; ++i)
        for (int j = 0; j < no; ++j)
            for (int a = 0; a < nv; ++a)
                for (int b = 0; b < nv; ++b) {
                    const double denom = eps(i) + eps(j) - eps(no + a) - eps(no + b);
                    if (std::abs(denom) < 1e-8) {
                        throw ConditioningError(
                            "MP2: degenerate occupied-virtual gap, denominator " +
                            std::to_string(denom));
                    }
                    const double iajb = mo(static_cast<std::size_t>(i),
                                           static_cast<std::size_t>(no + a),
                                           static_cast<std::size_t>(j),
                                           static_cast<std::size_t>(no + b));
                    const double ibja = mo(static_cast<std::size_t>(i),
                                           static_cast<std::size_t>(no + b),
                                           static_cast<std::size_t>(j),
                                           static_cast<std::size_t>(no + a));
                    const double t = iajb / denom;
                    res.t2[static_cast<std::size_t>(((i * no + j) * nv + a) * nv + b)] = t;
                    e2 += t * (2.0 * iajb - ibja);
                }
    res.e_corr = e2;
    return res;
}

}  // namespace qdmet::mf
