// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/vqe/rdm.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "qdmet/common/error.hpp"
#include "qdmet/qsim/jordan_wigner.hpp"

namespace qdmet::vqe {

namespace {

double real_part(std::complex<double> z, const char* what) {
    if (std::abs(z.imag()) > 1e-10)
        throw ContractError(std::string("measure_rdms: imaginary residue in ") + what);
    return z.real();
}

}  // namespace

MeasuredRdms measure_rdms(const qsim::Statevector& psi, int n_spatial) {
    const int nq = 2 * n_spatial;
    if (psi.n_qubits != nq) throw ContractError("measure_rdms: register width mismatch");

    std::vector<qsim::PauliOp> up, down;
    up.reserve(nq);
    down.reserve(nq);
    for (int so = 0; so < nq; ++so) {
        down.push_back(qsim::jw_lowering(so, nq));
        up.push_back(qsim::jw_raising(so, nq));
    }

    MeasuredRdms out;
    out.rdm1 = Eigen::MatrixXd::Zero(n_spatial, n_spatial);
    out.rdm2 = Tensor4(static_cast<std::size_t>(n_spatial));

    for (int p = 0; p < n_spatial; ++p)
        for (int q = 0; q < n_spatial; ++q) {
            std::complex<double> acc(0.0, 0.0);
            for (int s = 0; s < 2; ++s)
                acc += expectation(psi, up[qsim::spin_orbital(p, s)] *
                                            down[qsim::spin_orbital(q, s)]);
            out.rdm1(p, q) = real_part(acc, "rdm1");
        }
    out.rdm1 = 0.5 * (out.rdm1 + out.rdm1.transpose()).eval();

    for (int p = 0; p < n_spatial; ++p)
        for (int q = 0; q < n_spatial; ++q)
            for (int r = 0; r < n_spatial; ++r)
                for (int s = 0; s < n_spatial; ++s) {
                    std::complex<double> acc(0.0, 0.0);
                    for (int sg = 0; sg < 2; ++sg)
                        for (int tu = 0; tu < 2; ++tu) {
                            const qsim::PauliOp op = up[qsim::spin_orbital(p, sg)] *
                                                     up[qsim::spin_orbital(r, tu)] *
                                                     down[qsim::spin_orbital(s, tu)] *
                                                     down[qsim::spin_orbital(q, sg)];
                            acc += expectation(psi, op);
                        }
                    out.rdm2(p, q, r, s) = real_part(acc, "rdm2");
                }
    return out;
}

}  // namespace qdmet::vqe
