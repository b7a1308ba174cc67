// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/mf/fci.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "qdmet/common/error.hpp"

// The Hamiltonian is assembled through spin-summed single excitations
// E_pq = sum_s a+_{ps} a_{qs}:
//   H = sum_pq w_pq E_pq + 1/2 sum_pqrs (pq|rs) E_pq E_rs,
//   w_pq = h_pq - 1/2 sum_r (pr|rq).
// Composing precomputed single-excitation tables then gives H, and the same
// tables give the 1- and 2-RDMs of the ground state.

namespace qdmet::mf {

namespace {

using Mask = std::uint64_t;

std::vector<Mask> enumerate_strings(int n_orb, int n_elec) {
    std::vector<Mask> out;
    if (n_elec == 0) {
        out.push_back(0);
        return out;
    }
    if (n_elec > n_orb) throw ContractError("FCI: more electrons of one spin than orbitals");
    Mask v = (Mask{1} << n_elec) - 1;
    const Mask limit = Mask{1} << n_orb;
    while (v < limit) {
        out.push_back(v);
        // Gosper's hack: next mask with the same popcount.
        const Mask c = v & (~v + 1);
        const Mask r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
        if (c == 0) break;
    }
    return out;
}

int string_index(const std::vector<Mask>& strings, Mask m) {
    const auto it = std::lower_bound(strings.begin(), strings.end(), m);
    return static_cast<int>(it - strings.begin());
}

// One single excitation E_pq applied within one spin string.
struct Single {
    int p, q;
    int target;  // index of the resulting string
    double sign;
};

// All E_pq |string_k> with nonzero result, including the diagonal p == q.
std::vector<std::vector<Single>> build_singles(const std::vector<Mask>& strings, int n_orb) {
    std::vector<std::vector<Single>> table(strings.size());
    for (std::size_t k = 0; k < strings.size(); ++k) {
        const Mask s = strings[k];
        for (int q = 0; q < n_orb; ++q) {
            if (!(s & (Mask{1} << q))) continue;
            const Mask s1 = s & ~(Mask{1} << q);
            const int par_q = std::popcount(s & ((Mask{1} << q) - 1));
            for (int p = 0; p < n_orb; ++p) {
                if (s1 & (Mask{1} << p)) continue;
                const Mask s2 = s1 | (Mask{1} << p);
                const int par_p = std::popcount(s1 & ((Mask{1} << p) - 1));
                const double sign = ((par_p + par_q) % 2 == 0) ? 1.0 : -1.0;
                table[k].push_back({p, q, string_index(strings, s2), sign});
            }
        }
    }
    return table;
}

}  // namespace

FciResult run_fci(const Eigen::MatrixXd& h, const Tensor4& V, double e_const, int n_alpha,
                  int n_beta, const FciOptions& opts) {
    const int n = static_cast<int>(h.rows());
    if (n < 1 || n > 62) throw CapacityError("FCI: orbital count out of range");
    if (static_cast<std::size_t>(V.dim()) != static_cast<std::size_t>(n)) {
        throw ContractError("FCI: h and V dimensions differ");
    }

    const std::vector<Mask> astr = enumerate_strings(n, n_alpha);
    const std::vector<Mask> bstr = enumerate_strings(n, n_beta);
    const std::size_t na = astr.size(), nb = bstr.size();
    const std::size_t dim = na * nb;
    if (dim > opts.max_determinants) {
        throw CapacityError("FCI: " + std::to_string(dim) + " determinants exceeds cap " +
                            std::to_string(opts.max_determinants));
    }

    const auto asing = build_singles(astr, n);
    const auto bsing = build_singles(bstr, n);

    // Effective one-body coefficients absorbing the contraction term.
    Eigen::MatrixXd w = h;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            double c = 0.0;
            for (int r = 0; r < n; ++r)
                c += V(static_cast<std::size_t>(p), static_cast<std::size_t>(r),
                       static_cast<std::size_t>(r), static_cast<std::size_t>(q));
            w(p, q) -= 0.5 * c;
        }

    auto det_index = [nb](std::size_t ia, std::size_t ib) { return ia * nb + ib; };

    // Spin-summed singles from a full determinant: (p, q, target det, sign).
    auto for_each_single = [&](std::size_t ia, std::size_t ib, auto&& fn) {
        for (const Single& s : asing[ia]) fn(s.p, s.q, det_index(static_cast<std::size_t>(s.target), ib), s.sign);
        for (const Single& s : bsing[ib]) fn(s.p, s.q, det_index(ia, static_cast<std::size_t>(s.target)), s.sign);
    };

    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
    for (std::size_t ia = 0; ia < na; ++ia) {
        for (std::size_t ib = 0; ib < nb; ++ib) {
            const std::size_t k = det_index(ia, ib);
            for_each_single(ia, ib, [&](int r, int s, std::size_t m, double s1) {
                H(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)) += w(r, s) * s1;
                const std::size_t ma = m / nb, mb = m % nb;
                for (const Single& t : asing[ma]) {
                    const std::size_t f = det_index(static_cast<std::size_t>(t.target), mb);
                    H(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(k)) +=
                        0.5 * V(static_cast<std::size_t>(t.p), static_cast<std::size_t>(t.q),
                                static_cast<std::size_t>(r), static_cast<std::size_t>(s)) *
                        s1 * t.sign;
                }
                for (const Single& t : bsing[mb]) {
                    const std::size_t f = det_index(ma, static_cast<std::size_t>(t.target));
                    H(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(k)) +=
                        0.5 * V(static_cast<std::size_t>(t.p), static_cast<std::size_t>(t.q),
                                static_cast<std::size_t>(r), static_cast<std::size_t>(s)) *
                        s1 * t.sign;
                }
            });
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    FciResult res;
    res.energy = es.eigenvalues()(0) + e_const;
    res.ci = es.eigenvectors().col(0);

    res.dets.reserve(dim);
    for (std::size_t ia = 0; ia < na; ++ia)
        for (std::size_t ib = 0; ib < nb; ++ib) res.dets.emplace_back(astr[ia], bstr[ib]);

    // RDMs of the ground state via the same excitation tables.
    res.rdm1 = Eigen::MatrixXd::Zero(n, n);
    Tensor4 ee(static_cast<std::size_t>(n));  // <E_pq E_rs>
    const Eigen::VectorXd& c = res.ci;
    for (std::size_t ia = 0; ia < na; ++ia) {
        for (std::size_t ib = 0; ib < nb; ++ib) {
            const std::size_t k = det_index(ia, ib);
            const double ck = c(static_cast<Eigen::Index>(k));
            if (ck == 0.0) continue;
            for_each_single(ia, ib, [&](int r, int s, std::size_t m, double s1) {
                res.rdm1(r, s) += c(static_cast<Eigen::Index>(m)) * ck * s1;
                const std::size_t ma = m / nb, mb = m % nb;
                for (const Single& t : asing[ma]) {
                    const std::size_t f = det_index(static_cast<std::size_t>(t.target), mb);
                    ee(static_cast<std::size_t>(t.p), static_cast<std::size_t>(t.q),
                       static_cast<std::size_t>(r), static_cast<std::size_t>(s)) +=
                        c(static_cast<Eigen::Index>(f)) * ck * s1 * t.sign;
                }
                for (const Single& t : bsing[mb]) {
                    const std::size_t f = det_index(ma, static_cast<std::size_t>(t.target));
                    ee(static_cast<std::size_t>(t.p), static_cast<std::size_t>(t.q),
                       static_cast<std::size_t>(r), static_cast<std::size_t>(s)) +=
                        c(static_cast<Eigen::Index>(f)) * ck * s1 * t.sign;
                }
            });
        }
    }
    // Gamma_pqrs = <E_pq E_rs> - delta_qr <E_ps>.
    res.rdm2 = ee;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int s = 0; s < n; ++s) {
                res.rdm2(static_cast<std::size_t>(p), static_cast<std::size_t>(q),
                         static_cast<std::size_t>(q), static_cast<std::size_t>(s)) -=
                    res.rdm1(p, s);
            }
    return res;
}

}  // namespace qdmet::mf
