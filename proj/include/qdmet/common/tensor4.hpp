// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <cstddef>
#include <vector>

namespace qdmet {

/// Dense rank-4 tensor with uniform dimension n, used for two-electron
/// integrals in chemist's notation (ij|kl). Storage is full n^4; at desk
/// scale (n <= 16) symmetry-packed storage is not worth the indexing cost.
class Tensor4 {
  public:
    Tensor4() = default;
    explicit Tensor4(std::size_t n) : n_(n), data_(n * n * n * n, 0.0) {}

    double& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
        return data_[((i * n_ + j) * n_ + k) * n_ + l];
    }
    double operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
        return data_[((i * n_ + j) * n_ + k) * n_ + l];
    }

    std::size_t dim() const { return n_; }
    const std::vector<double>& raw() const { return data_; }
    std::vector<double>& raw() { return data_; }

  private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

}  // namespace qdmet
