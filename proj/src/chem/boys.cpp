// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/chem/boys.hpp"

#include <cmath>

#include "qdmet/common/error.hpp"

namespace qdmet::chem {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLargeX = 25.0;

// Convergent series for moderate x:
//   F_m(x) = exp(-x) sum_i (2x)^i / ((2m+1)(2m+3)...(2m+2i+1))
double boys_series(int m, double x) {
    const double ex = std::exp(-x);
    double term = 1.0 / (2.0 * m + 1.0);
    double sum = term;
    for (int i = 1; i < 200; ++i) {
        term *= 2.0 * x / (2.0 * m + 2.0 * i + 1.0);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return ex * sum;
}

}  // namespace

double boys(int m, double x) {
    if (m < 0 || x < 0.0) throw ContractError("boys: m >= 0 and x >= 0 required");
    if (x < kLargeX) return boys_series(m, x);
    // Asymptotic F_0 then upward recursion; stable because exp(-x) is tiny here.
    double f = 0.5 * std::sqrt(kPi / x);
    const double ex = std::exp(-x);
    for (int k = 0; k < m; ++k) f = ((2.0 * k + 1.0) * f - ex) / (2.0 * x);
    return f;
}

std::vector<double> boys_sequence(int mmax, double x) {
    if (mmax < 0 || x < 0.0) throw ContractError("boys_sequence: mmax >= 0 and x >= 0 required");
    std::vector<double> f(static_cast<std::size_t>(mmax) + 1);
    const double ex = std::exp(-x);
    if (x < kLargeX) {
        // Downward recurrence from the top keeps every order at full accuracy.
        f[static_cast<std::size_t>(mmax)] = boys_series(mmax, x);
        for (int m = mmax - 1; m >= 0; --m) {
            f[static_cast<std::size_t>(m)] =
                (2.0 * x * f[static_cast<std::size_t>(m) + 1] + ex) / (2.0 * m + 1.0);
        }
    } else {
        f[0] = 0.5 * std::sqrt(kPi / x);
        for (int m = 0; m < mmax; ++m) {
            f[static_cast<std::size_t>(m) + 1] =
                ((2.0 * m + 1.0) * f[static_cast<std::size_t>(m)] - ex) / (2.0 * x);
        }
    }
    return f;
}

}  // namespace qdmet::chem
