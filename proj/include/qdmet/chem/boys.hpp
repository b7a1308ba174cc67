// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <vector>

namespace qdmet::chem {

/// Boys function F_m(x) = int_0^1 t^{2m} exp(-x t^2) dt for x >= 0.
double boys(int m, double x);

/// F_0..F_mmax at a single x, sharing the series/recursion work.
std::vector<double> boys_sequence(int mmax, double x);

}  // namespace qdmet::chem
