// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace qdmet::common {

/// splitmix64 finaliser; used to mix seeds and hash labels.
std::uint64_t mix64(std::uint64_t x);

/// Child seed derived from a parent seed and an ordered list of labels.
/// Identical inputs give identical streams on every platform.
std::uint64_t derive_seed(std::uint64_t parent, const std::vector<std::uint64_t>& labels);
std::uint64_t derive_seed(std::uint64_t parent, const std::string& label);

/// FNV-1a hash of a byte string, used for config fingerprints and labels.
std::uint64_t fnv1a(const std::string& bytes);

/// Deterministic RNG. mt19937_64 has a standardised sequence, and the
/// double conversion below is pinned, so results are bit reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Uniform integer in [0, n). Rejection-free modulo is acceptable here:
    /// n is tiny next to 2^64 so the bias is far below statistical noise.
    std::uint64_t uniform_index(std::uint64_t n) { return gen_() % n; }

    /// Index drawn from unnormalised non-negative weights.
    std::size_t categorical(const std::vector<double>& weights);

private:
    std::mt19937_64 gen_;
};

}  // namespace qdmet::common
