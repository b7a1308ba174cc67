// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qdmet/common/rng.hpp"

#include "qdmet/common/error.hpp"

namespace qdmet::common {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, const std::vector<std::uint64_t>& labels) {
    std::uint64_t h = mix64(parent);
    for (std::uint64_t l : labels) h = mix64(h ^ mix64(l));
    return h;
}

std::uint64_t derive_seed(std::uint64_t parent, const std::string& label) {
    return derive_seed(parent, std::vector<std::uint64_t>{fnv1a(label)});
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::size_t Rng::categorical(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw ContractError("categorical: negative weight");
        total += w;
    }
    if (total <= 0.0) throw ContractError("categorical: all weights zero");
    const double r = uniform() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (r < acc) return i;
    }
    return weights.size() - 1;
}

}  // namespace qdmet::common
