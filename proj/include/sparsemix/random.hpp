#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace sparsemix {

// Derives an independent stream seed from a master seed (splitmix64 finalizer).
inline uint64_t mix_seed(uint64_t seed, uint64_t stream) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform double in [0,1) with 53 random bits. Hand-rolled instead of
// std::uniform_real_distribution so streams are identical across standard
// library implementations.
inline double rand_unit(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). Rejection sampling, no modulo bias.
inline uint64_t rand_below(std::mt19937_64& g, uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v = g();
    while (v >= limit) v = g();
    return v % n;
}

// Fisher-Yates shuffle driven by rand_below.
template <typename T>
void shuffle_in_place(std::vector<T>& v, std::mt19937_64& g) {
    for (size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[rand_below(g, i)]);
    }
}

}  // namespace sparsemix
