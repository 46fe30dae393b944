// SPDX-License-Identifier: Apache-2.0

#ifndef UQNN_RNG_HPP
#define UQNN_RNG_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace uqnn {

/// splitmix64 finalizer; used to derive independent engine seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for logical stream `stream` of a run keyed by `seed`. Streams
/// are mutually independent and reproducible, so per-sample work can be
/// parallelized without changing results.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed + (stream + 1) * 0x9e3779b97f4a7c15ULL);
}

/// Fisher-Yates shuffle with an explicit draw sequence, so shuffles are
/// reproducible across standard library implementations (std::shuffle
/// leaves the draw method unspecified).
template <typename T>
void deterministic_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace uqnn

#endif  // UQNN_RNG_HPP
