// SPDX-License-Identifier: Apache-2.0

#ifndef UQNN_DATASET_HPP
#define UQNN_DATASET_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "uqnn/gates.hpp"
#include "uqnn/linalg.hpp"

namespace uqnn {

/// One input/output statevector pair produced by running the target
/// circuit on the input.
struct Sample {
    StateVector input;
    StateVector output;
};

/// Paired samples for one target circuit, with a train/test split.
/// Train and test indices partition [0, samples.size()).
struct Dataset {
    std::size_t n = 0;  // qubit count; all states have dim 2^n
    std::vector<Sample> samples;
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
    std::uint64_t seed = 0;

    std::size_t dim() const { return std::size_t{1} << n; }
    std::vector<Sample> train_samples() const;
    std::vector<Sample> test_samples() const;
};

/// Haar-uniform pure state: 2^n standard complex normal draws,
/// normalized.
StateVector random_state(std::size_t n, std::mt19937_64& rng);

/// `count` samples generated by simulating `circuit` on fresh random
/// states. Sample t draws from its own stream derived from (seed, t).
std::vector<Sample> generate_samples(const Circuit& circuit, std::size_t count,
                                     std::uint64_t seed);

/// Full dataset generation with a deterministic train/test split.
/// Requires count >= 10 and 0 < test_fraction < 1.
Dataset generate(const Circuit& circuit, std::size_t count, std::uint64_t seed,
                 double test_fraction);

/// Binary .uqnn container, little-endian:
///   magic "UQNN" | version u16 | n u16 | sample count u64 | seed u64 |
///   train count u64 | train indices u64[] | samples
/// Each sample stores input then output as (re, im) float64 pairs per
/// amplitude. Round-trips bit-exactly. Loading reports distinct errors
/// for bad magic/version (FormatError), header/payload disagreement
/// (DimensionError), and short files (TruncatedError).
void save(const Dataset& ds, const std::string& path);
Dataset load(const std::string& path);

}  // namespace uqnn

#endif  // UQNN_DATASET_HPP
