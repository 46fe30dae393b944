// SPDX-License-Identifier: Apache-2.0

#ifndef UQNN_CIRCUITS_HPP
#define UQNN_CIRCUITS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "uqnn/gates.hpp"

namespace uqnn {

/// The four reference circuits used throughout the test and acceptance
/// suites: a seeded random 4-qubit circuit of depth 17, the 2-qubit
/// entangler, and two reversible full adders.
enum class BenchmarkId {
    Random4Q17,
    Bell2Q,
    Adder4Q,
    Adder5Q,
};

/// Lowercase id used on the command line ("bell2q", ...).
std::string benchmark_name(BenchmarkId id);
std::optional<BenchmarkId> benchmark_from_name(const std::string& name);

/// Default seed for the canonical Random4Q17 instance. The other three
/// benchmarks ignore the seed entirely.
inline constexpr std::uint64_t kDefaultCircuitSeed = 17;

/// Builds a benchmark circuit. Only Random4Q17 consumes the seed; two
/// calls with equal arguments return identical gate lists.
Circuit benchmark_circuit(BenchmarkId id, std::uint64_t seed = kDefaultCircuitSeed);

}  // namespace uqnn

#endif  // UQNN_CIRCUITS_HPP
