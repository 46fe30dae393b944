// SPDX-License-Identifier: Apache-2.0

#ifndef UQNN_SIMULATE_HPP
#define UQNN_SIMULATE_HPP

#include "uqnn/gates.hpp"
#include "uqnn/linalg.hpp"

namespace uqnn {

/// Qubit 0 is the most significant bit of the basis index: for an
/// n-qubit register, basis index b has qubit q's bit at position
/// n-1-q. All of qsim, dataset and synth share this convention.
inline std::size_t qubit_bit(std::size_t n, std::size_t qubit) { return n - 1 - qubit; }

/// Applies a single gate to a 2^n-dimensional state. Pure: returns the
/// evolved state. Norm is preserved to within roundoff.
StateVector apply_gate(const StateVector& state, const Gate& gate, std::size_t n);

/// Runs the whole circuit, left to right, on the given state.
StateVector run_circuit(const Circuit& c, const StateVector& state);

/// Assembles the 2^n x 2^n unitary of a circuit; column j is the
/// circuit applied to |j>. Throws SizeCapError for n > 12.
ComplexMatrix circuit_unitary(const Circuit& c);

}  // namespace uqnn

#endif  // UQNN_SIMULATE_HPP
