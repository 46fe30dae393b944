// SPDX-License-Identifier: Apache-2.0

#ifndef UQNN_SYNTH_HPP
#define UQNN_SYNTH_HPP

#include <optional>
#include <string>
#include <vector>

#include "uqnn/gates.hpp"
#include "uqnn/linalg.hpp"

namespace uqnn {

/// Unitary acting on exactly two coordinates (i, j) of a dim-vector;
/// identity everywhere else. The 2x2 block is unitary within 1e-10.
struct TwoLevelOp {
    std::size_t dim = 0;
    std::size_t i = 0;
    std::size_t j = 0;  // i < j < dim
    ComplexMatrix block;  // 2x2
};

/// Expands a two-level op to its full dim x dim matrix.
ComplexMatrix two_level_matrix(const TwoLevelOp& op);

/// Factors U (unitary within 1e-8, dim a power of two) into two-level
/// ops V_1..V_k with V_k ... V_1 U = I, so U = V_1^dagger ... V_k^dagger.
/// Entries below 1e-12 are treated as already zero, so an identity
/// input yields an empty list. k never exceeds dim(dim-1)/2.
std::vector<TwoLevelOp> two_level_decompose(const ComplexMatrix& u);

/// Euler angles with u = e^{i phase} RZ(alpha) RY(beta) RZ(gamma),
/// beta in [0, pi]. The one-parameter freedom at beta in {0, pi} is
/// pinned by gamma = 0. Input must be 2x2 and unitary within 1e-8.
struct ZYZAngles {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double phase = 0.0;
};

ZYZAngles zyz_angles(const ComplexMatrix& u);

/// e^{i phase} RZ(alpha) RY(beta) RZ(gamma) as a matrix.
ComplexMatrix zyz_matrix(const ZYZAngles& z);

/// Principal square root of a 2x2 unitary: V with V V = u, obtained
/// from the axis-angle form e^{i delta}(cos t I + i sin t n.sigma) by
/// halving delta and t. Deterministic.
ComplexMatrix sqrt_unitary_2x2(const ComplexMatrix& u);

/// Result of exact gate synthesis. The circuit uses only RZ, RY, X,
/// CX, and CCX. unitary(circuit) equals e^{-i global_phase} U up to
/// reconstruction_error = || e^{i global_phase} unitary(circuit) - U ||_F.
/// Global phase is physically unobservable, so it is reported rather
/// than synthesized into gates.
struct SynthesizedCircuit {
    Circuit circuit;
    double global_phase = 0.0;
    double reconstruction_error = 0.0;
    std::size_t gate_count = 0;
};

/// Decomposes U (unitary within 1e-6, dim = 2^n) into elementary
/// gates: two-level factoring, Gray-code conditioning of each factor
/// into a multi-controlled single-qubit operation, and recursive
/// lowering of those onto {RZ, RY, X, CX, CCX}. Output is
/// deterministic for identical input.
SynthesizedCircuit synthesize(const ComplexMatrix& u);

/// OpenQASM-2-style rendering (qelib1 gate names). Semantic
/// equivalence is the contract, not byte-exactness against any
/// external tool.
std::string emit_qasm(const Circuit& c,
                      std::optional<double> global_phase = std::nullopt);

}  // namespace uqnn

#endif  // UQNN_SYNTH_HPP
