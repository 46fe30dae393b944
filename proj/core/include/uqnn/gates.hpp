// SPDX-License-Identifier: Apache-2.0

#ifndef UQNN_GATES_HPP
#define UQNN_GATES_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace uqnn {

enum class GateKind {
    H,
    X,
    Y,
    Z,
    S,
    T,
    Sdg,
    Tdg,
    RX,
    RY,
    RZ,
    CX,
    CCX,
    SWAP,
};

/// Number of qubits a gate kind acts on.
std::size_t gate_arity(GateKind kind);

/// True for the parameterized rotations RX/RY/RZ.
bool gate_has_param(GateKind kind);

/// Lowercase mnemonic used by the circuit text format ("h", "cx", ...).
std::string gate_mnemonic(GateKind kind);

/// Inverse of gate_mnemonic; returns nullopt for unknown mnemonics.
std::optional<GateKind> gate_from_mnemonic(const std::string& mnemonic);

struct Gate {
    GateKind kind;
    /// Qubit operands. For CX: {control, target}; for CCX:
    /// {control, control, target}; for SWAP: the swapped pair.
    std::vector<std::size_t> targets;
    /// Rotation angle in radians; present iff kind is RX, RY or RZ.
    std::optional<double> param;

    static Gate make(GateKind kind, std::vector<std::size_t> targets,
                     std::optional<double> param = std::nullopt);
};

/// Throws ValidationError unless the gate's operands are distinct, in
/// range for num_qubits, match the gate's arity, and the parameter is
/// present exactly when the kind requires one.
void validate_gate(const Gate& gate, std::size_t num_qubits);

struct Circuit {
    std::size_t num_qubits = 0;
    std::vector<Gate> gates;
    std::string name;

    /// Longest qubit-wise chain of gates (number of parallel layers).
    std::size_t depth() const;

    /// Validates every gate against num_qubits.
    void validate() const;
};

}  // namespace uqnn

#endif  // UQNN_GATES_HPP
