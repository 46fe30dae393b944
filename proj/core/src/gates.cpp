// SPDX-License-Identifier: Apache-2.0

#include "uqnn/gates.hpp"

#include <algorithm>
#include <utility>

#include "uqnn/errors.hpp"

namespace uqnn {

std::size_t gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::CX:
        case GateKind::SWAP:
            return 2;
        case GateKind::CCX:
            return 3;
        default:
            return 1;
    }
}

bool gate_has_param(GateKind kind) {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
}

std::string gate_mnemonic(GateKind kind) {
    switch (kind) {
        case GateKind::H:    return "h";
        case GateKind::X:    return "x";
        case GateKind::Y:    return "y";
        case GateKind::Z:    return "z";
        case GateKind::S:    return "s";
        case GateKind::T:    return "t";
        case GateKind::Sdg:  return "sdg";
        case GateKind::Tdg:  return "tdg";
        case GateKind::RX:   return "rx";
        case GateKind::RY:   return "ry";
        case GateKind::RZ:   return "rz";
        case GateKind::CX:   return "cx";
        case GateKind::CCX:  return "ccx";
        case GateKind::SWAP: return "swap";
    }
    throw ValidationError("unknown gate kind");
}

std::optional<GateKind> gate_from_mnemonic(const std::string& mnemonic) {
    static const std::pair<const char*, GateKind> table[] = {
        {"h", GateKind::H},     {"x", GateKind::X},     {"y", GateKind::Y},
        {"z", GateKind::Z},     {"s", GateKind::S},     {"t", GateKind::T},
        {"sdg", GateKind::Sdg}, {"tdg", GateKind::Tdg}, {"rx", GateKind::RX},
        {"ry", GateKind::RY},   {"rz", GateKind::RZ},   {"cx", GateKind::CX},
        {"ccx", GateKind::CCX}, {"swap", GateKind::SWAP},
    };
    for (const auto& [name, kind] : table) {
        if (mnemonic == name) return kind;
    }
    return std::nullopt;
}

Gate Gate::make(GateKind kind, std::vector<std::size_t> targets, std::optional<double> param) {
    return Gate{kind, std::move(targets), param};
}

void validate_gate(const Gate& gate, std::size_t num_qubits) {
    const std::size_t arity = gate_arity(gate.kind);
    if (gate.targets.size() != arity) {
        throw ValidationError("gate " + gate_mnemonic(gate.kind) + " expects " +
                              std::to_string(arity) + " qubits, got " +
                              std::to_string(gate.targets.size()));
    }
    for (std::size_t q : gate.targets) {
        if (q >= num_qubits) {
            throw ValidationError("gate " + gate_mnemonic(gate.kind) + " targets qubit " +
                                  std::to_string(q) + " in a " + std::to_string(num_qubits) +
                                  "-qubit circuit");
        }
    }
    for (std::size_t i = 0; i < gate.targets.size(); ++i) {
        for (std::size_t j = i + 1; j < gate.targets.size(); ++j) {
            if (gate.targets[i] == gate.targets[j]) {
                throw ValidationError("gate " + gate_mnemonic(gate.kind) +
                                      " has repeated qubit " + std::to_string(gate.targets[i]));
            }
        }
    }
    if (gate_has_param(gate.kind) != gate.param.has_value()) {
        throw ValidationError("gate " + gate_mnemonic(gate.kind) +
                              (gate.param ? " does not take an angle" : " requires an angle"));
    }
}

std::size_t Circuit::depth() const {
    std::vector<std::size_t> level(num_qubits, 0);
    std::size_t depth = 0;
    for (const Gate& g : gates) {
        std::size_t d = 0;
        for (std::size_t q : g.targets) d = std::max(d, level[q]);
        ++d;
        for (std::size_t q : g.targets) level[q] = d;
        depth = std::max(depth, d);
    }
    return depth;
}

void Circuit::validate() const {
    for (const Gate& g : gates) validate_gate(g, num_qubits);
}

}  // namespace uqnn
