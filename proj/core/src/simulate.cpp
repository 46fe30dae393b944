// SPDX-License-Identifier: Apache-2.0

#include "uqnn/simulate.hpp"

#include <array>
#include <cmath>

#include "uqnn/errors.hpp"

namespace uqnn {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

std::array<cplx, 4> one_qubit_matrix(GateKind kind, double theta) {
    const cplx i(0.0, 1.0);
    switch (kind) {
        case GateKind::H:
            return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
        case GateKind::X:
            return {0.0, 1.0, 1.0, 0.0};
        case GateKind::Y:
            return {0.0, -i, i, 0.0};
        case GateKind::Z:
            return {1.0, 0.0, 0.0, -1.0};
        case GateKind::S:
            return {1.0, 0.0, 0.0, i};
        case GateKind::Sdg:
            return {1.0, 0.0, 0.0, -i};
        case GateKind::T:
            return {1.0, 0.0, 0.0, std::polar(1.0, M_PI / 4)};
        case GateKind::Tdg:
            return {1.0, 0.0, 0.0, std::polar(1.0, -M_PI / 4)};
        case GateKind::RX:
            return {std::cos(theta / 2), -i * std::sin(theta / 2),
                    -i * std::sin(theta / 2), std::cos(theta / 2)};
        case GateKind::RY:
            return {std::cos(theta / 2), -std::sin(theta / 2),
                    std::sin(theta / 2), std::cos(theta / 2)};
        case GateKind::RZ:
            return {std::polar(1.0, -theta / 2), 0.0, 0.0, std::polar(1.0, theta / 2)};
        default:
            throw ValidationError("gate " + gate_mnemonic(kind) + " is not single-qubit");
    }
}

}  // namespace

StateVector apply_gate(const StateVector& state, const Gate& gate, std::size_t n) {
    validate_gate(gate, n);
    const std::size_t dim = std::size_t{1} << n;
    if (state.dim() != dim) {
        throw ShapeError("state dim " + std::to_string(state.dim()) + " is not 2^" +
                         std::to_string(n));
    }

    StateVector out(dim);
    switch (gate.kind) {
        case GateKind::CX: {
            const std::size_t cmask = std::size_t{1} << qubit_bit(n, gate.targets[0]);
            const std::size_t tmask = std::size_t{1} << qubit_bit(n, gate.targets[1]);
            for (std::size_t idx = 0; idx < dim; ++idx) {
                out[(idx & cmask) ? idx ^ tmask : idx] = state[idx];
            }
            return out;
        }
        case GateKind::CCX: {
            const std::size_t c0 = std::size_t{1} << qubit_bit(n, gate.targets[0]);
            const std::size_t c1 = std::size_t{1} << qubit_bit(n, gate.targets[1]);
            const std::size_t tmask = std::size_t{1} << qubit_bit(n, gate.targets[2]);
            for (std::size_t idx = 0; idx < dim; ++idx) {
                const bool on = (idx & c0) && (idx & c1);
                out[on ? idx ^ tmask : idx] = state[idx];
            }
            return out;
        }
        case GateKind::SWAP: {
            const std::size_t a = qubit_bit(n, gate.targets[0]);
            const std::size_t b = qubit_bit(n, gate.targets[1]);
            for (std::size_t idx = 0; idx < dim; ++idx) {
                const std::size_t ba = (idx >> a) & 1, bb = (idx >> b) & 1;
                std::size_t j = idx & ~((std::size_t{1} << a) | (std::size_t{1} << b));
                j |= (ba << b) | (bb << a);
                out[j] = state[idx];
            }
            return out;
        }
        default: {
            const auto u = one_qubit_matrix(gate.kind, gate.param.value_or(0.0));
            const std::size_t tmask = std::size_t{1} << qubit_bit(n, gate.targets[0]);
            for (std::size_t idx = 0; idx < dim; ++idx) {
                if (idx & tmask) continue;
                const cplx a0 = state[idx], a1 = state[idx | tmask];
                out[idx] = u[0] * a0 + u[1] * a1;
                out[idx | tmask] = u[2] * a0 + u[3] * a1;
            }
            return out;
        }
    }
}

StateVector run_circuit(const Circuit& c, const StateVector& state) {
    StateVector s = state;
    for (const Gate& g : c.gates) s = apply_gate(s, g, c.num_qubits);
    return s;
}

ComplexMatrix circuit_unitary(const Circuit& c) {
    if (c.num_qubits > 12) {
        throw SizeCapError("circuit_unitary capped at 12 qubits, got " +
                           std::to_string(c.num_qubits));
    }
    c.validate();
    const std::size_t dim = std::size_t{1} << c.num_qubits;
    ComplexMatrix u(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        StateVector col = run_circuit(c, StateVector::basis(dim, j));
        for (std::size_t i = 0; i < dim; ++i) u(i, j) = col[i];
    }
    return u;
}

}  // namespace uqnn
