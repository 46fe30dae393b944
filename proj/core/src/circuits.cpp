// SPDX-License-Identifier: Apache-2.0

#include "uqnn/circuits.hpp"

#include <cmath>
#include <random>

#include "uqnn/errors.hpp"
#include "uqnn/rng.hpp"

namespace uqnn {

std::string benchmark_name(BenchmarkId id) {
    switch (id) {
        case BenchmarkId::Random4Q17: return "random4q17";
        case BenchmarkId::Bell2Q:     return "bell2q";
        case BenchmarkId::Adder4Q:    return "adder4q";
        case BenchmarkId::Adder5Q:    return "adder5q";
    }
    throw ValidationError("unknown benchmark id");
}

std::optional<BenchmarkId> benchmark_from_name(const std::string& name) {
    if (name == "random4q17") return BenchmarkId::Random4Q17;
    if (name == "bell2q") return BenchmarkId::Bell2Q;
    if (name == "adder4q") return BenchmarkId::Adder4Q;
    if (name == "adder5q") return BenchmarkId::Adder5Q;
    return std::nullopt;
}

namespace {

Circuit bell2q() {
    Circuit c{2, {}, "bell2q"};
    c.gates.push_back(Gate::make(GateKind::H, {0}));
    c.gates.push_back(Gate::make(GateKind::CX, {0, 1}));
    return c;
}

// Full adder on (a=q0, b=q1, c_in=q2, ancilla=q3): sum a^b^c_in ends on
// q2, carry on q3, a and b preserved. Depth 5.
Circuit adder4q() {
    Circuit c{4, {}, "adder4q"};
    c.gates.push_back(Gate::make(GateKind::CCX, {0, 1, 3}));
    c.gates.push_back(Gate::make(GateKind::CX, {0, 1}));
    c.gates.push_back(Gate::make(GateKind::CCX, {1, 2, 3}));
    c.gates.push_back(Gate::make(GateKind::CX, {1, 2}));
    c.gates.push_back(Gate::make(GateKind::CX, {0, 1}));
    return c;
}

// Full adder with dedicated outputs: inputs a=q0, b=q1, c_in=q2 are
// preserved, sum a^b^c_in lands on q3, majority carry on q4
// (ab ^ bc ^ ac). Scheduled as one depth-6 chain.
Circuit adder5q() {
    Circuit c{5, {}, "adder5q"};
    c.gates.push_back(Gate::make(GateKind::CX, {0, 3}));
    c.gates.push_back(Gate::make(GateKind::CCX, {0, 1, 4}));
    c.gates.push_back(Gate::make(GateKind::CX, {1, 3}));
    c.gates.push_back(Gate::make(GateKind::CCX, {1, 2, 4}));
    c.gates.push_back(Gate::make(GateKind::CX, {2, 3}));
    c.gates.push_back(Gate::make(GateKind::CCX, {0, 2, 4}));
    return c;
}

// Seeded random 4-qubit circuit grown gate by gate until the parallel
// depth reaches exactly 17. Kinds are drawn uniformly from
// {H, X, T, S, RZ, CX}; each appended gate raises the depth by at most
// one, so the target is never overshot.
Circuit random4q17(std::uint64_t seed) {
    constexpr std::size_t kQubits = 4;
    constexpr std::size_t kDepth = 17;
    static const GateKind kinds[] = {GateKind::H,  GateKind::X,  GateKind::T,
                                     GateKind::S,  GateKind::RZ, GateKind::CX};

    std::mt19937_64 rng(stream_seed(seed, 0x52344917));
    std::uniform_int_distribution<std::size_t> pick_kind(0, std::size(kinds) - 1);
    std::uniform_int_distribution<std::size_t> pick_qubit(0, kQubits - 1);
    std::uniform_real_distribution<double> pick_angle(0.0, 2.0 * M_PI);

    Circuit c{kQubits, {}, "random4q17"};
    while (c.depth() < kDepth) {
        const GateKind kind = kinds[pick_kind(rng)];
        if (kind == GateKind::CX) {
            const std::size_t control = pick_qubit(rng);
            std::size_t target = pick_qubit(rng);
            while (target == control) target = pick_qubit(rng);
            c.gates.push_back(Gate::make(GateKind::CX, {control, target}));
        } else if (kind == GateKind::RZ) {
            c.gates.push_back(Gate::make(GateKind::RZ, {pick_qubit(rng)}, pick_angle(rng)));
        } else {
            c.gates.push_back(Gate::make(kind, {pick_qubit(rng)}));
        }
    }
    return c;
}

}  // namespace

Circuit benchmark_circuit(BenchmarkId id, std::uint64_t seed) {
    switch (id) {
        case BenchmarkId::Random4Q17: return random4q17(seed);
        case BenchmarkId::Bell2Q:     return bell2q();
        case BenchmarkId::Adder4Q:    return adder4q();
        case BenchmarkId::Adder5Q:    return adder5q();
    }
    throw ValidationError("unknown benchmark id");
}

}  // namespace uqnn
