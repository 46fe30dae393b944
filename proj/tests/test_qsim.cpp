// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>
#include <sstream>

#include <doctest.h>

#include "test_helpers.hpp"
#include "uqnn/circuit_text.hpp"
#include "uqnn/circuits.hpp"
#include "uqnn/errors.hpp"
#include "uqnn/simulate.hpp"

using namespace uqnn;
using namespace uqnn::testing;

namespace {

bool same_gates(const Circuit& a, const Circuit& b) {
    if (a.num_qubits != b.num_qubits || a.gates.size() != b.gates.size()) return false;
    for (std::size_t i = 0; i < a.gates.size(); ++i) {
        const Gate& ga = a.gates[i];
        const Gate& gb = b.gates[i];
        if (ga.kind != gb.kind || ga.targets != gb.targets || ga.param != gb.param) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("gate metadata and validation") {
    CHECK(gate_arity(GateKind::H) == 1);
    CHECK(gate_arity(GateKind::CX) == 2);
    CHECK(gate_arity(GateKind::CCX) == 3);
    CHECK(gate_arity(GateKind::SWAP) == 2);
    CHECK(gate_has_param(GateKind::RZ));
    CHECK_FALSE(gate_has_param(GateKind::T));
    CHECK(gate_mnemonic(GateKind::Sdg) == "sdg");
    CHECK(gate_from_mnemonic("ccx") == GateKind::CCX);
    CHECK_FALSE(gate_from_mnemonic("cz").has_value());

    CHECK_THROWS_AS(validate_gate(Gate::make(GateKind::CX, {1, 1}), 2), ValidationError);
    CHECK_THROWS_AS(validate_gate(Gate::make(GateKind::H, {3}), 2), ValidationError);
    CHECK_THROWS_AS(validate_gate(Gate::make(GateKind::H, {0}, 0.5), 2), ValidationError);
    CHECK_THROWS_AS(validate_gate(Gate::make(GateKind::RZ, {0}), 2), ValidationError);
    CHECK_THROWS_AS(validate_gate(Gate::make(GateKind::CX, {0}), 2), ValidationError);
    CHECK_NOTHROW(validate_gate(Gate::make(GateKind::RZ, {0}, 0.5), 2));
}

TEST_CASE("circuit depth") {
    Circuit c{2, {}, ""};
    CHECK(c.depth() == 0);
    c.gates.push_back(Gate::make(GateKind::H, {0}));
    CHECK(c.depth() == 1);
    c.gates.push_back(Gate::make(GateKind::H, {1}));
    CHECK(c.depth() == 1);  // parallel layer
    c.gates.push_back(Gate::make(GateKind::CX, {0, 1}));
    CHECK(c.depth() == 2);
}

TEST_CASE("apply_gate: defining actions") {
    // H|0> = (|0> + |1>)/sqrt(2)
    StateVector h0 = apply_gate(StateVector::basis(2, 0), Gate::make(GateKind::H, {0}), 1);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(h0[0] - s) < 1e-15);
    CHECK(std::abs(h0[1] - s) < 1e-15);

    // CX(0 -> 1) on |10>: control qubit 0 is set, so the target flips.
    // Qubit 0 is the most significant bit: |10> is index 2, |11> is 3.
    StateVector cx = apply_gate(StateVector::basis(4, 2), Gate::make(GateKind::CX, {0, 1}), 2);
    CHECK(std::abs(cx[3] - 1.0) < 1e-15);
    CHECK(std::abs(cx[2]) < 1e-15);

    // CCX(0,1 -> 2) on (|110> + |000>)/sqrt(2): only |110> flips.
    StateVector in(8);
    in[6] = s;  // |110>
    in[0] = s;  // |000>
    StateVector out = apply_gate(in, Gate::make(GateKind::CCX, {0, 1, 2}), 3);
    CHECK(std::abs(out[7] - s) < 1e-15);  // |111>
    CHECK(std::abs(out[0] - s) < 1e-15);  // |000>
    CHECK(std::abs(out[6]) < 1e-15);

    // SWAP exchanges the two bits: |01> -> |10>.
    StateVector sw = apply_gate(StateVector::basis(4, 1), Gate::make(GateKind::SWAP, {0, 1}), 2);
    CHECK(std::abs(sw[2] - 1.0) < 1e-15);

    CHECK_THROWS_AS(apply_gate(StateVector::basis(2, 0), Gate::make(GateKind::H, {1}), 1),
                    ValidationError);
    CHECK_THROWS_AS(apply_gate(StateVector::basis(2, 0), Gate::make(GateKind::H, {0}), 2),
                    ShapeError);
}

TEST_CASE("apply_gate: every kind preserves the norm") {
    std::mt19937_64 rng(99);
    const std::vector<Gate> gates = {
        Gate::make(GateKind::H, {0}),        Gate::make(GateKind::X, {1}),
        Gate::make(GateKind::Y, {2}),        Gate::make(GateKind::Z, {0}),
        Gate::make(GateKind::S, {1}),        Gate::make(GateKind::T, {2}),
        Gate::make(GateKind::Sdg, {0}),      Gate::make(GateKind::Tdg, {1}),
        Gate::make(GateKind::RX, {2}, 0.7),  Gate::make(GateKind::RY, {0}, -1.3),
        Gate::make(GateKind::RZ, {1}, 2.9),  Gate::make(GateKind::CX, {0, 1}),
        Gate::make(GateKind::CCX, {0, 1, 2}), Gate::make(GateKind::SWAP, {1, 2}),
    };
    int states = 0;
    for (const Gate& g : gates) {
        for (int trial = 0; trial < 72; ++trial) {
            StateVector x = random_vector(8, rng);
            const double before = x.norm();
            const double after = apply_gate(x, g, 3).norm();
            CHECK(std::abs(after - before) < 1e-12);
            ++states;
        }
    }
    CHECK(states >= 1000);
}

TEST_CASE("circuit_unitary: identity, Bell state, permutation adder") {
    Circuit empty{3, {}, ""};
    CHECK(max_abs_diff(circuit_unitary(empty), ComplexMatrix::identity(8)) == 0.0);

    const ComplexMatrix bell = circuit_unitary(benchmark_circuit(BenchmarkId::Bell2Q));
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(bell(0, 0) - s) < 1e-15);
    CHECK(std::abs(bell(3, 0) - s) < 1e-15);
    CHECK(std::abs(bell(1, 0)) < 1e-15);
    CHECK(std::abs(bell(2, 0)) < 1e-15);

    // The 4-qubit adder permutes basis states: every entry is 0 or 1,
    // with exactly one 1 per row and column.
    const ComplexMatrix adder = circuit_unitary(benchmark_circuit(BenchmarkId::Adder4Q));
    for (std::size_t c = 0; c < 16; ++c) {
        std::size_t ones = 0;
        for (std::size_t r = 0; r < 16; ++r) {
            const double v = std::abs(adder(r, c));
            CHECK((v < 1e-12 || std::abs(v - 1.0) < 1e-12));
            if (v > 0.5) ++ones;
        }
        CHECK(ones == 1);
    }

    Circuit too_big{13, {}, ""};
    CHECK_THROWS_AS(circuit_unitary(too_big), SizeCapError);
}

TEST_CASE("circuit_unitary columns match gate-by-gate simulation") {
    for (BenchmarkId id : {BenchmarkId::Random4Q17, BenchmarkId::Adder5Q}) {
        const Circuit c = benchmark_circuit(id);
        const ComplexMatrix u = circuit_unitary(c);
        const std::size_t d = std::size_t{1} << c.num_qubits;
        for (std::size_t j = 0; j < d; ++j) {
            const StateVector direct = run_circuit(c, StateVector::basis(d, j));
            StateVector col(d);
            for (std::size_t r = 0; r < d; ++r) col[r] = u(r, j);
            CHECK(max_abs_diff(direct, col) < 1e-10);
        }
    }
}

TEST_CASE("benchmark circuits: shapes, depths, determinism") {
    const Circuit bell = benchmark_circuit(BenchmarkId::Bell2Q);
    CHECK(bell.num_qubits == 2);
    CHECK(bell.gates.size() == 2);
    CHECK(bell.depth() == 2);

    const Circuit adder4 = benchmark_circuit(BenchmarkId::Adder4Q);
    CHECK(adder4.num_qubits == 4);
    CHECK(adder4.depth() == 5);

    const Circuit adder5 = benchmark_circuit(BenchmarkId::Adder5Q);
    CHECK(adder5.num_qubits == 5);
    CHECK(adder5.depth() == 6);

    const Circuit rand_a = benchmark_circuit(BenchmarkId::Random4Q17);
    const Circuit rand_b = benchmark_circuit(BenchmarkId::Random4Q17);
    CHECK(rand_a.num_qubits == 4);
    CHECK(rand_a.depth() == 17);
    CHECK(same_gates(rand_a, rand_b));
    // A different seed gives a different circuit (with overwhelming
    // probability) but the same depth.
    const Circuit rand_c = benchmark_circuit(BenchmarkId::Random4Q17, 99);
    CHECK(rand_c.depth() == 17);
    CHECK_FALSE(same_gates(rand_a, rand_c));

    for (BenchmarkId id : {BenchmarkId::Random4Q17, BenchmarkId::Bell2Q, BenchmarkId::Adder4Q,
                           BenchmarkId::Adder5Q}) {
        CHECK(unitarity_error(circuit_unitary(benchmark_circuit(id))) <= 1e-10);
    }

    CHECK(benchmark_name(BenchmarkId::Adder5Q) == "adder5q");
    CHECK(benchmark_from_name("adder4q") == BenchmarkId::Adder4Q);
    CHECK_FALSE(benchmark_from_name("nope").has_value());
}

TEST_CASE("adder truth tables") {
    // 4-qubit adder: |a,b,c,0> -> |a, b, a^b^c, majority(a,b,c)>.
    const Circuit adder4 = benchmark_circuit(BenchmarkId::Adder4Q);
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            for (std::size_t c = 0; c < 2; ++c) {
                const std::size_t sum = a ^ b ^ c;
                const std::size_t carry = (a & b) ^ (b & c) ^ (a & c);
                const std::size_t in = (a << 3) | (b << 2) | (c << 1);
                const std::size_t expect = (a << 3) | (b << 2) | (sum << 1) | carry;
                const StateVector out = run_circuit(adder4, StateVector::basis(16, in));
                CHECK(std::abs(out[expect] - 1.0) < 1e-12);
            }
        }
    }

    // 5-qubit adder: |a,b,c,0,0> -> |a, b, c, a^b^c, majority(a,b,c)>.
    const Circuit adder5 = benchmark_circuit(BenchmarkId::Adder5Q);
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            for (std::size_t c = 0; c < 2; ++c) {
                const std::size_t sum = a ^ b ^ c;
                const std::size_t carry = (a & b) ^ (b & c) ^ (a & c);
                const std::size_t in = (a << 4) | (b << 3) | (c << 2);
                const std::size_t expect = (a << 4) | (b << 3) | (c << 2) | (sum << 1) | carry;
                const StateVector out = run_circuit(adder5, StateVector::basis(32, in));
                CHECK(std::abs(out[expect] - 1.0) < 1e-12);
            }
        }
    }
}

TEST_CASE("one-qubit gate matrices are the standard ones") {
    // Spot-check S, T, Y and the rotations through their action on
    // basis states.
    StateVector one = StateVector::basis(2, 1);
    StateVector s1 = apply_gate(one, Gate::make(GateKind::S, {0}), 1);
    CHECK(std::abs(s1[1] - cplx(0.0, 1.0)) < 1e-15);
    StateVector t1 = apply_gate(one, Gate::make(GateKind::T, {0}), 1);
    CHECK(std::abs(t1[1] - std::polar(1.0, M_PI / 4.0)) < 1e-15);
    StateVector sdg = apply_gate(s1, Gate::make(GateKind::Sdg, {0}), 1);
    CHECK(max_abs_diff(sdg, one) < 1e-15);
    StateVector tdg = apply_gate(t1, Gate::make(GateKind::Tdg, {0}), 1);
    CHECK(max_abs_diff(tdg, one) < 1e-15);

    StateVector y0 = apply_gate(StateVector::basis(2, 0), Gate::make(GateKind::Y, {0}), 1);
    CHECK(std::abs(y0[1] - cplx(0.0, 1.0)) < 1e-15);

    // RY(theta)|0> = cos(theta/2)|0> + sin(theta/2)|1>
    StateVector ry = apply_gate(StateVector::basis(2, 0), Gate::make(GateKind::RY, {0}, 0.9), 1);
    CHECK(std::abs(ry[0] - std::cos(0.45)) < 1e-15);
    CHECK(std::abs(ry[1] - std::sin(0.45)) < 1e-15);

    // RZ(theta)|0> = e^{-i theta/2}|0>
    StateVector rz = apply_gate(StateVector::basis(2, 0), Gate::make(GateKind::RZ, {0}, 0.9), 1);
    CHECK(std::abs(rz[0] - std::polar(1.0, -0.45)) < 1e-15);

    // RX(pi)|0> = -i|1>
    StateVector rx = apply_gate(StateVector::basis(2, 0), Gate::make(GateKind::RX, {0}, M_PI), 1);
    CHECK(std::abs(rx[1] - cplx(0.0, -1.0)) < 1e-12);
}

TEST_CASE("circuit text: round trips") {
    for (BenchmarkId id : {BenchmarkId::Random4Q17, BenchmarkId::Bell2Q, BenchmarkId::Adder4Q,
                           BenchmarkId::Adder5Q}) {
        const Circuit c = benchmark_circuit(id);
        const Circuit back = parse_circuit(serialize_circuit(c), c.name);
        CHECK(same_gates(c, back));
    }
}

TEST_CASE("circuit text: parsing details and errors") {
    const Circuit c = parse_circuit(
        "# a comment\n"
        "qubits 3\n"
        "\n"
        "h 0\n"
        "cx 0 1   # trailing comment\n"
        "rz 2 0.25\n");
    CHECK(c.num_qubits == 3);
    REQUIRE(c.gates.size() == 3);
    CHECK(c.gates[1].kind == GateKind::CX);
    CHECK(c.gates[2].param == 0.25);

    CHECK_THROWS_AS(parse_circuit("h 0\n"), FormatError);              // header missing
    CHECK_THROWS_AS(parse_circuit("qubits 2\nfoo 0\n"), FormatError);  // unknown mnemonic
    CHECK_THROWS_AS(parse_circuit("qubits 2\nh zero\n"), FormatError); // bad index
    CHECK_THROWS_AS(parse_circuit("qubits 2\nrz 0 x\n"), FormatError); // bad angle
    CHECK_THROWS_AS(parse_circuit("qubits 2\nrz 0\n"), FormatError);   // angle missing
    CHECK_THROWS_AS(parse_circuit("qubits 2\nh 5\n"), ValidationError);
    CHECK_THROWS_AS(parse_circuit("qubits 0\nh 0\n"), FormatError);
    CHECK_THROWS_AS(load_circuit("/nonexistent/path.qc"), FormatError);
}
