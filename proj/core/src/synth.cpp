// SPDX-License-Identifier: Apache-2.0

#include "uqnn/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <utility>

#include "uqnn/errors.hpp"
#include "uqnn/simulate.hpp"

namespace uqnn {

namespace {

// Entries smaller than this are treated as already eliminated, so no
// rotation is synthesized for pure float noise.
constexpr double kZeroTol = 1e-12;

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

std::size_t log2_exact(std::size_t v) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < v) ++n;
    return n;
}

ComplexMatrix make_block(cplx b00, cplx b01, cplx b10, cplx b11) {
    ComplexMatrix b(2, 2);
    b(0, 0) = b00;
    b(0, 1) = b01;
    b(1, 0) = b10;
    b(1, 1) = b11;
    return b;
}

// Left-multiplies the working matrix by a two-level op in place:
// rows i and j mix, everything else stays.
void apply_two_level(ComplexMatrix& a, const TwoLevelOp& op) {
    const std::size_t d = a.cols();
    for (std::size_t col = 0; col < d; ++col) {
        const cplx vi = a(op.i, col);
        const cplx vj = a(op.j, col);
        a(op.i, col) = op.block(0, 0) * vi + op.block(0, 1) * vj;
        a(op.j, col) = op.block(1, 0) * vi + op.block(1, 1) * vj;
    }
}

bool block_is_identity(const ComplexMatrix& b, double tol) {
    return std::abs(b(0, 0) - 1.0) <= tol && std::abs(b(1, 1) - 1.0) <= tol &&
           std::abs(b(0, 1)) <= tol && std::abs(b(1, 0)) <= tol;
}

bool block_is_x(const ComplexMatrix& b, double tol) {
    return std::abs(b(0, 1) - 1.0) <= tol && std::abs(b(1, 0) - 1.0) <= tol &&
           std::abs(b(0, 0)) <= tol && std::abs(b(1, 1)) <= tol;
}

ComplexMatrix block_conj_transpose(const ComplexMatrix& b) {
    return make_block(std::conj(b(0, 0)), std::conj(b(1, 0)), std::conj(b(0, 1)),
                      std::conj(b(1, 1)));
}

ComplexMatrix x_conjugate(const ComplexMatrix& b) {
    // X B X swaps both the rows and the columns.
    return make_block(b(1, 1), b(1, 0), b(0, 1), b(0, 0));
}

// Accumulates gates plus the global phase the gate stream is missing:
// the intended operator equals e^{i phase} times the product of the
// emitted gates.
class Emitter {
  public:
    explicit Emitter(std::size_t num_qubits) {
        circuit_.num_qubits = num_qubits;
    }

    Circuit take_circuit() { return std::move(circuit_); }
    double phase() const { return phase_; }

    void x(std::size_t q) { circuit_.gates.push_back(Gate::make(GateKind::X, {q})); }

    void rotation(GateKind kind, std::size_t q, double angle) {
        if (std::abs(angle) < kZeroTol) return;  // RZ(0) = RY(0) = I exactly
        circuit_.gates.push_back(Gate::make(kind, {q}, angle));
    }

    void cx(std::size_t c, std::size_t t) {
        circuit_.gates.push_back(Gate::make(GateKind::CX, {c, t}));
    }

    void ccx(std::size_t c1, std::size_t c2, std::size_t t) {
        circuit_.gates.push_back(Gate::make(GateKind::CCX, {c1, c2, t}));
    }

    // Single-qubit op: m = e^{i phi} RZ(a) RY(b) RZ(g). Gate order is
    // rightmost factor first; the phase goes to the global tally.
    void unitary1q(std::size_t q, const ComplexMatrix& m) {
        const ZYZAngles z = zyz_angles(m);
        rotation(GateKind::RZ, q, z.gamma);
        rotation(GateKind::RY, q, z.beta);
        rotation(GateKind::RZ, q, z.alpha);
        phase_ += z.phase;
    }

    // Controlled single-qubit op via the ABC construction:
    // C(m) = P_c(phi) A_t CX B_t CX C_t with A B C = I and
    // A X B X C = RZ(a) RY(b) RZ(g). The control phase diag(1, e^{i phi})
    // is emitted as RZ(phi) on the control, which is off by a global
    // e^{i phi/2}.
    void controlled1q(std::size_t c, std::size_t t, const ComplexMatrix& m) {
        if (block_is_identity(m, kZeroTol)) return;
        if (block_is_x(m, kZeroTol)) {
            cx(c, t);
            return;
        }
        const ZYZAngles z = zyz_angles(m);
        // C = RZ((g - a)/2)
        rotation(GateKind::RZ, t, (z.gamma - z.alpha) / 2.0);
        cx(c, t);
        // B = RY(-b/2) RZ(-(g + a)/2)
        rotation(GateKind::RZ, t, -(z.gamma + z.alpha) / 2.0);
        rotation(GateKind::RY, t, -z.beta / 2.0);
        cx(c, t);
        // A = RZ(a) RY(b/2)
        rotation(GateKind::RY, t, z.beta / 2.0);
        rotation(GateKind::RZ, t, z.alpha);
        if (std::abs(z.phase) >= kZeroTol) {
            rotation(GateKind::RZ, c, z.phase);
            phase_ += z.phase / 2.0;
        }
    }

    // Multi-controlled single-qubit op, all controls positive.
    // Ancilla-free: for k >= 2 controls and V = sqrt(m),
    //   C^k(m) = C^{k-1}(V on t) MCX C(V! on t) MCX C(V on t)
    // applied as: C(V; c_k -> t), MCX(c_1..c_{k-1} -> c_k),
    // C(V^dagger; c_k -> t), MCX again, then C^{k-1}(V; c_1..c_{k-1} -> t).
    // X with two controls short-circuits to the CCX primitive.
    void multi_controlled(std::vector<std::size_t> controls, std::size_t t,
                          const ComplexMatrix& m) {
        if (block_is_identity(m, kZeroTol)) return;
        if (controls.empty()) {
            if (block_is_x(m, kZeroTol)) {
                x(t);
            } else {
                unitary1q(t, m);
            }
            return;
        }
        if (controls.size() == 1) {
            controlled1q(controls[0], t, m);
            return;
        }
        if (controls.size() == 2 && block_is_x(m, kZeroTol)) {
            ccx(controls[0], controls[1], t);
            return;
        }
        const ComplexMatrix v = sqrt_unitary_2x2(m);
        const std::size_t last = controls.back();
        std::vector<std::size_t> rest(controls.begin(), controls.end() - 1);
        controlled1q(last, t, v);
        multi_controlled(rest, last, make_block(0.0, 1.0, 1.0, 0.0));
        controlled1q(last, t, block_conj_transpose(v));
        multi_controlled(rest, last, make_block(0.0, 1.0, 1.0, 0.0));
        multi_controlled(rest, t, v);
    }

    // Multi-controlled op with per-control polarity (true = control on
    // |1>); negative controls are X-wrapped.
    void multi_controlled_mixed(const std::vector<std::pair<std::size_t, bool>>& controls,
                                std::size_t t, const ComplexMatrix& m) {
        std::vector<std::size_t> qubits;
        qubits.reserve(controls.size());
        for (const auto& [q, pol] : controls) {
            if (!pol) x(q);
            qubits.push_back(q);
        }
        multi_controlled(std::move(qubits), t, m);
        for (const auto& [q, pol] : controls) {
            if (!pol) x(q);
        }
    }

  private:
    Circuit circuit_;
    double phase_ = 0.0;
};

}  // namespace

ComplexMatrix two_level_matrix(const TwoLevelOp& op) {
    if (!(op.i < op.j && op.j < op.dim)) {
        throw ShapeError("two_level_matrix: need i < j < dim");
    }
    if (op.block.rows() != 2 || op.block.cols() != 2) {
        throw ShapeError("two_level_matrix: block must be 2x2");
    }
    ComplexMatrix m = ComplexMatrix::identity(op.dim);
    m(op.i, op.i) = op.block(0, 0);
    m(op.i, op.j) = op.block(0, 1);
    m(op.j, op.i) = op.block(1, 0);
    m(op.j, op.j) = op.block(1, 1);
    return m;
}

std::vector<TwoLevelOp> two_level_decompose(const ComplexMatrix& u) {
    if (!u.square() || u.rows() < 2 || !is_power_of_two(u.rows())) {
        throw ShapeError("two_level_decompose: matrix must be square with dim = 2^n, n >= 1");
    }
    const double uerr = unitarity_error(u);
    if (uerr > 1e-8) {
        char msg[96];
        std::snprintf(msg, sizeof(msg),
                      "two_level_decompose: input is not unitary (error %.3g)", uerr);
        throw ValidationError(msg);
    }

    const std::size_t d = u.rows();
    ComplexMatrix a = u;
    std::vector<TwoLevelOp> ops;

    // Columns 0..d-3: zero the below-diagonal entries with Givens-style
    // rotations mixing rows (c, r). Once the subcolumn is clear the
    // pivot is forced to modulus ~1; if no rotation fired the leftover
    // pivot phase is removed with a diagonal two-level op.
    for (std::size_t c = 0; c + 2 < d; ++c) {
        bool fired = false;
        for (std::size_t r = c + 1; r < d; ++r) {
            const cplx b = a(r, c);
            if (std::abs(b) <= kZeroTol) continue;
            const cplx pivot = a(c, c);
            const double nrm = std::sqrt(std::norm(pivot) + std::norm(b));
            TwoLevelOp op{d, c, r,
                          make_block(std::conj(pivot) / nrm, std::conj(b) / nrm,
                                     b / nrm, -pivot / nrm)};
            apply_two_level(a, op);
            ops.push_back(std::move(op));
            fired = true;
        }
        if (!fired && std::abs(a(c, c) - 1.0) > kZeroTol) {
            const cplx phase = a(c, c) / std::abs(a(c, c));
            TwoLevelOp op{d, c, c + 1, make_block(std::conj(phase), 0.0, 0.0, 1.0)};
            apply_two_level(a, op);
            ops.push_back(std::move(op));
        }
    }

    // The remaining 2x2 corner is cleared with a single inverse op,
    // which also absorbs both trailing diagonal phases. This keeps the
    // op count within dim(dim-1)/2.
    ComplexMatrix corner = make_block(a(d - 2, d - 2), a(d - 2, d - 1),
                                      a(d - 1, d - 2), a(d - 1, d - 1));
    if (!block_is_identity(corner, kZeroTol)) {
        TwoLevelOp op{d, d - 2, d - 1, block_conj_transpose(gram_schmidt(corner))};
        apply_two_level(a, op);
        ops.push_back(std::move(op));
    }
    return ops;
}

ZYZAngles zyz_angles(const ComplexMatrix& u) {
    if (u.rows() != 2 || u.cols() != 2) throw ShapeError("zyz_angles: matrix must be 2x2");

    const cplx u00 = u(0, 0);
    const cplx u01 = u(0, 1);
    const cplx u10 = u(1, 0);
    const cplx u11 = u(1, 1);

    ZYZAngles z;
    z.beta = 2.0 * std::atan2(std::abs(u10), std::abs(u00));

    // e^{i phi} RZ(a) RY(b) RZ(g) =
    //   e^{i phi} [ e^{-i(a+g)/2} cos(b/2)   -e^{-i(a-g)/2} sin(b/2) ]
    //             [ e^{ i(a-g)/2} sin(b/2)    e^{ i(a+g)/2} cos(b/2) ]
    // so for generic beta the entry arguments give a, g, phi directly.
    constexpr double kGimbal = 1e-11;
    if (std::abs(u10) < kGimbal) {
        // Near-diagonal: convention gamma = 0.
        z.gamma = 0.0;
        z.alpha = std::arg(u11) - std::arg(u00);
        z.phase = (std::arg(u00) + std::arg(u11)) / 2.0;
    } else if (std::abs(u00) < kGimbal) {
        // Near-antidiagonal: convention gamma = 0; u01 = -e^{i(phi-a/2)},
        // u10 = e^{i(phi+a/2)}.
        z.gamma = 0.0;
        z.alpha = std::arg(u10) - std::arg(-u01);
        z.phase = (std::arg(u10) + std::arg(-u01)) / 2.0;
    } else {
        z.alpha = std::arg(u10) - std::arg(u00);
        z.gamma = std::arg(u11) - std::arg(u10);
        z.phase = (std::arg(u00) + std::arg(u11)) / 2.0;
    }
    return z;
}

ComplexMatrix zyz_matrix(const ZYZAngles& z) {
    const cplx ph = std::polar(1.0, z.phase);
    const double cb = std::cos(z.beta / 2.0);
    const double sb = std::sin(z.beta / 2.0);
    return make_block(ph * std::polar(1.0, -(z.alpha + z.gamma) / 2.0) * cb,
                      -ph * std::polar(1.0, -(z.alpha - z.gamma) / 2.0) * sb,
                      ph * std::polar(1.0, (z.alpha - z.gamma) / 2.0) * sb,
                      ph * std::polar(1.0, (z.alpha + z.gamma) / 2.0) * cb);
}

ComplexMatrix sqrt_unitary_2x2(const ComplexMatrix& u) {
    if (u.rows() != 2 || u.cols() != 2) {
        throw ShapeError("sqrt_unitary_2x2: matrix must be 2x2");
    }
    // u = e^{i delta} (cos t I + i sin t n.sigma); halve delta and t.
    const cplx det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    const double delta = std::arg(det) / 2.0;
    const cplx unphase = std::polar(1.0, -delta);
    const cplx m00 = unphase * u(0, 0);
    const cplx m01 = unphase * u(0, 1);
    const cplx m10 = unphase * u(1, 0);
    const cplx m11 = unphase * u(1, 1);

    const double c = std::clamp((m00.real() + m11.real()) / 2.0, -1.0, 1.0);
    double nx = (m01.imag() + m10.imag()) / 2.0;
    double ny = (m01.real() - m10.real()) / 2.0;
    double nz = (m00.imag() - m11.imag()) / 2.0;
    const double s = std::sqrt(nx * nx + ny * ny + nz * nz);
    double theta;
    if (s < 1e-14) {
        nx = 0.0;
        ny = 0.0;
        nz = 1.0;  // axis is free at t in {0, pi}; pick z
        theta = c >= 0.0 ? 0.0 : std::numbers::pi;
    } else {
        nx /= s;
        ny /= s;
        nz /= s;
        theta = std::atan2(s, c);
    }

    const double ch = std::cos(theta / 2.0);
    const double sh = std::sin(theta / 2.0);
    const cplx half_phase = std::polar(1.0, delta / 2.0);
    return make_block(half_phase * cplx(ch, nz * sh),
                      half_phase * cplx(ny * sh, nx * sh),
                      half_phase * cplx(-ny * sh, nx * sh),
                      half_phase * cplx(ch, -nz * sh));
}

SynthesizedCircuit synthesize(const ComplexMatrix& u) {
    if (!u.square() || u.rows() < 2 || !is_power_of_two(u.rows())) {
        throw ShapeError("synthesize: matrix must be square with dim = 2^n, n >= 1");
    }
    if (u.rows() > (std::size_t{1} << 12)) {
        throw SizeCapError("synthesize: dimension exceeds the 12-qubit cap");
    }
    const double uerr = unitarity_error(u);
    if (uerr > 1e-6) {
        char msg[80];
        std::snprintf(msg, sizeof(msg), "synthesize: input is not unitary (error %.3g)", uerr);
        throw ValidationError(msg);
    }
    // Inputs that are only approximately unitary (a learned model just
    // off the manifold) are snapped before exact factoring.
    const ComplexMatrix& work = (uerr > 1e-8) ? gram_schmidt(u) : u;

    const std::size_t d = work.rows();
    const std::size_t n = log2_exact(d);
    const std::vector<TwoLevelOp> ops = two_level_decompose(work);

    // u = V_1^dagger ... V_k^dagger, and a gate list applies left to
    // right, so the factor V_k^dagger is emitted first.
    Emitter em(n);
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        const TwoLevelOp& op = *it;
        const ComplexMatrix factor = block_conj_transpose(op.block);

        if (n == 1) {
            em.unitary1q(0, factor);
            continue;
        }

        // Gray-code conditioning: flip the bits where i and j differ,
        // highest first, leaving one differing bit for the controlled
        // block. Each step is an all-but-one-controlled X exchanging
        // exactly two basis states.
        std::vector<std::size_t> diff_bits;
        for (std::size_t p = n; p-- > 0;) {
            if (((op.i ^ op.j) >> p) & 1U) diff_bits.push_back(p);
        }
        const std::size_t last_bit = diff_bits.back();
        diff_bits.pop_back();

        std::vector<std::size_t> path{op.i};
        for (std::size_t p : diff_bits) path.push_back(path.back() ^ (std::size_t{1} << p));
        const std::size_t staged = path.back();  // differs from j in last_bit only

        auto conditioning_step = [&](std::size_t t) {
            const std::size_t state = path[t + 1];
            const std::size_t flip = diff_bits[t];
            std::vector<std::pair<std::size_t, bool>> controls;
            for (std::size_t p = 0; p < n; ++p) {
                if (p == flip) continue;
                controls.emplace_back(n - 1 - p, ((state >> p) & 1U) != 0);
            }
            em.multi_controlled_mixed(controls, n - 1 - flip,
                                      make_block(0.0, 1.0, 1.0, 0.0));
        };

        for (std::size_t t = 0; t < diff_bits.size(); ++t) conditioning_step(t);

        // The controlled block: target is the remaining differing bit,
        // controls match the shared bits of (staged, j). The 2x2 basis
        // is ordered by that bit's value, so when the staged state has
        // the bit set the block is X-conjugated.
        std::vector<std::pair<std::size_t, bool>> controls;
        for (std::size_t p = 0; p < n; ++p) {
            if (p == last_bit) continue;
            controls.emplace_back(n - 1 - p, ((op.j >> p) & 1U) != 0);
        }
        const bool staged_high = ((staged >> last_bit) & 1U) != 0;
        em.multi_controlled_mixed(controls, n - 1 - last_bit,
                                  staged_high ? x_conjugate(factor) : factor);

        for (std::size_t t = diff_bits.size(); t-- > 0;) conditioning_step(t);
    }

    SynthesizedCircuit result;
    result.circuit = em.take_circuit();
    result.circuit.name = "synthesized";
    result.gate_count = result.circuit.gates.size();

    double phase = std::remainder(em.phase(), 2.0 * std::numbers::pi);
    result.global_phase = phase;

    const ComplexMatrix recon = circuit_unitary(result.circuit);
    const cplx align = std::polar(1.0, phase);
    double err_sq = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            err_sq += std::norm(align * recon(r, c) - u(r, c));
        }
    }
    result.reconstruction_error = std::sqrt(err_sq);
    return result;
}

std::string emit_qasm(const Circuit& c, std::optional<double> global_phase) {
    c.validate();
    std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    if (global_phase.has_value()) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "// global phase: %.17g\n", *global_phase);
        out += buf;
    }
    out += "qreg q[" + std::to_string(c.num_qubits) + "];\n";
    for (const Gate& g : c.gates) {
        out += gate_mnemonic(g.kind);
        if (g.param.has_value()) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "(%.17g)", *g.param);
            out += buf;
        }
        out.push_back(' ');
        for (std::size_t k = 0; k < g.targets.size(); ++k) {
            if (k > 0) out.push_back(',');
            out += "q[" + std::to_string(g.targets[k]) + "]";
        }
        out += ";\n";
    }
    return out;
}

}  // namespace uqnn
