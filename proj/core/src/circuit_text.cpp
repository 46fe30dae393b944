// SPDX-License-Identifier: Apache-2.0

#include "uqnn/circuit_text.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "uqnn/errors.hpp"

namespace uqnn {

namespace {

std::string format_angle(double angle) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", angle);
    return buf;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
        if (tok.front() == '#') break;
        tokens.push_back(tok);
    }
    return tokens;
}

std::size_t parse_index(const std::string& tok, std::size_t line_no) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw FormatError("line " + std::to_string(line_no) + ": expected qubit index, got '" +
                          tok + "'");
    }
    return value;
}

double parse_angle(const std::string& tok, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double value = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return value;
    } catch (const std::exception&) {
        throw FormatError("line " + std::to_string(line_no) + ": expected angle, got '" + tok +
                          "'");
    }
}

}  // namespace

void write_circuit(std::ostream& out, const Circuit& c) {
    out << "qubits " << c.num_qubits << "\n";
    for (const Gate& g : c.gates) {
        out << gate_mnemonic(g.kind);
        for (std::size_t q : g.targets) out << ' ' << q;
        if (g.param) out << ' ' << format_angle(*g.param);
        out << "\n";
    }
}

std::string serialize_circuit(const Circuit& c) {
    std::ostringstream out;
    write_circuit(out, c);
    return out.str();
}

Circuit read_circuit(std::istream& in, const std::string& name) {
    Circuit c{0, {}, name};
    bool header_seen = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (!header_seen) {
            if (tokens[0] != "qubits" || tokens.size() != 2) {
                throw FormatError("line " + std::to_string(line_no) +
                                  ": expected header 'qubits N'");
            }
            c.num_qubits = parse_index(tokens[1], line_no);
            if (c.num_qubits == 0) {
                throw FormatError("line " + std::to_string(line_no) + ": qubit count must be > 0");
            }
            header_seen = true;
            continue;
        }
        const auto kind = gate_from_mnemonic(tokens[0]);
        if (!kind) {
            throw FormatError("line " + std::to_string(line_no) + ": unknown gate '" + tokens[0] +
                              "'");
        }
        const std::size_t arity = gate_arity(*kind);
        const bool wants_angle = gate_has_param(*kind);
        if (tokens.size() != 1 + arity + (wants_angle ? 1 : 0)) {
            throw FormatError("line " + std::to_string(line_no) + ": gate '" + tokens[0] +
                              "' takes " + std::to_string(arity) + " qubit(s)" +
                              (wants_angle ? " and an angle" : ""));
        }
        Gate g;
        g.kind = *kind;
        for (std::size_t i = 0; i < arity; ++i) {
            g.targets.push_back(parse_index(tokens[1 + i], line_no));
        }
        if (wants_angle) g.param = parse_angle(tokens[1 + arity], line_no);
        validate_gate(g, c.num_qubits);
        c.gates.push_back(std::move(g));
    }
    if (!header_seen) throw FormatError("missing 'qubits N' header");
    return c;
}

Circuit parse_circuit(const std::string& text, const std::string& name) {
    std::istringstream in(text);
    return read_circuit(in, name);
}

Circuit load_circuit(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open circuit file '" + path + "'");
    return read_circuit(in, path);
}

void save_circuit(const std::string& path, const Circuit& c) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write circuit file '" + path + "'");
    write_circuit(out, c);
}

}  // namespace uqnn
