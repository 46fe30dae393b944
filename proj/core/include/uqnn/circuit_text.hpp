// SPDX-License-Identifier: Apache-2.0

#ifndef UQNN_CIRCUIT_TEXT_HPP
#define UQNN_CIRCUIT_TEXT_HPP

#include <iosfwd>
#include <string>

#include "uqnn/gates.hpp"

namespace uqnn {

/// Circuit text format: a header line `qubits N`, then one gate per
/// line as a lowercase mnemonic followed by space-separated qubit
/// indices and, for rotations, an angle in radians. `#` starts a
/// comment; blank lines are ignored.
///
///     qubits 3
///     h 0
///     cx 0 1
///     ccx 1 2 0
///     rz 0 0.7853981634
std::string serialize_circuit(const Circuit& c);
void write_circuit(std::ostream& out, const Circuit& c);

/// Parses the text format. Throws FormatError for syntax problems and
/// ValidationError for well-formed but invalid gates.
Circuit parse_circuit(const std::string& text, const std::string& name = "");
Circuit read_circuit(std::istream& in, const std::string& name = "");

/// File helpers; failures to open surface as FormatError.
Circuit load_circuit(const std::string& path);
void save_circuit(const std::string& path, const Circuit& c);

}  // namespace uqnn

#endif  // UQNN_CIRCUIT_TEXT_HPP
