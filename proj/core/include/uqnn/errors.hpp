// SPDX-License-Identifier: Apache-2.0

#ifndef UQNN_ERRORS_HPP
#define UQNN_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uqnn {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Incompatible matrix/vector dimensions (e.g. matmul of mismatched shapes).
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A precondition on argument values was violated (bad qubit index,
/// out-of-range hyperparameter, non-unitary input where one is required).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Requested problem size exceeds the desk-scale cap (n > 12 qubits).
class SizeCapError : public Error {
public:
    using Error::Error;
};

/// A file does not carry the expected magic/version or is structurally
/// malformed.
class FormatError : public Error {
public:
    using Error::Error;
};

/// A file header's dimensions disagree with the payload it carries.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A file ended before the payload promised by its header.
class TruncatedError : public Error {
public:
    using Error::Error;
};

/// Targets have zero variance, so an R^2 score is undefined.
class DegenerateVarianceError : public Error {
public:
    using Error::Error;
};

/// Training produced a non-finite loss. Carries the epoch at which the
/// divergence was detected and the learning rate in use.
class DivergenceError : public Error {
public:
    DivergenceError(std::size_t epoch, double learning_rate)
        : Error("training diverged at epoch " + std::to_string(epoch) +
                " (learning rate " + std::to_string(learning_rate) + ")"),
          epoch(epoch),
          learning_rate(learning_rate) {}

    std::size_t epoch;
    double learning_rate;
};

}  // namespace uqnn

#endif  // UQNN_ERRORS_HPP
