// SPDX-License-Identifier: Apache-2.0

#ifndef UQNN_LINALG_HPP
#define UQNN_LINALG_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace uqnn {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Sizes in this project never exceed
/// 2^12 x 2^12 and are typically at most 32 x 32, so no attempt is made
/// at sparsity or blocking.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);

    static ComplexMatrix identity(std::size_t dim);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    bool is_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// Complex column vector; holds quantum states (dim = 2^n) as well as
/// matrix columns in transit.
class StateVector {
public:
    StateVector() = default;
    explicit StateVector(std::size_t dim) : amps_(dim) {}
    explicit StateVector(std::vector<cplx> amps) : amps_(std::move(amps)) {}

    /// |index> as a dim-dimensional vector.
    static StateVector basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return amps_.size(); }
    cplx& operator[](std::size_t i) { return amps_[i]; }
    const cplx& operator[](std::size_t i) const { return amps_[i]; }

    const std::vector<cplx>& amplitudes() const { return amps_; }
    std::vector<cplx>& amplitudes() { return amps_; }

    double norm() const;
    bool is_normalized(double tol = 1e-10) const;
    bool is_finite() const;

private:
    std::vector<cplx> amps_;
};

/// <a|b> with the conjugate on the first argument.
cplx inner(const StateVector& a, const StateVector& b);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
StateVector matvec(const ComplexMatrix& m, const StateVector& x);

/// result[j][i] = conj(m[i][j])
ComplexMatrix conj_transpose(const ComplexMatrix& m);

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const cplx& s, const ComplexMatrix& m);

double frobenius_norm(const ComplexMatrix& m);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// || m^dagger m - I ||_F. Zero iff m is unitary.
double unitarity_error(const ComplexMatrix& m);

/// Orthonormalizes the columns of a square matrix with modified
/// Gram-Schmidt (one reorthogonalization sweep per column). Linearly
/// dependent or zero columns are rescued by perturbing a component and
/// retrying, so the result is always unitary; the function never fails
/// on finite input.
ComplexMatrix gram_schmidt(const ComplexMatrix& m);

/// Perturbation applied to a column whose orthogonalized residual fell
/// below the dependence threshold: adds epsilon to the first nonzero
/// component (component 0 for the zero vector). The caller re-runs the
/// orthogonalization step for the returned column.
StateVector rescue_dependent_column(const StateVector& v, double epsilon);

}  // namespace uqnn

#endif  // UQNN_LINALG_HPP
