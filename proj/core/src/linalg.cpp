// SPDX-License-Identifier: Apache-2.0

#include "uqnn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "uqnn/errors.hpp"

namespace uqnn {

namespace {

// Residual norms below kDependenceRel * ||column|| count as linearly
// dependent; the rescue perturbation is kRescueRel * max(1, ||column||).
constexpr double kDependenceRel = 1e-12;
constexpr double kRescueRel = 1e-8;

double vec_norm(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const cplx& a : v) s += std::norm(a);
    return std::sqrt(s);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw ShapeError("matrix data length " + std::to_string(data_.size()) +
                         " does not match " + std::to_string(rows_) + "x" +
                         std::to_string(cols_));
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

bool ComplexMatrix::is_finite() const {
    for (const cplx& a : data_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
    }
    return true;
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw ShapeError("basis index " + std::to_string(index) +
                         " out of range for dim " + std::to_string(dim));
    }
    StateVector v(dim);
    v[index] = 1.0;
    return v;
}

double StateVector::norm() const {
    double s = 0.0;
    for (const cplx& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

bool StateVector::is_normalized(double tol) const {
    double s = 0.0;
    for (const cplx& a : amps_) s += std::norm(a);
    return std::abs(s - 1.0) <= tol;
}

bool StateVector::is_finite() const {
    for (const cplx& a : amps_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
    }
    return true;
}

cplx inner(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) {
        throw ShapeError("inner product of vectors with dims " + std::to_string(a.dim()) +
                         " and " + std::to_string(b.dim()));
    }
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("matmul shape mismatch: " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
    }
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

StateVector matvec(const ComplexMatrix& m, const StateVector& x) {
    if (m.cols() != x.dim()) {
        throw ShapeError("matvec shape mismatch: " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " * dim " + std::to_string(x.dim()));
    }
    StateVector y(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

ComplexMatrix conj_transpose(const ComplexMatrix& m) {
    ComplexMatrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            t(j, i) = std::conj(m(i, j));
        }
    }
    return t;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError("add shape mismatch");
    }
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.data().size(); ++i) c.data()[i] = a.data()[i] + b.data()[i];
    return c;
}

ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError("subtract shape mismatch");
    }
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.data().size(); ++i) c.data()[i] = a.data()[i] - b.data()[i];
    return c;
}

ComplexMatrix scale(const cplx& s, const ComplexMatrix& m) {
    ComplexMatrix c(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.data().size(); ++i) c.data()[i] = s * m.data()[i];
    return c;
}

double frobenius_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (const cplx& a : m.data()) s += std::norm(a);
    return std::sqrt(s);
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError("frobenius_distance shape mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) s += std::norm(a.data()[i] - b.data()[i]);
    return std::sqrt(s);
}

double unitarity_error(const ComplexMatrix& m) {
    if (!m.square()) {
        throw ShapeError("unitarity_error requires a square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    const std::size_t d = m.rows();
    double err = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < d; ++k) s += std::conj(m(k, i)) * m(k, j);
            if (i == j) s -= 1.0;
            err += std::norm(s);
        }
    }
    return std::sqrt(err);
}

StateVector rescue_dependent_column(const StateVector& v, double epsilon) {
    StateVector out = v;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < out.dim(); ++i) {
        if (out[i] != cplx(0.0)) {
            idx = i;
            break;
        }
    }
    out[idx] += epsilon;
    return out;
}

ComplexMatrix gram_schmidt(const ComplexMatrix& m) {
    if (!m.square()) {
        throw ShapeError("gram_schmidt requires a square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    const std::size_t d = m.rows();
    ComplexMatrix q(d, d);

    std::vector<cplx> work(d), resid(d);
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t i = 0; i < d; ++i) work[i] = m(i, k);
        const double eps = kRescueRel * std::max(1.0, vec_norm(work));

        std::size_t attempt = 0;
        for (;;) {
            resid = work;
            // Modified Gram-Schmidt against finalized columns, then one
            // reorthogonalization sweep to keep the residual orthogonal
            // even after heavy cancellation ("twice is enough").
            for (int sweep = 0; sweep < 2; ++sweep) {
                for (std::size_t j = 0; j < k; ++j) {
                    cplx proj = 0.0;
                    for (std::size_t i = 0; i < d; ++i) proj += std::conj(q(i, j)) * resid[i];
                    for (std::size_t i = 0; i < d; ++i) resid[i] -= proj * q(i, j);
                }
            }
            const double rnorm = vec_norm(resid);
            if (rnorm > kDependenceRel * vec_norm(work)) {
                for (std::size_t i = 0; i < d; ++i) q(i, k) = resid[i] / rnorm;
                break;
            }
            // Dependent (or zero) column. First attempt perturbs the first
            // nonzero component; later attempts walk the components so a
            // direction outside the current span is always reached.
            if (attempt == 0) {
                work = rescue_dependent_column(StateVector(std::move(work)), eps).amplitudes();
            } else {
                work[(attempt - 1) % d] += eps;
            }
            if (++attempt > d + 2) {
                throw Error("gram_schmidt: column rescue failed to converge");
            }
        }
    }
    return q;
}

}  // namespace uqnn
