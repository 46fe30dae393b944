// SPDX-License-Identifier: Apache-2.0

#ifndef UQNN_TEST_HELPERS_HPP
#define UQNN_TEST_HELPERS_HPP

#include <cmath>
#include <complex>
#include <initializer_list>
#include <random>
#include <vector>

#include "uqnn/linalg.hpp"

namespace uqnn::testing {

/// Builds a matrix from nested row lists, e.g. mat({{1, 0}, {0, 1}}).
inline ComplexMatrix mat(std::initializer_list<std::initializer_list<cplx>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = rows.begin()->size();
    ComplexMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (const auto& v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

inline StateVector vec(std::initializer_list<cplx> amps) {
    return StateVector(std::vector<cplx>(amps));
}

/// Largest entrywise modulus difference between two equal-shape matrices.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
        }
    }
    return worst;
}

inline double max_abs_diff(const StateVector& a, const StateVector& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

/// Dense complex matrix with i.i.d. standard normal entries.
inline ComplexMatrix random_complex_matrix(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix m(dim, dim);
    for (auto& v : m.data()) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v = cplx(re, im);
    }
    return m;
}

/// Haar-style random unitary: orthonormalized Gaussian matrix.
inline ComplexMatrix random_unitary(std::size_t dim, std::mt19937_64& rng) {
    return gram_schmidt(random_complex_matrix(dim, rng));
}

inline StateVector random_vector(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> amps(dim);
    for (auto& a : amps) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        a = cplx(re, im);
    }
    return StateVector(std::move(amps));
}

}  // namespace uqnn::testing

#endif  // UQNN_TEST_HELPERS_HPP
