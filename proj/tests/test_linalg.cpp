// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include <doctest.h>

#include "test_helpers.hpp"
#include "uqnn/errors.hpp"
#include "uqnn/linalg.hpp"

using namespace uqnn;
using namespace uqnn::testing;

namespace {

// Independent unitarity oracle: forms m^dagger m entry by entry and
// expands the Frobenius sum by hand.
double unitarity_error_oracle(const ComplexMatrix& m) {
    const std::size_t d = m.rows();
    double sum = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            cplx acc(0.0, 0.0);
            for (std::size_t k = 0; k < d; ++k) acc += std::conj(m(k, i)) * m(k, j);
            if (i == j) acc -= 1.0;
            sum += acc.real() * acc.real() + acc.imag() * acc.imag();
        }
    }
    return std::sqrt(sum);
}

}  // namespace

TEST_CASE("ComplexMatrix basics") {
    ComplexMatrix m(2, 3);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK_FALSE(m.square());
    CHECK(m(1, 2) == cplx(0.0, 0.0));

    CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<cplx>(3)), ShapeError);

    ComplexMatrix id = ComplexMatrix::identity(3);
    CHECK(id(0, 0) == cplx(1.0, 0.0));
    CHECK(id(0, 1) == cplx(0.0, 0.0));
    CHECK(id.is_finite());

    ComplexMatrix bad(1, 1);
    bad(0, 0) = cplx(std::nan(""), 0.0);
    CHECK_FALSE(bad.is_finite());
}

TEST_CASE("StateVector basics") {
    StateVector v = StateVector::basis(4, 2);
    CHECK(v.dim() == 4);
    CHECK(v[2] == cplx(1.0, 0.0));
    CHECK(v.norm() == doctest::Approx(1.0));
    CHECK(v.is_normalized());

    StateVector w = vec({cplx(1.0, 0.0), cplx(1.0, 0.0)});
    CHECK_FALSE(w.is_normalized());
    CHECK(w.norm() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("matmul: identity, permutation, Hadamard square") {
    const ComplexMatrix m = mat({{cplx(1, 2), cplx(3, -1)}, {cplx(0, 1), cplx(-2, 0)}});
    CHECK(max_abs_diff(matmul(ComplexMatrix::identity(2), m), m) == 0.0);

    // Pauli-X flips a basis vector.
    const ComplexMatrix x = mat({{0, 1}, {1, 0}});
    StateVector flipped = matvec(x, StateVector::basis(2, 0));
    CHECK(flipped[0] == cplx(0.0, 0.0));
    CHECK(flipped[1] == cplx(1.0, 0.0));

    const double s = 1.0 / std::sqrt(2.0);
    const ComplexMatrix h = mat({{s, s}, {s, -s}});
    CHECK(max_abs_diff(matmul(h, h), ComplexMatrix::identity(2)) < 1e-12);

    CHECK_THROWS_AS(matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), ShapeError);
    CHECK_THROWS_AS(matvec(ComplexMatrix(2, 2), StateVector(3)), ShapeError);
}

TEST_CASE("conj_transpose") {
    const ComplexMatrix sym = mat({{1, 2}, {2, 5}});
    CHECK(max_abs_diff(conj_transpose(sym), sym) == 0.0);

    const ComplexMatrix a = mat({{0, cplx(0, 1)}, {0, 0}});
    const ComplexMatrix at = conj_transpose(a);
    CHECK(at(0, 0) == cplx(0.0, 0.0));
    CHECK(at(0, 1) == cplx(0.0, 0.0));
    CHECK(at(1, 0) == cplx(0.0, -1.0));
    CHECK(at(1, 1) == cplx(0.0, 0.0));

    std::mt19937_64 rng(42);
    const ComplexMatrix u = random_complex_matrix(4, rng);
    CHECK(max_abs_diff(conj_transpose(conj_transpose(u)), u) == 0.0);

    // (AB)^dagger = B^dagger A^dagger
    const ComplexMatrix b = random_complex_matrix(4, rng);
    CHECK(max_abs_diff(conj_transpose(matmul(u, b)),
                       matmul(conj_transpose(b), conj_transpose(u))) < 1e-12);
}

TEST_CASE("unitarity_error: identity, scaled identity, projected outputs") {
    CHECK(unitarity_error(ComplexMatrix::identity(4)) == 0.0);

    // 2*I_2: m^dagger m = 4I, so the deviation is diag(3, 3) and the
    // Frobenius norm is sqrt(18). Confirmed against the brute-force
    // expansion oracle.
    ComplexMatrix twice = scale(2.0, ComplexMatrix::identity(2));
    CHECK(unitarity_error(twice) == doctest::Approx(std::sqrt(18.0)).epsilon(1e-14));
    CHECK(unitarity_error_oracle(twice) == doctest::Approx(std::sqrt(18.0)).epsilon(1e-14));
    CHECK(unitarity_error(twice) == doctest::Approx(unitarity_error_oracle(twice)));

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        ComplexMatrix q = gram_schmidt(random_complex_matrix(8, rng));
        CHECK(unitarity_error(q) <= 1e-10);
        CHECK(unitarity_error(q) == doctest::Approx(unitarity_error_oracle(q)).epsilon(1e-9));
    }

    CHECK_THROWS_AS(unitarity_error(ComplexMatrix(2, 3)), ShapeError);
}

TEST_CASE("gram_schmidt: hand cases") {
    const ComplexMatrix id = ComplexMatrix::identity(5);
    CHECK(max_abs_diff(gram_schmidt(id), id) < 1e-15);

    // Columns (1,0) and (1,1): the second column loses its projection
    // onto the first, leaving exactly (0,1).
    const ComplexMatrix m = mat({{1, 1}, {0, 1}});
    CHECK(max_abs_diff(gram_schmidt(m), ComplexMatrix::identity(2)) < 1e-14);
}

TEST_CASE("gram_schmidt: dependent column rescue") {
    // column 2 = 2 * column 1
    std::mt19937_64 rng(3);
    StateVector c = random_vector(2, rng);
    ComplexMatrix dep(2, 2);
    dep(0, 0) = c[0];
    dep(1, 0) = c[1];
    dep(0, 1) = 2.0 * c[0];
    dep(1, 1) = 2.0 * c[1];
    CHECK(unitarity_error(gram_schmidt(dep)) <= 1e-8);

    // Axis-aligned dependent pair: the first perturbation target is
    // itself in the span, so the rescue has to walk components.
    const ComplexMatrix axis = mat({{1, 2}, {0, 0}});
    CHECK(unitarity_error(gram_schmidt(axis)) <= 1e-8);

    // Zero column.
    const ComplexMatrix zero_col = mat({{1, 0}, {0, 0}});
    CHECK(unitarity_error(gram_schmidt(zero_col)) <= 1e-8);

    // All-zero matrix: every column needs rescuing.
    CHECK(unitarity_error(gram_schmidt(ComplexMatrix(3, 3))) <= 1e-8);
}

TEST_CASE("gram_schmidt: idempotence and unitary fixpoint, n in 1..5") {
    std::mt19937_64 rng(11);
    for (std::size_t n = 1; n <= 5; ++n) {
        const std::size_t d = std::size_t{1} << n;
        for (int trial = 0; trial < 100; ++trial) {
            const ComplexMatrix q1 = gram_schmidt(random_complex_matrix(d, rng));
            CHECK(unitarity_error(q1) <= 1e-10);
            const ComplexMatrix q2 = gram_schmidt(q1);
            CHECK(max_abs_diff(q2, q1) <= 1e-10);
        }
    }
}

TEST_CASE("gram_schmidt: span preservation for independent prefixes") {
    // With independent columns, the k-th output column lies in the span
    // of the first k inputs; check via the residual of projecting input
    // columns onto the output basis prefix.
    std::mt19937_64 rng(23);
    const std::size_t d = 8;
    const ComplexMatrix m = random_complex_matrix(d, rng);
    const ComplexMatrix q = gram_schmidt(m);
    for (std::size_t k = 0; k < d; ++k) {
        // input column k
        StateVector col(d);
        for (std::size_t r = 0; r < d; ++r) col[r] = m(r, k);
        // subtract projections onto output columns 0..k
        for (std::size_t j = 0; j <= k; ++j) {
            StateVector qj(d);
            for (std::size_t r = 0; r < d; ++r) qj[r] = q(r, j);
            const cplx coef = inner(qj, col);
            for (std::size_t r = 0; r < d; ++r) col[r] -= coef * qj[r];
        }
        CHECK(col.norm() < 1e-9);
    }
}

TEST_CASE("rescue_dependent_column") {
    StateVector v = vec({cplx(1.0, 0.0), cplx(2.0, 0.0)});
    StateVector r = rescue_dependent_column(v, 1e-8);
    CHECK(r[0] == cplx(1.0 + 1e-8, 0.0));
    CHECK(r[1] == cplx(2.0, 0.0));

    // Leading zeros are skipped: the first *nonzero* component moves.
    StateVector lead = vec({cplx(0.0, 0.0), cplx(3.0, 0.0)});
    StateVector lr = rescue_dependent_column(lead, 1e-8);
    CHECK(lr[0] == cplx(0.0, 0.0));
    CHECK(lr[1] == cplx(3.0 + 1e-8, 0.0));

    StateVector zero(4);
    StateVector zr = rescue_dependent_column(zero, 1e-8);
    CHECK(zr[0] == cplx(1e-8, 0.0));
    for (std::size_t i = 1; i < 4; ++i) CHECK(zr[i] == cplx(0.0, 0.0));

    // End to end: [c, 2c, e3, e4] comes out unitary.
    std::mt19937_64 rng(5);
    StateVector c = random_vector(4, rng);
    ComplexMatrix m(4, 4);
    for (std::size_t r2 = 0; r2 < 4; ++r2) {
        m(r2, 0) = c[r2];
        m(r2, 1) = 2.0 * c[r2];
    }
    m(2, 2) = 1.0;
    m(3, 3) = 1.0;
    CHECK(unitarity_error(gram_schmidt(m)) <= 1e-8);
}

TEST_CASE("frobenius helpers and inner product") {
    const ComplexMatrix a = mat({{3, 0}, {0, 4}});
    CHECK(frobenius_norm(a) == doctest::Approx(5.0));
    CHECK(frobenius_distance(a, a) == 0.0);

    const StateVector x = vec({cplx(1, 1), cplx(0, 0)});
    const StateVector y = vec({cplx(0, 1), cplx(2, 0)});
    // <x|y> = conj(1+i)*(i) = (1-i)*i = i + 1
    const cplx ip = inner(x, y);
    CHECK(ip.real() == doctest::Approx(1.0));
    CHECK(ip.imag() == doctest::Approx(1.0));
    CHECK_THROWS_AS(inner(x, StateVector(3)), ShapeError);
}
