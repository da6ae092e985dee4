#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "xlingmap/linalg.hpp"
#include "xlingmap/prng.hpp"

using namespace xlingmap;
using linalg::Matrix;

namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, rng::Prng& prng) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = prng.normal();
    return m;
}

Matrix random_spd(std::size_t n, rng::Prng& prng) {
    const Matrix a = random_matrix(n + 3, n, prng);
    Matrix spd = linalg::gram(a);
    for (std::size_t i = 0; i < n; ++i) spd(i, i) += 0.5;
    return spd;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    REQUIRE(a.rows() == b.rows());
    REQUIRE(a.cols() == b.cols());
    double worst = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
    return worst;
}

}  // namespace

TEST_CASE("matmul agrees with the naive oracle") {
    rng::Prng prng(31);
    const Matrix a = random_matrix(7, 5, prng);
    const Matrix b = random_matrix(5, 9, prng);
    REQUIRE(max_abs_diff(linalg::matmul(a, b), oracles::naive_matmul(a, b)) < 1e-12);
}

TEST_CASE("transpose and gram") {
    rng::Prng prng(32);
    const Matrix a = random_matrix(6, 4, prng);
    const Matrix at = linalg::transpose(a);
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) REQUIRE(at(c, r) == a(r, c));

    const Matrix g = linalg::gram(a);
    REQUIRE(max_abs_diff(g, oracles::naive_matmul(at, a)) < 1e-12);
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) REQUIRE(g(i, j) == g(j, i));
}

TEST_CASE("cholesky solves SPD systems") {
    rng::Prng prng(33);
    const Matrix m = random_spd(8, prng);
    const Matrix b = random_matrix(8, 3, prng);
    Matrix l = m;
    REQUIRE(linalg::cholesky_factor(l));
    Matrix x = b;
    linalg::cholesky_solve_in_place(l, x);
    REQUIRE(max_abs_diff(linalg::matmul(m, x), b) < 1e-9);
}

TEST_CASE("cholesky_factor reports non-SPD input") {
    Matrix indefinite(2, 2);
    indefinite(0, 0) = 0.0;
    indefinite(0, 1) = 1.0;
    indefinite(1, 0) = 1.0;
    indefinite(1, 1) = 0.0;
    Matrix copy = indefinite;
    REQUIRE_FALSE(linalg::cholesky_factor(copy));
}

TEST_CASE("lu_solve matches the Cholesky route and flags singularity") {
    rng::Prng prng(34);
    const Matrix m = random_spd(8, prng);
    const Matrix b = random_matrix(8, 2, prng);
    Matrix l = m;
    REQUIRE(linalg::cholesky_factor(l));
    Matrix x_chol = b;
    linalg::cholesky_solve_in_place(l, x_chol);
    const Matrix x_lu = linalg::lu_solve(m, b);
    REQUIRE(max_abs_diff(x_chol, x_lu) < 1e-8);

    Matrix singular(3, 3);
    for (std::size_t c = 0; c < 3; ++c) {
        singular(0, c) = 1.0;
        singular(1, c) = 2.0;  // row 1 = 2 * row 0
        singular(2, c) = static_cast<double>(c);
    }
    singular(1, 0) = 2.0;
    try {
        linalg::lu_solve(singular, Matrix(3, 1));
        FAIL("expected throw");
    } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::Singular);
    }
}

TEST_CASE("solve_sym falls back to LU for indefinite symmetric systems") {
    // symmetric, non-singular, not positive definite
    Matrix m(2, 2);
    m(0, 0) = 0.0;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    m(1, 1) = 0.0;
    Matrix b(2, 1);
    b(0, 0) = 3.0;
    b(1, 0) = 5.0;
    const Matrix x = linalg::solve_sym(m, b);
    REQUIRE(x(0, 0) == Catch::Approx(5.0).margin(1e-12));
    REQUIRE(x(1, 0) == Catch::Approx(3.0).margin(1e-12));
}

TEST_CASE("solve_sym result is bit-identical across calls") {
    rng::Prng prng(35);
    const Matrix m = random_spd(10, prng);
    const Matrix b = random_matrix(10, 4, prng);
    const Matrix x1 = linalg::solve_sym(m, b);
    const Matrix x2 = linalg::solve_sym(m, b);
    REQUIRE(x1 == x2);
}

TEST_CASE("jacobi eigendecomposition reconstructs the input") {
    rng::Prng prng(36);
    const Matrix m = random_spd(9, prng);
    const auto eig = linalg::jacobi_eigen_sym(m);
    REQUIRE(eig.values.size() == 9);
    for (std::size_t i = 0; i + 1 < eig.values.size(); ++i)
        REQUIRE(eig.values[i] >= eig.values[i + 1]);

    // A v_i == lambda_i v_i
    for (std::size_t i = 0; i < 9; ++i) {
        for (std::size_t r = 0; r < 9; ++r) {
            double av = 0.0;
            for (std::size_t c = 0; c < 9; ++c) av += m(r, c) * eig.vectors(c, i);
            REQUIRE(av == Catch::Approx(eig.values[i] * eig.vectors(r, i)).margin(1e-8));
        }
    }

    // V Lambda V^T == A
    Matrix recon(9, 9);
    for (std::size_t r = 0; r < 9; ++r)
        for (std::size_t c = 0; c < 9; ++c) {
            double acc = 0.0;
            for (std::size_t i = 0; i < 9; ++i)
                acc += eig.vectors(r, i) * eig.values[i] * eig.vectors(c, i);
            recon(r, c) = acc;
        }
    REQUIRE(max_abs_diff(recon, m) < 1e-9);
}

TEST_CASE("jacobi top eigenvalues agree with the power-iteration oracle") {
    rng::Prng prng(37);
    const Matrix m = random_spd(10, prng);
    const auto eig = linalg::jacobi_eigen_sym(m);
    const auto top = oracles::power_iteration_eigenvalues(m, 2);
    REQUIRE(eig.values[0] == Catch::Approx(top[0]).epsilon(1e-10));
    REQUIRE(eig.values[1] == Catch::Approx(top[1]).epsilon(1e-10));
}

TEST_CASE("frobenius, dot and norm2 basics") {
    Matrix m(2, 2);
    m(0, 0) = 3.0;
    m(1, 1) = 4.0;
    REQUIRE(linalg::frobenius_norm(m) == Catch::Approx(5.0));
    const std::vector<double> a{1.0, 2.0, 2.0};
    REQUIRE(linalg::dot(a, a) == 9.0);
    REQUIRE(linalg::norm2(a) == 3.0);
}

TEST_CASE("matrix equality and all_finite") {
    Matrix a(2, 2), b(2, 2);
    a(0, 1) = 1.5;
    REQUIRE_FALSE(a == b);
    b(0, 1) = 1.5;
    REQUIRE(a == b);
    REQUIRE(a.all_finite());
    a(1, 0) = std::numeric_limits<double>::quiet_NaN();
    REQUIRE_FALSE(a.all_finite());
}
