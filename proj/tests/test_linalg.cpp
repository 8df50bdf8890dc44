#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "rsurf/errors.hpp"
#include "rsurf/linalg.hpp"
#include "rsurf/model.hpp"

#include "eu_fixture.hpp"

using namespace rsurf;
using namespace rsurf::linalg;

namespace {

// Laplace expansion along the first row.
double cofactor_det(const std::vector<std::vector<double>>& a) {
    const std::size_t n = a.size();
    if (n == 1) return a[0][0];
    double det = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<double>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<double> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(a[r][k]);
            minor.push_back(row);
        }
        det += (c % 2 == 0 ? 1.0 : -1.0) * a[0][c] * cofactor_det(minor);
    }
    return det;
}

SymMatrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SymMatrix s(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) s.set(i, j, u(rng));
    return s;
}

std::vector<std::vector<double>> dense(const SymMatrix& s) {
    std::vector<std::vector<double>> a(s.size(), std::vector<double>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) a[i][j] = s(i, j);
    return a;
}

double max_abs_identity_error(const SymMatrix& inv, const SymMatrix& s) {
    const std::size_t n = s.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double v = 0.0;
            for (std::size_t k = 0; k < n; ++k) v += inv(i, k) * s(k, j);
            worst = std::max(worst, std::abs(v - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

SymMatrix eu_b_unscaled() {
    const double b[16]{2.7113, 0, -133.05, 0, 0, 0, 0, 37.3391, -133.05, 0, 0, 0, 0, 37.3391, 0, -130.23};
    return SymMatrix(4, b);
}

}  // namespace

TEST_CASE("sym_matrix symmetrizes and validates") {
    const double a[4]{1.0, 2.0, 4.0, 3.0};
    const SymMatrix s(2, a);
    CHECK(s(0, 1) == 3.0);
    CHECK(s(1, 0) == 3.0);
    CHECK_THROWS_AS(SymMatrix(0), Error);
    const double bad[4]{1.0, NAN, NAN, 1.0};
    CHECK_THROWS_AS(SymMatrix(2, bad), Error);
    const double short_input[3]{1, 2, 3};
    CHECK_THROWS_AS(SymMatrix(2, short_input), Error);
}

TEST_CASE("jacobi on the Ga-Bu block") {
    const double a[4]{0.0, 37.3391, 37.3391, -130.23};
    const EigenDecomposition e = jacobi_eigen(SymMatrix(2, a));
    CHECK(e.lambdas[0] == doctest::Approx(-140.176).epsilon(1e-6));
    CHECK(e.lambdas[1] == doctest::Approx(9.94612).epsilon(1e-6));
}

TEST_CASE("jacobi on the identity") {
    const EigenDecomposition e = jacobi_eigen(SymMatrix::identity(3));
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(e.lambdas[k] == 1.0);
        for (std::size_t v = 0; v < 3; ++v) CHECK(e.vectors[k][v] == (k == v ? 1.0 : 0.0));
    }
}

TEST_CASE("jacobi on the full EU matrix") {
    const EigenDecomposition e = jacobi_eigen(eu_b_unscaled());
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(e.lambdas[k] == doctest::Approx(eu::kPublishedLambdas[k] * 1e18).epsilon(1e-5));
        const double sign = dot(e.vectors[k], eu::kPublishedVectors[k]) < 0 ? -1.0 : 1.0;
        for (std::size_t v = 0; v < 4; ++v) CHECK(std::abs(sign * e.vectors[k][v] - eu::kPublishedVectors[k][v]) <= 1e-5);
    }
}

TEST_CASE("jacobi is scale free on the EU matrix") {
    const EigenDecomposition e = jacobi_eigen(eu::model().interaction());
    for (std::size_t k = 0; k < 4; ++k) CHECK(eu::rel_close(e.lambdas[k], eu::kLambdas[k], 1e-12));
}

TEST_CASE("jacobi ordering, ties and sign convention") {
    const double d[3]{-2.0, 2.0, 1.0};
    const EigenDecomposition e = jacobi_eigen(SymMatrix::diagonal(d));
    CHECK(e.lambdas == Vector{2.0, -2.0, 1.0});
    for (const Vector& v : e.vectors) {
        std::size_t arg = 0;
        for (std::size_t k = 1; k < v.size(); ++k)
            if (std::abs(v[k]) > std::abs(v[arg])) arg = k;
        CHECK(v[arg] > 0.0);
    }
}

TEST_CASE("jacobi on the zero matrix") {
    const EigenDecomposition e = jacobi_eigen(SymMatrix(3));
    for (double l : e.lambdas) CHECK(l == 0.0);
    CHECK(inverse_condition(e) == 0.0);
}

TEST_CASE("jacobi properties on random symmetric matrices") {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<std::size_t> dim(1, 8);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = dim(rng);
        const SymMatrix s = random_symmetric(rng, n);
        const EigenDecomposition e = jacobi_eigen(s);

        double ortho = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t p = 0; p < n; ++p)
                ortho = std::max(ortho, std::abs(dot(e.vectors[k], e.vectors[p]) - (k == p ? 1.0 : 0.0)));
        REQUIRE(ortho <= 1e-10);

        const SymMatrix r = e.reconstruct();
        double diff = 0.0;
        for (std::size_t i = 0; i < n * n; ++i) diff += std::pow(r.data()[i] - s.data()[i], 2);
        REQUIRE(std::sqrt(diff) <= 1e-10 * s.frobenius_norm());

        for (std::size_t k = 1; k < n; ++k) REQUIRE(std::abs(e.lambdas[k - 1]) >= std::abs(e.lambdas[k]));

        double trace = 0.0;
        double sum = 0.0;
        double sum_abs = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            trace += s(k, k);
            sum += e.lambdas[k];
            sum_abs += std::abs(e.lambdas[k]);
        }
        REQUIRE(std::abs(sum - trace) <= 1e-9 * std::max(1.0, sum_abs));

        if (n <= 4) {
            double prod = 1.0;
            for (double l : e.lambdas) prod *= l;
            const double det = cofactor_det(dense(s));
            REQUIRE(std::abs(prod - det) <= 1e-8 * std::max(std::abs(det), 1e-6));
        }
    }
}

TEST_CASE("jacobi output ignores input asymmetry") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> raw(25);
        for (double& v : raw) v = u(rng);
        const SymMatrix once(5, raw);
        const SymMatrix twice(5, once.data());
        const EigenDecomposition a = jacobi_eigen(once);
        const EigenDecomposition b = jacobi_eigen(twice);
        CHECK(a.lambdas == b.lambdas);
        CHECK(a.vectors == b.vectors);
    }
}

TEST_CASE("spectral inverse") {
    const double d[2]{2.0, 4.0};
    const SymMatrix inv = spectral_inverse(jacobi_eigen(SymMatrix::diagonal(d)));
    CHECK(inv(0, 0) == doctest::Approx(0.5));
    CHECK(inv(1, 1) == doctest::Approx(0.25));
    CHECK(inv(0, 1) == 0.0);

    const SymMatrix b = eu::model().interaction();
    CHECK(max_abs_identity_error(spectral_inverse(jacobi_eigen(b)), b) <= 1e-9);

    const double singular[2]{1.0, 0.0};
    CHECK_THROWS_AS(spectral_inverse(jacobi_eigen(SymMatrix::diagonal(singular))), Error);

    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const SymMatrix s = random_symmetric(rng, 1 + trial % 6);
        const EigenDecomposition e = jacobi_eigen(s);
        if (inverse_condition(e) < 1e-6) continue;
        CHECK(max_abs_identity_error(spectral_inverse(e), s) <= 1e-9 / inverse_condition(e));
    }
}

TEST_CASE("spectral inverse reports the singular code") {
    const double singular[3]{3.0, 1e-14, 2.0};
    try {
        spectral_inverse(jacobi_eigen(SymMatrix::diagonal(singular)));
        FAIL("expected SingularMatrix");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SingularMatrix);
        CHECK(e.module() == "linalg");
    }
}

TEST_CASE("solve") {
    const double b1[2]{3.0, 7.0};
    CHECK(solve(SymMatrix::identity(2), b1) == Vector{3.0, 7.0});

    const double d[2]{2.0, 4.0};
    const double b2[2]{2.0, 4.0};
    const Vector x = solve(SymMatrix::diagonal(d), b2);
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(1.0));

    const QuadraticModel m = eu::model();
    Vector rhs = m.linear();
    for (double& v : rhs) v *= -0.5;
    const Vector center = solve(m.interaction(), rhs);
    const Vector bx = multiply(m.interaction(), center);
    double res = 0.0;
    for (std::size_t k = 0; k < 4; ++k) res += std::pow(bx[k] - rhs[k], 2);
    CHECK(std::sqrt(res) <= 1e-9 * norm(rhs));
    for (std::size_t k = 0; k < 4; ++k) CHECK(eu::rel_close(center[k], eu::kCenter[k], 1e-10));

    const double zero[4]{0, 0, 0, 0};
    CHECK_THROWS_AS(solve(SymMatrix::diagonal(zero), rhs), Error);
    CHECK_THROWS_AS(solve(SymMatrix::identity(3), rhs), Error);
}

TEST_CASE("solve residual on random systems") {
    std::mt19937_64 rng(314159);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 8;
        const SymMatrix s = random_symmetric(rng, n);
        if (inverse_condition(jacobi_eigen(s)) < 1e-8) continue;
        Vector b(n);
        for (double& v : b) v = u(rng);
        const Vector x = solve(s, b);
        const Vector sx = multiply(s, x);
        double res = 0.0;
        for (std::size_t k = 0; k < n; ++k) res += std::pow(sx[k] - b[k], 2);
        REQUIRE(std::sqrt(res) <= 1e-9 * norm(b));
    }
}
