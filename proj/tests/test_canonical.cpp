#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "rsurf/canonical.hpp"
#include "rsurf/errors.hpp"
#include "rsurf/model.hpp"

#include "eu_fixture.hpp"

using namespace rsurf;

TEST_CASE("canonicalize the EU model") {
    const QuadraticModel m = eu::model();
    const CanonicalModel c = canonicalize(m);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(eu::rel_close(c.lambdas[k], eu::kLambdas[k], 1e-12));
        CHECK(eu::rel_close(c.lambdas[k], eu::kPublishedLambdas[k], 1e-4));
        CHECK(eu::rel_close(c.center[k], eu::kCenter[k], 1e-10));
    }
    CHECK(c.kind.type == StationaryType::Saddle);
    CHECK(eu::rel_close(c.y0, eu::kY0, 1e-12));
    CHECK(eu::rel_close(evaluate_matrix(m, c.center), c.y0, 1e-9));

    // Residual of B X + beta/2 at the center.
    const Vector bx = linalg::multiply(m.interaction(), c.center);
    double res = 0.0;
    for (std::size_t k = 0; k < 4; ++k) res += std::pow(bx[k] + 0.5 * m.linear()[k], 2);
    CHECK(std::sqrt(res) <= 1e-9 * linalg::norm(m.linear()));
    CHECK(linalg::norm(gradient(m, c.center)) <= 1e-9 * linalg::norm(m.linear()));

    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t p = 0; p < 4; ++p)
            CHECK(std::abs(linalg::dot(c.axes[k], c.axes[p]) - (k == p ? 1.0 : 0.0)) <= 1e-10);
}

TEST_CASE("canonicalize trivial maximum") {
    const double d[3]{-1.0, -1.0, -1.0};
    const QuadraticModel m(std::vector<std::string>{"a", "b", "c"}, 2.5, Vector{0, 0, 0}, SymMatrix::diagonal(d), 1.0);
    const CanonicalModel c = canonicalize(m);
    CHECK(c.center == Vector{0, 0, 0});
    CHECK(c.y0 == 2.5);
    CHECK(c.kind.type == StationaryType::Maximum);
}

TEST_CASE("canonicalize a singular model names the small eigenvalues") {
    const double d[2]{1.0, 0.0};
    const QuadraticModel m(std::vector<std::string>{"a", "b"}, 0.0, Vector{1, 1}, SymMatrix::diagonal(d), 1.0);
    try {
        canonicalize(m);
        FAIL("expected SingularMatrix");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SingularMatrix);
        CHECK(e.module() == "canonical");
        CHECK(std::string(e.what()).find("lambda2") != std::string::npos);
    }
    const QuadraticModel zero = build_model({}, 1.0, 1.0, {"a", "b"});
    CHECK_THROWS_AS(canonicalize(zero), Error);
}

TEST_CASE("to_canonical and from_canonical") {
    const CanonicalModel c = canonicalize(eu::model());
    const Vector z0 = to_canonical(c, c.center);
    for (double z : z0) CHECK(std::abs(z) <= 1e-12);

    Vector x = c.center;
    for (std::size_t v = 0; v < 4; ++v) x[v] += c.axes[1][v];
    const Vector z = to_canonical(c, x);
    CHECK(std::abs(z[1] - 1.0) <= 1e-9);
    CHECK(std::abs(z[0]) <= 1e-9);
    CHECK(std::abs(z[2]) <= 1e-9);
    CHECK(std::abs(z[3]) <= 1e-9);

    CHECK(from_canonical(c, Vector{0, 0, 0, 0}) == c.center);
    const Vector e1 = from_canonical(c, Vector{1, 0, 0, 0});
    for (std::size_t v = 0; v < 4; ++v) CHECK(e1[v] == doctest::Approx(c.center[v] + c.axes[0][v]));

    // Increments along z1 at the ellipse semiaxis.
    const Vector along = from_canonical(c, Vector{8446.24, 0, 0, 0});
    CHECK(std::abs(along[1] - c.center[1]) == doctest::Approx(2174.04).epsilon(1e-4));
    CHECK(std::abs(along[3] - c.center[3]) == doctest::Approx(8161.65).epsilon(1e-4));
    CHECK(along[0] == c.center[0]);
    CHECK(along[2] == c.center[2]);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 6e5);
    for (int trial = 0; trial < 200; ++trial) {
        Vector r(4);
        for (double& v : r) v = u(rng);
        const Vector back = from_canonical(c, to_canonical(c, r));
        for (std::size_t v = 0; v < 4; ++v) REQUIRE(std::abs(back[v] - r[v]) <= 1e-10 * linalg::norm(r));
    }
    CHECK_THROWS_AS(to_canonical(c, Vector{1, 2}), Error);
    CHECK_THROWS_AS(from_canonical(c, Vector{1, 2, 3}), Error);
}

TEST_CASE("canonical_response") {
    const CanonicalModel c = canonicalize(eu::model());
    CHECK(canonical_response(c, Vector{0, 0, 0, 0}) == c.y0);
    CHECK(canonical_response(c, Vector{1, 0, 0, 0}) == doctest::Approx(c.y0 - 140.176e-18).epsilon(1e-12));
    CHECK_THROWS_AS(canonical_response(c, Vector{1}), Error);
}

TEST_CASE("dual-path evaluation on random points") {
    const QuadraticModel m = eu::model();
    const CanonicalModel c = canonicalize(m);
    std::mt19937_64 rng(1000);
    std::uniform_real_distribution<double> u(0.0, 6e5);
    for (int trial = 0; trial < 1000; ++trial) {
        Vector x(4);
        for (double& v : x) v = u(rng);
        const double direct = evaluate_matrix(m, x);
        const double canon = canonical_response(c, to_canonical(c, x));
        REQUIRE(std::abs(direct - canon) <= 1e-9 * (std::abs(c.y0) + std::abs(direct)));
    }
}

TEST_CASE("classify") {
    CHECK(classify(eu::kPublishedLambdas, 1e-9 * 140.176e-18).type == StationaryType::Saddle);
    CHECK(classify(Vector{-1, -2}, 1e-9).type == StationaryType::Maximum);
    CHECK(classify(Vector{1, 2}, 1e-9).type == StationaryType::Minimum);
    const StationaryKind k = classify(Vector{1, 1e-15}, 1e-12);
    CHECK(k.type == StationaryType::Degenerate);
    CHECK(k.zero_indices == std::vector<std::size_t>{1});
}

TEST_CASE("directions of increasing response") {
    // With a negative exponent, moving along an axis with lambda < 0 lowers
    // the transformed value and raises the natural response.
    const QuadraticModel m = eu::model();
    const CanonicalModel c = canonicalize(m);
    const double base = predict_response(m, c.center);
    for (std::size_t k = 0; k < 4; ++k) {
        Vector x = c.center;
        for (std::size_t v = 0; v < 4; ++v) x[v] += 1000.0 * c.axes[k][v];
        if (c.lambdas[k] < 0)
            CHECK(predict_response(m, x) > base);
        else
            CHECK(predict_response(m, x) < base);
    }
}

TEST_CASE("axis labels") {
    const CanonicalModel c = canonicalize(eu::model());
    CHECK(axis_label(c, 0) == "z1 = -0.257397*Ga + 0.966306*Bu");
    CHECK(axis_label(c, 1) == "z2 = 0.7107*Li - 0.703495*Fl");
    CHECK(axis_label(c, 2) == "z3 = 0.703495*Li + 0.7107*Fl");
    CHECK(axis_label(c, 3) == "z4 = 0.966306*Ga + 0.257397*Bu");
}
