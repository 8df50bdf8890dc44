#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "rsurf/errors.hpp"
#include "rsurf/model.hpp"

#include "eu_fixture.hpp"

using namespace rsurf;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an rsurf::Error");
    return ErrorCode::InvalidArgument;
}

QuadraticModel random_model(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<ModelTerm> terms;
    for (std::size_t i = 0; i < n; ++i) terms.push_back(ModelTerm::linear(i, u(rng)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) terms.push_back(ModelTerm::quadratic(i, j, u(rng)));
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
    return build_model(terms, u(rng), 1.0, names);
}

}  // namespace

TEST_CASE("build_model reproduces the printed EU matrix") {
    const QuadraticModel m = eu::model();
    const SymMatrix& b = m.interaction();
    CHECK(b(0, 0) == doctest::Approx(2.7113e-18).epsilon(1e-12));
    CHECK(b(0, 2) == -1.3305e-16);
    CHECK(b(2, 0) == -1.3305e-16);
    CHECK(b(1, 3) == 3.73391e-17);
    CHECK(b(3, 3) == doctest::Approx(-1.3023e-16).epsilon(1e-12));
    CHECK(b(1, 1) == 0.0);
    CHECK(b(2, 2) == 0.0);
    CHECK(b(0, 3) == 0.0);
    CHECK(m.linear() == Vector{-3.4501e-13, -3.0635e-12, 7.10848e-11, 0.0});
    CHECK(m.intercept() == 1.23e-6);
    CHECK(m.exponent() == -2.376);
}

TEST_CASE("build_model trivial cases") {
    const QuadraticModel empty = build_model({}, 1.0, 1.0, {"a", "b"});
    CHECK(empty.linear() == Vector{0.0, 0.0});
    CHECK(empty.interaction().frobenius_norm() == 0.0);
    CHECK(empty.terms().empty());

    const ModelTerm sq[1]{ModelTerm::quadratic(0, 0, 3.5)};
    CHECK(build_model(sq, 0.0, 1.0, {"a"}).interaction()(0, 0) == 7.0);
}

TEST_CASE("build_model errors") {
    const ModelTerm dup[2]{ModelTerm::quadratic(1, 3, 1.0), ModelTerm::quadratic(3, 1, 2.0)};
    CHECK(code_of([&] { build_model(dup, 0.0, 1.0, eu::kNames); }) == ErrorCode::DuplicateTerm);
    const ModelTerm dup_lin[2]{ModelTerm::linear(0, 1.0), ModelTerm::linear(0, 1.0)};
    CHECK(code_of([&] { build_model(dup_lin, 0.0, 1.0, eu::kNames); }) == ErrorCode::DuplicateTerm);
    const ModelTerm oob[1]{ModelTerm::linear(4, 1.0)};
    CHECK(code_of([&] { build_model(oob, 0.0, 1.0, eu::kNames); }) == ErrorCode::IndexOutOfRange);
    CHECK(code_of([&] { build_model({}, 0.0, 0.0, eu::kNames); }) == ErrorCode::InvalidArgument);
    const ModelTerm nan_term[1]{ModelTerm::linear(0, NAN)};
    CHECK(code_of([&] { build_model(nan_term, 0.0, 1.0, eu::kNames); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("terms round-trip through build_model") {
    const QuadraticModel m = eu::model();
    const std::vector<ModelTerm> t = m.terms();
    CHECK(t.size() == 7);
    CHECK(build_model(t, m.intercept(), m.exponent(), m.names(), m.response_label()) == m);
    CHECK(term_name(t[0], m.names()) == "Li");
    CHECK(term_name(ModelTerm::quadratic(1, 3, 0), m.names()) == "Ga:Bu");
    CHECK(term_name(ModelTerm::quadratic(0, 0, 0), m.names()) == "Li:Li");
}

TEST_CASE("evaluate_matrix") {
    const QuadraticModel m = eu::model();
    CHECK(evaluate_matrix(m, Vector{0, 0, 0, 0}) == 1.23e-6);
    CHECK(eu::rel_close(evaluate_matrix(m, Vector(4, 1e5)), eu::kMatrixAt1e5, 1e-12));
    CHECK(eu::rel_close(evaluate_matrix(m, eu::kCenter), eu::kY0, 1e-9));

    const QuadraticModel unit(std::vector<std::string>{"a", "b"}, 0.5, Vector{0, 0}, SymMatrix::identity(2), 1.0);
    CHECK(evaluate_matrix(unit, Vector{1, 1}) == 2.5);
    CHECK_THROWS_AS(evaluate_matrix(m, Vector{1, 2}), Error);
    CHECK_THROWS_AS(evaluate_matrix(m, Vector{1, 2, NAN, 4}), Error);
}

TEST_CASE("evaluate_terms") {
    const QuadraticModel m = eu::model();
    CHECK(evaluate_terms(m, Vector{0, 0, 0, 0}) == 1.23e-6);

    // Literal summation over the term table at x = 1e5 in every variable.
    const double x = 1e5;
    const double literal = 1.23e-6 + (-3.4501e-13) * x + (-3.0635e-12) * x + 7.10848e-11 * x + 1.35565e-18 * x * x +
                           (-1.3305e-16) * x * x + 3.73391e-17 * x * x + (-6.5115e-17) * x * x;
    CHECK(eu::rel_close(evaluate_terms(m, Vector(4, x)), literal, 1e-12));
    CHECK(eu::rel_close(evaluate_terms(m, Vector(4, x)), eu::kTermsAt1e5, 1e-12));

    const ModelTerm sq[1]{ModelTerm::quadratic(0, 0, 0.25)};
    const QuadraticModel li = build_model(sq, 0.0, 1.0, {"Li"});
    CHECK(evaluate_terms(li, Vector{3.0}) == 0.25 * 9.0);
}

TEST_CASE("matrix and term forms differ by exactly a factor of two in the quadratic part") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        const QuadraticModel m = random_model(rng, 1 + trial % 5);
        Vector x(m.size());
        for (double& v : x) v = u(rng);
        const double base = m.intercept() + linalg::dot(m.linear(), x);
        const double qm = evaluate_matrix(m, x) - base;
        const double qt = evaluate_terms(m, x) - base;
        double scale = std::abs(base);
        for (const ModelTerm& t : m.terms())
            if (t.kind == TermKind::Quadratic) scale += std::abs(t.coefficient * x[t.i] * x[t.j]);
        REQUIRE(std::abs(qm - 2.0 * qt) <= 1e-12 * scale);
    }
}

TEST_CASE("predict_response") {
    const QuadraticModel m = eu::model();
    CHECK(eu::rel_close(predict_response(m, Vector{0, 0, 0, 0}), eu::kResponseAtZero, 1e-12));
    CHECK(inverse_transform(1.0, -2.376) == 1.0);
    CHECK(inverse_transform(1.0, 0.5) == 1.0);
    CHECK(inverse_transform(-8.0, 3.0) == doctest::Approx(-2.0));
    CHECK_THROWS_AS(inverse_transform(-1.0, -2.376), Error);
    CHECK_THROWS_AS(inverse_transform(0.0, -2.376), Error);
    CHECK(inverse_transform(0.0, 2.0) == 0.0);

    // Round trip of the power transform.
    for (double r : {1e-3, 0.5, 1.0, 316.0, 4.2e4}) CHECK(eu::rel_close(inverse_transform(std::pow(r, -2.376), -2.376), r, 1e-12));

    // Larger transformed value means lower natural response when p < 0.
    CHECK(inverse_transform(2e-6, -2.376) < inverse_transform(1e-6, -2.376));
}

TEST_CASE("gradient") {
    const QuadraticModel m = eu::model();
    CHECK(gradient(m, Vector{0, 0, 0, 0}) == m.linear());
    CHECK(linalg::norm(gradient(m, eu::kCenter)) <= 1e-9 * linalg::norm(m.linear()));
    CHECK_THROWS_AS(gradient(m, Vector{1.0}), Error);
}

TEST_CASE("gradient matches central finite differences") {
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 300; ++trial) {
        const QuadraticModel m = random_model(rng, 1 + trial % 6);
        Vector x(m.size());
        for (double& v : x) v = u(rng);
        const Vector g = gradient(m, x);
        for (std::size_t k = 0; k < x.size(); ++k) {
            const double h = 1e-4 * std::max(1.0, std::abs(x[k]));
            Vector xp = x;
            Vector xm = x;
            xp[k] += h;
            xm[k] -= h;
            const double fd = (evaluate_matrix(m, xp) - evaluate_matrix(m, xm)) / (2.0 * h);
            REQUIRE(std::abs(fd - g[k]) <= 1e-6 * std::max(1.0, linalg::norm(g)));
        }
    }
}
