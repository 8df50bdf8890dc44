#include "rsurf/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>
#include <utility>

#include <fmt/format.h>

#include "rsurf/errors.hpp"

namespace rsurf {

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, "model", msg); }

void check_point(const QuadraticModel& m, std::span<const double> x) {
    if (x.size() != m.size())
        fail(ErrorCode::DimensionMismatch, fmt::format("point has {} coordinates, model has {} variables", x.size(), m.size()));
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!std::isfinite(x[i])) fail(ErrorCode::InvalidArgument, fmt::format("coordinate {} is not finite", i));
}

bool is_integer(double p) { return std::floor(p) == p; }

}  // namespace

std::string term_name(const ModelTerm& t, std::span<const std::string> names) {
    auto label = [&](std::size_t k) { return k < names.size() ? names[k] : fmt::format("x{}", k + 1); };
    if (t.kind == TermKind::Linear) return label(t.i);
    return label(t.i) + ":" + label(t.j);
}

QuadraticModel::QuadraticModel(std::vector<std::string> names, double intercept, Vector linear,
                               SymMatrix interaction, double exponent, std::string response_label)
    : names_(std::move(names)),
      intercept_(intercept),
      linear_(std::move(linear)),
      interaction_(std::move(interaction)),
      exponent_(exponent),
      response_label_(std::move(response_label)) {
    const std::size_t n = names_.size();
    if (n == 0) fail(ErrorCode::InvalidArgument, "model needs at least one variable");
    if (linear_.size() != n || interaction_.size() != n)
        fail(ErrorCode::DimensionMismatch,
             fmt::format("{} names, {} linear coefficients, {}x{} interaction matrix", n, linear_.size(),
                         interaction_.size(), interaction_.size()));
    if (exponent_ == 0.0 || !std::isfinite(exponent_)) fail(ErrorCode::InvalidArgument, "response exponent must be finite and non-zero");
    if (!std::isfinite(intercept_)) fail(ErrorCode::InvalidArgument, "intercept must be finite");
    for (double b : linear_)
        if (!std::isfinite(b)) fail(ErrorCode::InvalidArgument, "linear coefficients must be finite");
}

std::vector<ModelTerm> QuadraticModel::terms() const {
    std::vector<ModelTerm> out;
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i)
        if (linear_[i] != 0.0) out.push_back(ModelTerm::linear(i, linear_[i]));
    for (std::size_t i = 0; i < n; ++i) {
        if (interaction_(i, i) != 0.0) out.push_back(ModelTerm::quadratic(i, i, 0.5 * interaction_(i, i)));
        for (std::size_t j = i + 1; j < n; ++j)
            if (interaction_(i, j) != 0.0) out.push_back(ModelTerm::quadratic(i, j, interaction_(i, j)));
    }
    std::stable_sort(out.begin(), out.end(), [](const ModelTerm& a, const ModelTerm& b) {
        if (a.kind != b.kind) return a.kind == TermKind::Linear;
        return std::pair(a.i, a.j) < std::pair(b.i, b.j);
    });
    return out;
}

QuadraticModel build_model(std::span<const ModelTerm> terms, double intercept, double exponent,
                           std::vector<std::string> names, std::string response_label) {
    const std::size_t n = names.size();
    if (n == 0) fail(ErrorCode::InvalidArgument, "model needs at least one variable");
    Vector beta(n, 0.0);
    SymMatrix b(n);
    std::set<std::tuple<TermKind, std::size_t, std::size_t>> seen;

    for (const ModelTerm& t : terms) {
        std::size_t i = t.i;
        std::size_t j = t.kind == TermKind::Linear ? t.i : t.j;
        if (i >= n || j >= n)
            fail(ErrorCode::IndexOutOfRange, fmt::format("term references variable {} but the model has {}", std::max(i, j), n));
        if (i > j) std::swap(i, j);
        if (!seen.emplace(t.kind, i, j).second)
            fail(ErrorCode::DuplicateTerm, fmt::format("duplicate term {}", term_name({t.kind, i, j, 0.0}, names)));
        if (!std::isfinite(t.coefficient)) fail(ErrorCode::InvalidArgument, "term coefficient must be finite");

        if (t.kind == TermKind::Linear)
            beta[i] = t.coefficient;
        else if (i == j)
            b.set(i, i, 2.0 * t.coefficient);
        else
            b.set(i, j, t.coefficient);
    }
    return QuadraticModel(std::move(names), intercept, std::move(beta), std::move(b), exponent, std::move(response_label));
}

double evaluate_matrix(const QuadraticModel& m, std::span<const double> x) {
    check_point(m, x);
    return m.intercept() + linalg::dot(m.linear(), x) + linalg::quadratic_form(m.interaction(), x);
}

double evaluate_terms(const QuadraticModel& m, std::span<const double> x) {
    check_point(m, x);
    const std::size_t n = m.size();
    const SymMatrix& b = m.interaction();
    double y = m.intercept();
    for (std::size_t i = 0; i < n; ++i) y += m.linear()[i] * x[i];
    for (std::size_t i = 0; i < n; ++i) {
        y += 0.5 * b(i, i) * x[i] * x[i];
        for (std::size_t j = i + 1; j < n; ++j) y += b(i, j) * x[i] * x[j];
    }
    return y;
}

double inverse_transform(double y, double exponent) {
    if (!std::isfinite(y)) fail(ErrorCode::DomainError, "transformed response is not finite");
    if (y == 0.0 && exponent < 0.0) fail(ErrorCode::DomainError, "zero transformed response has no preimage for a negative exponent");
    if (y < 0.0) {
        // x^p = y < 0 has a real solution only for odd integer p.
        if (!(is_integer(exponent) && std::fmod(std::abs(exponent), 2.0) == 1.0))
            fail(ErrorCode::DomainError,
                 fmt::format("transformed response {:.6g} <= 0 has no real preimage under exponent {}", y, exponent));
        return -std::pow(-y, 1.0 / exponent);
    }
    return std::pow(y, 1.0 / exponent);
}

double predict_response(const QuadraticModel& m, std::span<const double> x) {
    return inverse_transform(evaluate_matrix(m, x), m.exponent());
}

Vector gradient(const QuadraticModel& m, std::span<const double> x) {
    check_point(m, x);
    Vector g = linalg::multiply(m.interaction(), x);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = m.linear()[i] + 2.0 * g[i];
    return g;
}

}  // namespace rsurf
