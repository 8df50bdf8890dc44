#include "rsurf/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include <fmt/format.h>

#include "rsurf/errors.hpp"

namespace rsurf {

namespace {

constexpr double kRankTol = 1e-12;

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, "fitting", msg); }

struct LsqSolution {
    Vector coef;
    double sse = 0.0;
};

double column_value(const ModelTerm& t, std::span<const double> x) {
    return t.kind == TermKind::Linear ? x[t.i] : x[t.i] * x[t.j];
}

// Columns: intercept followed by one per term. `labels` names the columns
// for error messages.
LsqSolution least_squares(const std::vector<Vector>& cols, std::span<const double> y,
                          const std::vector<std::string>& labels) {
    const std::size_t p = cols.size();
    const std::size_t n = y.size();

    Vector scale(p);
    for (std::size_t c = 0; c < p; ++c) {
        scale[c] = linalg::norm(cols[c]);
        if (scale[c] == 0.0) fail(ErrorCode::RankDeficient, fmt::format("column {} is identically zero", labels[c]));
    }

    std::vector<double> g(p * p);
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = a; b < p; ++b) {
            const double v = linalg::dot(cols[a], cols[b]) / (scale[a] * scale[b]);
            g[a * p + b] = v;
            g[b * p + a] = v;
        }
    const SymMatrix normal(p, g);

    const linalg::EigenDecomposition eig = linalg::jacobi_eigen(normal);
    if (linalg::inverse_condition(eig) < kRankTol) {
        const Vector& null_dir = eig.vectors.back();
        std::vector<std::string> involved;
        for (std::size_t c = 0; c < p; ++c)
            if (std::abs(null_dir[c]) >= 0.1) involved.push_back(labels[c]);
        fail(ErrorCode::RankDeficient,
             fmt::format("design matrix is rank deficient; collinear columns: {}", fmt::join(involved, ", ")));
    }

    auto project = [&](std::span<const double> v) {
        Vector rhs(p);
        for (std::size_t c = 0; c < p; ++c) rhs[c] = linalg::dot(cols[c], v) / scale[c];
        return rhs;
    };
    auto residual = [&](const Vector& scaled_coef) {
        Vector r(y.begin(), y.end());
        for (std::size_t c = 0; c < p; ++c)
            for (std::size_t k = 0; k < n; ++k) r[k] -= cols[c][k] * scaled_coef[c] / scale[c];
        return r;
    };

    Vector sc = linalg::solve(normal, project(y), kRankTol);
    const Vector delta = linalg::solve(normal, project(residual(sc)), kRankTol);
    for (std::size_t c = 0; c < p; ++c) sc[c] += delta[c];

    LsqSolution out;
    const Vector r = residual(sc);
    out.sse = linalg::dot(r, r);
    out.coef.resize(p);
    for (std::size_t c = 0; c < p; ++c) out.coef[c] = sc[c] / scale[c];
    return out;
}

void check_dataset(const Dataset& d, std::size_t n_terms) {
    const std::size_t n = d.names.size();
    if (d.response.size() != d.x.size())
        fail(ErrorCode::DimensionMismatch, fmt::format("{} rows but {} responses", d.x.size(), d.response.size()));
    for (std::size_t r = 0; r < d.x.size(); ++r)
        if (d.x[r].size() != n)
            fail(ErrorCode::DimensionMismatch, fmt::format("row {} has {} values, expected {}", r, d.x[r].size(), n));
    if (d.rows() < n_terms + 2)
        fail(ErrorCode::TooFewRows, fmt::format("{} rows cannot support {} terms plus intercept (need {})", d.rows(),
                                                n_terms, n_terms + 2));
}

struct Design {
    std::vector<Vector> cols;
    std::vector<std::string> labels;
};

Design make_design(const Dataset& d, std::span<const ModelTerm> terms, std::size_t skip = SIZE_MAX) {
    Design des;
    des.cols.emplace_back(d.rows(), 1.0);
    des.labels.emplace_back("intercept");
    for (std::size_t t = 0; t < terms.size(); ++t) {
        if (t == skip) continue;
        Vector col(d.rows());
        for (std::size_t r = 0; r < d.rows(); ++r) col[r] = column_value(terms[t], d.x[r]);
        des.cols.push_back(std::move(col));
        des.labels.push_back(term_name(terms[t], d.names));
    }
    return des;
}

// Rounds to ten significant digits so that round-off never splits a tie.
double tie_key(double f) {
    if (!std::isfinite(f)) return f;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9e", f);
    return std::strtod(buf, nullptr);
}

std::vector<TermStat> compute_stats(const Dataset& d, std::span<const ModelTerm> terms, std::span<const double> y,
                                    double sse_full) {
    const double dof = static_cast<double>(d.rows()) - static_cast<double>(terms.size()) - 1.0;
    std::vector<TermStat> stats;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const Design reduced = make_design(d, terms, t);
        const double sse_without = least_squares(reduced.cols, y, reduced.labels).sse;
        const double gain = std::max(0.0, sse_without - sse_full);
        double f = 0.0;
        if (sse_full > 0.0)
            f = gain / (sse_full / dof);
        else if (gain > 0.0)
            f = std::numeric_limits<double>::infinity();
        stats.push_back({terms[t], term_name(terms[t], d.names), f});
    }
    return stats;
}

std::vector<TermStat> rank(std::vector<TermStat> stats) {
    std::sort(stats.begin(), stats.end(), [](const TermStat& a, const TermStat& b) {
        const double ka = tie_key(a.f_value);
        const double kb = tie_key(b.f_value);
        if (ka != kb) return ka > kb;
        return a.name < b.name;
    });
    return stats;
}

}  // namespace

Vector transform_response(std::span<const double> values, double exponent) {
    const bool integral = std::floor(exponent) == exponent;
    std::vector<std::size_t> bad;
    Vector out(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double v = values[k];
        if (!std::isfinite(v) || (!integral && v <= 0.0) || (exponent < 0.0 && v == 0.0)) {
            bad.push_back(k);
            continue;
        }
        out[k] = std::pow(v, exponent);
    }
    if (!bad.empty())
        fail(ErrorCode::DomainError,
             fmt::format("response values at rows [{}] cannot be raised to the power {}", fmt::join(bad, ", "), exponent));
    return out;
}

ModelTerm parse_term(std::string_view spec, std::span<const std::string> names) {
    auto index_of = [&](std::string_view name) {
        for (std::size_t k = 0; k < names.size(); ++k)
            if (names[k] == name) return k;
        fail(ErrorCode::IndexOutOfRange, fmt::format("unknown variable '{}' in term '{}'", name, spec));
    };
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) return ModelTerm::linear(index_of(spec), 0.0);
    std::size_t i = index_of(spec.substr(0, colon));
    std::size_t j = index_of(spec.substr(colon + 1));
    if (i > j) std::swap(i, j);
    return ModelTerm::quadratic(i, j, 0.0);
}

FitResult ols_fit(const Dataset& d, std::span<const ModelTerm> terms, double exponent) {
    check_dataset(d, terms.size());
    // Validates indices and duplicates before any numerical work.
    (void)build_model(terms, 0.0, exponent, d.names);

    const Vector y = transform_response(d.response, exponent);
    const Design design = make_design(d, terms);
    const LsqSolution sol = least_squares(design.cols, y, design.labels);

    std::vector<ModelTerm> fitted(terms.begin(), terms.end());
    for (std::size_t t = 0; t < fitted.size(); ++t) fitted[t].coefficient = sol.coef[t + 1];

    FitResult r{build_model(fitted, sol.coef[0], exponent, d.names), fitted, sol.sse, d.rows(), {}, {}};
    r.term_stats = compute_stats(d, fitted, y, sol.sse);
    r.ranking = rank(r.term_stats);
    return r;
}

std::vector<TermStat> f_rank(const Dataset& d, const FitResult& r) {
    check_dataset(d, r.terms.size());
    const Vector y = transform_response(d.response, r.model.exponent());
    return rank(compute_stats(d, r.terms, y, r.sse));
}

}  // namespace rsurf
