#include "rsurf/canonical.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "rsurf/errors.hpp"

namespace rsurf {

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, "canonical", msg); }

void check_dim(const CanonicalModel& c, std::size_t got) {
    if (got != c.size())
        fail(ErrorCode::DimensionMismatch, fmt::format("expected {} coordinates, got {}", c.size(), got));
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

std::string to_string(StationaryType t) {
    switch (t) {
        case StationaryType::Maximum: return "maximum";
        case StationaryType::Minimum: return "minimum";
        case StationaryType::Saddle: return "saddle";
        case StationaryType::Degenerate: return "degenerate";
    }
    return "unknown";
}

double CanonicalModel::zero_tol() const { return kZeroTol * max_abs(lambdas); }

StationaryKind classify(std::span<const double> lambdas, double zero_tol) {
    StationaryKind kind;
    bool any_pos = false;
    bool any_neg = false;
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        if (std::abs(lambdas[k]) <= zero_tol)
            kind.zero_indices.push_back(k);
        else if (lambdas[k] > 0.0)
            any_pos = true;
        else
            any_neg = true;
    }
    if (!kind.zero_indices.empty())
        kind.type = StationaryType::Degenerate;
    else if (any_pos && any_neg)
        kind.type = StationaryType::Saddle;
    else if (any_neg)
        kind.type = StationaryType::Maximum;
    else
        kind.type = StationaryType::Minimum;
    return kind;
}

CanonicalModel canonicalize(const QuadraticModel& m, double cond_tol) {
    const linalg::EigenDecomposition eig = linalg::jacobi_eigen(m.interaction());
    const double scale = max_abs(eig.lambdas);

    if (linalg::inverse_condition(eig) < cond_tol) {
        std::vector<std::string> small;
        for (std::size_t k = 0; k < eig.lambdas.size(); ++k)
            if (std::abs(eig.lambdas[k]) < cond_tol * scale || scale == 0.0)
                small.push_back(fmt::format("lambda{} = {:.6g}", k + 1, eig.lambdas[k]));
        fail(ErrorCode::SingularMatrix,
             fmt::format("interaction matrix is singular ({}); the canonical shift is undefined. "
                         "Check that the model has quadratic terms for every variable direction",
                         fmt::join(small, ", ")));
    }

    CanonicalModel c;
    Vector rhs = m.linear();
    for (double& b : rhs) b *= -0.5;
    c.center = linalg::solve(m.interaction(), rhs, cond_tol);

    // beta' B^-1 beta = sum_k (V_k' beta)^2 / lambda_k
    double quad = 0.0;
    for (std::size_t k = 0; k < eig.lambdas.size(); ++k) {
        const double proj = linalg::dot(eig.vectors[k], m.linear());
        quad += proj * proj / eig.lambdas[k];
    }
    c.y0 = m.intercept() - 0.25 * quad;
    c.lambdas = eig.lambdas;
    c.axes = eig.vectors;
    c.kind = classify(c.lambdas, kZeroTol * scale);
    c.names = m.names();
    return c;
}

Vector to_canonical(const CanonicalModel& c, std::span<const double> x) {
    check_dim(c, x.size());
    Vector shifted(x.begin(), x.end());
    for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] -= c.center[i];
    Vector z(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) z[k] = linalg::dot(c.axes[k], shifted);
    return z;
}

Vector from_canonical(const CanonicalModel& c, std::span<const double> z) {
    check_dim(c, z.size());
    Vector x = c.center;
    for (std::size_t k = 0; k < c.size(); ++k)
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += z[k] * c.axes[k][i];
    return x;
}

double canonical_response(const CanonicalModel& c, std::span<const double> z) {
    check_dim(c, z.size());
    double y = c.y0;
    for (std::size_t k = 0; k < c.size(); ++k) y += c.lambdas[k] * z[k] * z[k];
    return y;
}

double response_deviation(const CanonicalModel& c, std::span<const double> x) {
    const Vector z = to_canonical(c, x);
    double d = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) d += c.lambdas[k] * z[k] * z[k];
    return d;
}

std::string axis_label(const CanonicalModel& c, std::size_t k, double threshold) {
    if (k >= c.size()) fail(ErrorCode::IndexOutOfRange, fmt::format("axis {} of {}", k + 1, c.size()));
    std::string out = fmt::format("z{} =", k + 1);
    bool first = true;
    for (std::size_t i = 0; i < c.axes[k].size(); ++i) {
        const double v = c.axes[k][i];
        if (std::abs(v) < threshold) continue;
        const std::string name = i < c.names.size() ? c.names[i] : fmt::format("x{}", i + 1);
        if (first)
            out += fmt::format(" {:.6g}*{}", v, name);
        else
            out += fmt::format(" {} {:.6g}*{}", v < 0 ? '-' : '+', std::abs(v), name);
        first = false;
    }
    return out;
}

}  // namespace rsurf
