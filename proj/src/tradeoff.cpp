#include "rsurf/tradeoff.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "rsurf/errors.hpp"

namespace rsurf {

namespace {

// Eigenvector components below this are structural zeros.
constexpr double kSupportTol = 1e-9;

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, "tradeoff", msg); }

std::string name_of(const std::vector<std::string>& names, std::size_t v) {
    return v < names.size() ? names[v] : fmt::format("x{}", v + 1);
}

std::vector<std::size_t> support(const CanonicalModel& c, std::size_t i, std::size_t j) {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < c.size(); ++v)
        if (std::abs(c.axes[i][v]) > kSupportTol || std::abs(c.axes[j][v]) > kSupportTol) out.push_back(v);
    return out;
}

}  // namespace

std::array<double, 2> iso_slopes(const CanonicalModel& c, std::size_t i, std::size_t j) {
    if (i >= c.size() || j >= c.size() || i == j)
        fail(ErrorCode::IndexOutOfRange, fmt::format("invalid canonical pair ({}, {})", i + 1, j + 1));
    const double tol = c.zero_tol();
    const double li = c.lambdas[i];
    const double lj = c.lambdas[j];
    if (std::abs(li) <= tol || std::abs(lj) <= tol)
        fail(ErrorCode::DegeneratePair, fmt::format("pair ({}, {}) has a zero eigenvalue", i + 1, j + 1));
    if (li * lj > 0.0)
        fail(ErrorCode::SameSignPair,
             fmt::format("pair ({}, {}) has eigenvalues of equal sign; no iso-response direction", i + 1, j + 1));
    const double s = std::sqrt(std::abs(lj / li));
    return {s, -s};
}

std::vector<ConversionRate> conversion_rates(const CanonicalModel& c, const std::vector<CanonicalPair>& pairing) {
    std::vector<ConversionRate> out;
    for (const auto& [i, j] : pairing) {
        const std::array<double, 2> slopes = iso_slopes(c, i, j);
        const std::vector<std::size_t> active = support(c, i, j);
        if (active.size() != 2) {
            std::vector<std::string> parts;
            for (std::size_t v : active)
                parts.push_back(fmt::format("{} ({:.6g}, {:.6g})", name_of(c.names, v), c.axes[i][v], c.axes[j][v]));
            fail(ErrorCode::NotTwoVariable,
                 fmt::format("axes z{} and z{} involve {} variables: {}", i + 1, j + 1, active.size(), fmt::join(parts, ", ")));
        }
        const std::size_t a = active[0];
        const std::size_t b = active[1];

        std::vector<ConversionRate> found;
        for (double s : slopes) {
            // (V_i - s V_j)' X = 0 restricted to {a, b}: w_a x_a + w_b x_b = 0.
            const double wa = c.axes[i][a] - s * c.axes[j][a];
            const double wb = c.axes[i][b] - s * c.axes[j][b];
            const double scale = std::max(std::abs(wa), std::abs(wb));
            if (scale == 0.0 || std::abs(wa) <= kSupportTol * scale || std::abs(wb) <= kSupportTol * scale) continue;
            const double ratio = -wb / wa;
            if (!(ratio > 0.0) || !std::isfinite(ratio)) continue;
            ConversionRate rate;
            rate.from_variable = name_of(c.names, a);
            rate.to_variable = name_of(c.names, b);
            rate.from_index = a;
            rate.to_index = b;
            rate.ratio = ratio;
            rate.branch = s > 0.0 ? 1 : -1;
            found.push_back(std::move(rate));
        }
        if (found.empty())
            fail(ErrorCode::NoPositiveBranch,
                 fmt::format("no branch of pair ({}, {}) yields a positive exchange ratio between {} and {}", i + 1, j + 1,
                             name_of(c.names, a), name_of(c.names, b)));
        std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.ratio < y.ratio; });
        out.insert(out.end(), found.begin(), found.end());
    }
    return out;
}

std::vector<CanonicalPair> default_pairing(const CanonicalModel& c) {
    std::vector<CanonicalPair> out;
    const double tol = c.zero_tol();
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            if (std::abs(c.lambdas[i]) <= tol || std::abs(c.lambdas[j]) <= tol) continue;
            if (c.lambdas[i] * c.lambdas[j] >= 0.0) continue;
            if (support(c, i, j).size() == 2) out.emplace_back(i, j);
        }
    return out;
}

std::vector<ConversionRate> marginal_rates(const RegionParametrization& p) {
    if (p.kind != RegionKind::Hyperbolic)
        fail(ErrorCode::WrongKind, "marginal rates need a hyperbolic (unbounded) region");

    double scale = 0.0;
    for (const AffineRow& row : p.affine_map) scale = std::max({scale, std::abs(row.first), std::abs(row.second)});

    std::vector<ConversionRate> out;
    for (int basis = 0; basis < 2; ++basis) {
        auto coef = [&](std::size_t v) { return basis == 0 ? p.affine_map[v].first : p.affine_map[v].second; };
        std::vector<std::size_t> linked;
        for (std::size_t v = 0; v < p.affine_map.size(); ++v)
            if (std::abs(coef(v)) > kSupportTol * scale) linked.push_back(v);
        for (std::size_t x = 0; x < linked.size(); ++x)
            for (std::size_t y = x + 1; y < linked.size(); ++y) {
                ConversionRate rate;
                rate.from_index = linked[x];
                rate.to_index = linked[y];
                rate.from_variable = name_of(p.names, linked[x]);
                rate.to_variable = name_of(p.names, linked[y]);
                rate.ratio = std::abs(coef(linked[x]) / coef(linked[y]));
                rate.bound = p.bound;
                rate.basis = basis == 0 ? "cosh" : "sinh";
                out.push_back(std::move(rate));
            }
    }
    if (out.empty()) fail(ErrorCode::ZeroCoefficient, "no two variables share a basis function in the affine map");
    return out;
}

}  // namespace rsurf
