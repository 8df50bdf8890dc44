#include "rsurf/regions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include <fmt/format.h>

#include "rsurf/errors.hpp"

namespace rsurf {

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, "regions", msg); }

void check_pair(const CanonicalModel& c, std::size_t i, std::size_t j) {
    if (i >= c.size() || j >= c.size())
        fail(ErrorCode::IndexOutOfRange, fmt::format("pair ({}, {}) outside {} canonical axes", i + 1, j + 1, c.size()));
    if (i == j) fail(ErrorCode::InvalidArgument, fmt::format("pair ({}, {}) repeats an axis", i + 1, j + 1));
}

void check_bound(double bound) {
    if (!(bound > 0.0) || !std::isfinite(bound))
        fail(ErrorCode::NonPositiveBound, fmt::format("response bound M must be positive and finite, got {}", bound));
}

RegionParametrization build(const CanonicalModel& c, std::size_t i, std::size_t j, double bound, RegionKind kind,
                            std::optional<Vector> center) {
    RegionParametrization p;
    p.i = i;
    p.j = j;
    p.bound = bound;
    p.kind = kind;
    p.lambdas = {c.lambdas[i], c.lambdas[j]};
    p.semiaxes = {std::sqrt(bound / std::abs(c.lambdas[i])), std::sqrt(bound / std::abs(c.lambdas[j]))};
    p.axis_i = c.axes[i];
    p.axis_j = c.axes[j];
    p.names = c.names;
    if (center) {
        if (center->size() != c.size())
            fail(ErrorCode::DimensionMismatch, fmt::format("center has {} coordinates, model has {}", center->size(), c.size()));
        p.center = std::move(*center);
    } else {
        p.center = c.center;
    }
    for (std::size_t v = 0; v < c.size(); ++v)
        p.affine_map.push_back({p.center[v], p.semiaxes[0] * p.axis_i[v], p.semiaxes[1] * p.axis_j[v]});
    return p;
}

}  // namespace

std::string to_string(RegionKind k) {
    switch (k) {
        case RegionKind::EllipticalMaximum: return "elliptical (maximum)";
        case RegionKind::EllipticalMinimum: return "elliptical (minimum)";
        case RegionKind::Hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

RegionKind region_kind(const CanonicalModel& c, std::size_t i, std::size_t j) {
    check_pair(c, i, j);
    const double tol = c.zero_tol();
    const double li = c.lambdas[i];
    const double lj = c.lambdas[j];
    if (std::abs(li) <= tol || std::abs(lj) <= tol)
        fail(ErrorCode::DegeneratePair,
             fmt::format("pair ({}, {}) has a zero eigenvalue (lambda = {:.6g}, {:.6g}; tolerance {:.3g})", i + 1, j + 1,
                         li, lj, tol));
    if (li * lj < 0.0) return RegionKind::Hyperbolic;
    return li < 0.0 ? RegionKind::EllipticalMaximum : RegionKind::EllipticalMinimum;
}

RegionParametrization ellipse_region(const CanonicalModel& c, std::size_t i, std::size_t j, double bound,
                                     std::optional<Vector> center) {
    const RegionKind kind = region_kind(c, i, j);
    check_bound(bound);
    if (!is_elliptical(kind))
        fail(ErrorCode::WrongKind, fmt::format("pair ({}, {}) has eigenvalues of opposite sign", i + 1, j + 1));
    return build(c, i, j, bound, kind, std::move(center));
}

RegionParametrization hyperbola_region(const CanonicalModel& c, std::size_t i, std::size_t j, double bound,
                                       std::optional<Vector> center) {
    const RegionKind kind = region_kind(c, i, j);
    check_bound(bound);
    if (kind != RegionKind::Hyperbolic)
        fail(ErrorCode::WrongKind, fmt::format("pair ({}, {}) has eigenvalues of equal sign", i + 1, j + 1));
    if (c.lambdas[i] < 0.0) std::swap(i, j);
    return build(c, i, j, bound, kind, std::move(center));
}

RegionParametrization make_region(const CanonicalModel& c, std::size_t i, std::size_t j, double bound,
                                  std::optional<Vector> center) {
    if (is_elliptical(region_kind(c, i, j))) return ellipse_region(c, i, j, bound, std::move(center));
    return hyperbola_region(c, i, j, bound, std::move(center));
}

RegionParametrization region_from_affine_map(RegionKind kind, double bound, std::vector<AffineRow> rows,
                                             std::vector<std::string> names) {
    check_bound(bound);
    RegionParametrization p;
    p.kind = kind;
    p.bound = bound;
    for (const AffineRow& row : rows) p.center.push_back(row.center);
    p.affine_map = std::move(rows);
    p.names = std::move(names);
    return p;
}

std::array<double, 2> asymptote_slopes(const RegionParametrization& p) {
    if (p.kind != RegionKind::Hyperbolic) fail(ErrorCode::WrongKind, "asymptotes exist only for hyperbolic regions");
    if (p.lambdas[1] == 0.0) fail(ErrorCode::DegeneratePair, "region has no eigenvalue data");
    const double s = std::sqrt(std::abs(p.lambdas[0]) / std::abs(p.lambdas[1]));
    return {s, -s};
}

std::vector<BoundaryPoint> boundary_points(const RegionParametrization& p, std::size_t count, double t_max,
                                           Sampling sampling) {
    if (count < 2) fail(ErrorCode::InvalidArgument, "need at least two boundary samples");
    std::vector<BoundaryPoint> out;

    auto emit = [&](double param, double r, double f1, double f2) {
        BoundaryPoint bp;
        bp.param = param;
        bp.r = r;
        bp.z_i = p.semiaxes[0] * f1;
        bp.z_j = p.semiaxes[1] * f2;
        bp.x.reserve(p.affine_map.size());
        for (const AffineRow& row : p.affine_map) bp.x.push_back(row.center + row.first * f1 + row.second * f2);
        out.push_back(std::move(bp));
    };

    if (p.bounded()) {
        const double denom = sampling == Sampling::Closed ? static_cast<double>(count - 1) : static_cast<double>(count);
        out.reserve(count);
        for (std::size_t k = 0; k < count; ++k) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / denom;
            emit(theta, 1.0, std::cos(theta), std::sin(theta));
        }
        return out;
    }

    if (!(t_max > 0.0) || !std::isfinite(t_max)) fail(ErrorCode::InvalidArgument, "t_max must be positive");
    out.reserve(2 * count);
    for (double r : {1.0, -1.0}) {
        for (std::size_t k = 0; k < count; ++k) {
            const double t = -t_max + 2.0 * t_max * static_cast<double>(k) / static_cast<double>(count - 1);
            emit(t, r, r * std::cosh(t), r * std::sinh(t));
        }
    }
    return out;
}

bool contains(const CanonicalModel& c, std::span<const double> x, double bound, double rel_tol) {
    check_bound(bound);
    return std::abs(response_deviation(c, x)) <= bound * (1.0 + rel_tol);
}

bool region_contains(const RegionParametrization& p, std::span<const double> x, double rel_tol) {
    if (!p.has_axes()) fail(ErrorCode::InvalidArgument, "region has no canonical axes; membership is undefined");
    if (x.size() != p.center.size())
        fail(ErrorCode::DimensionMismatch, fmt::format("point has {} coordinates, region has {}", x.size(), p.center.size()));

    Vector d(x.begin(), x.end());
    for (std::size_t v = 0; v < d.size(); ++v) d[v] -= p.center[v];
    const double zi = linalg::dot(p.axis_i, d);
    const double zj = linalg::dot(p.axis_j, d);

    // Off-slice component must vanish (other canonical coordinates pinned at 0).
    double off = 0.0;
    for (std::size_t v = 0; v < d.size(); ++v) {
        const double r = d[v] - zi * p.axis_i[v] - zj * p.axis_j[v];
        off += r * r;
    }
    const double scale = std::max({linalg::norm(d), p.semiaxes[0], p.semiaxes[1]});
    if (std::sqrt(off) > rel_tol * scale) return false;

    const double ui = zi * zi / (p.semiaxes[0] * p.semiaxes[0]);
    const double uj = zj * zj / (p.semiaxes[1] * p.semiaxes[1]);
    if (p.bounded()) return ui + uj <= 1.0 + rel_tol;
    return std::abs(ui - uj) <= 1.0 + rel_tol;
}

std::vector<Interval> max_intervals(const RegionParametrization& p) {
    if (!p.bounded()) fail(ErrorCode::WrongKind, "maximal intervals exist only for elliptical regions");
    std::vector<Interval> out;
    out.reserve(p.affine_map.size());
    for (const AffineRow& row : p.affine_map) out.push_back({row.center, std::hypot(row.first, row.second)});
    return out;
}

}  // namespace rsurf
