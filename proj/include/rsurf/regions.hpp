#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rsurf/canonical.hpp"

namespace rsurf {

enum class RegionKind { EllipticalMaximum, EllipticalMinimum, Hyperbolic };

std::string to_string(RegionKind k);
inline bool is_elliptical(RegionKind k) { return k != RegionKind::Hyperbolic; }

/// x_v = center + first * f1 + second * f2, where (f1, f2) is (r cos, r sin)
/// for ellipses and (r cosh, r sinh) for hyperbolas.
struct AffineRow {
    double center = 0.0;
    double first = 0.0;
    double second = 0.0;
};

/// Two-dimensional slice |lambda_i z_i^2 + lambda_j z_j^2| <= M with every
/// other canonical coordinate pinned to zero. For hyperbolas `i` is the
/// positive-eigenvalue (cosh) coordinate and `j` the negative one (sinh).
struct RegionParametrization {
    std::size_t i = 0;
    std::size_t j = 0;
    double bound = 0.0;
    RegionKind kind = RegionKind::Hyperbolic;
    std::array<double, 2> semiaxes{};
    std::array<double, 2> lambdas{};
    Vector axis_i;  // empty for regions built from a bare affine map
    Vector axis_j;
    Vector center;
    std::vector<AffineRow> affine_map;
    std::vector<std::string> names;

    bool bounded() const { return is_elliptical(kind); }
    bool has_axes() const { return !axis_i.empty() && !axis_j.empty(); }
};

RegionKind region_kind(const CanonicalModel& c, std::size_t i, std::size_t j);

/// `center` overrides the canonical center for the affine map only.
RegionParametrization ellipse_region(const CanonicalModel& c, std::size_t i, std::size_t j, double bound,
                                     std::optional<Vector> center = std::nullopt);
RegionParametrization hyperbola_region(const CanonicalModel& c, std::size_t i, std::size_t j, double bound,
                                       std::optional<Vector> center = std::nullopt);
/// Dispatches on region_kind().
RegionParametrization make_region(const CanonicalModel& c, std::size_t i, std::size_t j, double bound,
                                  std::optional<Vector> center = std::nullopt);

/// A parametrization known only through its affine map (for example a
/// published table of coefficients). Semiaxes and axes are left unset.
RegionParametrization region_from_affine_map(RegionKind kind, double bound, std::vector<AffineRow> rows,
                                             std::vector<std::string> names);

/// Slopes +-sqrt(|lambda_i| / |lambda_j|) of dz_j/dz_i along the asymptotes.
std::array<double, 2> asymptote_slopes(const RegionParametrization& p);

struct BoundaryPoint {
    double param = 0.0;  // theta for ellipses, t for hyperbolas
    double r = 1.0;
    double z_i = 0.0;
    double z_j = 0.0;
    Vector x;
};

enum class Sampling {
    Open,    // theta = 2*pi*k/count
    Closed,  // theta = 2*pi*k/(count-1); last point repeats the first
};

inline constexpr double kDefaultTMax = 3.0;

/// Ellipses: `count` samples of the r = 1 curve. Hyperbolas: `count`
/// samples of t in [-t_max, t_max] on each of the r = +1 and r = -1
/// branches (2*count points).
std::vector<BoundaryPoint> boundary_points(const RegionParametrization& p, std::size_t count,
                                           double t_max = kDefaultTMax, Sampling sampling = Sampling::Open);

/// |Y(x) - y0| <= bound, with a relative slack of rel_tol on the boundary.
bool contains(const CanonicalModel& c, std::span<const double> x, double bound, double rel_tol = 1e-9);

/// Membership in the two-dimensional slice described by p: x must lie in
/// the plane spanned by the pair's axes through p.center and satisfy the
/// conic inequality.
bool region_contains(const RegionParametrization& p, std::span<const double> x, double rel_tol = 1e-9);

struct Interval {
    double center = 0.0;
    double half_width = 0.0;
    double lower() const { return center - half_width; }
    double upper() const { return center + half_width; }
};

/// Per-variable box enclosing an elliptical region.
std::vector<Interval> max_intervals(const RegionParametrization& p);

}  // namespace rsurf
