#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rsurf/linalg.hpp"
#include "rsurf/model.hpp"

namespace rsurf {

enum class StationaryType { Maximum, Minimum, Saddle, Degenerate };

struct StationaryKind {
    StationaryType type = StationaryType::Degenerate;
    std::vector<std::size_t> zero_indices;  // populated for Degenerate

    friend bool operator==(const StationaryKind&, const StationaryKind&) = default;
};

std::string to_string(StationaryType t);

/// Relative tolerance (times max|lambda|) below which an eigenvalue counts as zero.
inline constexpr double kZeroTol = 1e-9;

/// Canonical (normal) form Y = y0 + sum_k lambda_k z_k^2 with
/// z_k = V_k'(X - center).
struct CanonicalModel {
    Vector center;
    double y0 = 0.0;
    Vector lambdas;
    std::vector<Vector> axes;
    StationaryKind kind;
    std::vector<std::string> names;

    std::size_t size() const noexcept { return lambdas.size(); }
    double zero_tol() const;
};

/// Center from solving B X = -beta/2; y0 = b0 - beta'B^-1 beta / 4 through
/// the spectral inverse. Throws SingularMatrix naming the near-zero
/// eigenvalues when B fails the cond_tol check.
CanonicalModel canonicalize(const QuadraticModel& m, double cond_tol = linalg::kDefaultCondTol);

Vector to_canonical(const CanonicalModel& c, std::span<const double> x);
Vector from_canonical(const CanonicalModel& c, std::span<const double> z);

/// y0 + sum lambda_k z_k^2
double canonical_response(const CanonicalModel& c, std::span<const double> z);

/// sum lambda_k z_k^2 at the original-variable point x.
double response_deviation(const CanonicalModel& c, std::span<const double> x);

/// Sign rule with absolute tolerance `zero_tol`.
StationaryKind classify(std::span<const double> lambdas, double zero_tol);

/// Readable form of axis k, keeping components with |v| >= threshold,
/// e.g. "z1 = -0.257397*Ga + 0.966306*Bu".
std::string axis_label(const CanonicalModel& c, std::size_t k, double threshold = 0.2);

}  // namespace rsurf
