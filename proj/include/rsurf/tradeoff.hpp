#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rsurf/canonical.hpp"
#include "rsurf/regions.hpp"

namespace rsurf {

/// Exchange relation x_from = ratio * x_to between two attributable
/// variables (displacements measured from the region or canonical center).
struct ConversionRate {
    std::string from_variable;
    std::string to_variable;
    std::size_t from_index = 0;
    std::size_t to_index = 0;
    double ratio = 0.0;
    int branch = 0;       // +1 / -1 slope sign for iso-response rates; 0 for marginal rates
    double bound = 0.0;   // 0 for exact iso-response
    std::string basis;    // "cosh" / "sinh" for marginal rates, empty otherwise
};

using CanonicalPair = std::pair<std::size_t, std::size_t>;

/// +-sqrt(|lambda_j / lambda_i|): the lines z_i = s z_j on which
/// lambda_i z_i^2 + lambda_j z_j^2 vanishes.
std::array<double, 2> iso_slopes(const CanonicalModel& c, std::size_t i, std::size_t j);

/// Positive-ratio solutions of V_i'X = s*sqrt(|lambda_j/lambda_i|)*V_j'X
/// for each pair whose axes touch exactly two original variables. Both
/// branches are returned when both are positive, ordered by ratio.
std::vector<ConversionRate> conversion_rates(const CanonicalModel& c, const std::vector<CanonicalPair>& pairing);

/// Opposite-sign pairs (i < j) whose axes jointly touch exactly two
/// original variables.
std::vector<CanonicalPair> default_pairing(const CanonicalModel& c);

/// Ratios |coef_v / coef_w| between variables that share a basis function
/// (cosh or sinh) in a hyperbolic affine map.
std::vector<ConversionRate> marginal_rates(const RegionParametrization& p);

}  // namespace rsurf
