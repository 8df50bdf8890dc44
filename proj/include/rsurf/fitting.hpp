#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsurf/model.hpp"

namespace rsurf {

/// Observations of n attributable variables with a natural-units response.
struct Dataset {
    std::vector<std::string> names;
    std::vector<Vector> x;
    Vector response;
    std::vector<int> labels;  // optional row labels (years); may be empty

    std::size_t rows() const noexcept { return x.size(); }
};

struct TermStat {
    ModelTerm term;
    std::string name;
    double f_value = 0.0;
};

struct FitResult {
    QuadraticModel model;
    std::vector<ModelTerm> terms;  // fitted terms in request order, zero coefficients kept
    double sse = 0.0;
    std::size_t rows = 0;
    std::vector<TermStat> term_stats;  // request order
    std::vector<TermStat> ranking;     // descending F, ties by name
};

/// Elementwise value^exponent. Non-positive values are rejected for
/// non-integer exponents, and zero for negative exponents.
Vector transform_response(std::span<const double> values, double exponent);

/// Parses "Li", "Li:Li" or "Ga:Bu" against the variable names.
ModelTerm parse_term(std::string_view spec, std::span<const std::string> names);

/// Least squares on the transformed scale with an intercept plus `terms`.
/// Columns are unit-scaled and the normal equations solved through linalg;
/// a normal matrix with min|lambda|/max|lambda| < 1e-12 is RankDeficient.
FitResult ols_fit(const Dataset& d, std::span<const ModelTerm> terms, double exponent);

/// Partial F per term: (SSE_without - SSE_full) / (SSE_full / (rows - terms - 1)).
std::vector<TermStat> f_rank(const Dataset& d, const FitResult& r);

}  // namespace rsurf
