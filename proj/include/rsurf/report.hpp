#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rsurf/canonical.hpp"
#include "rsurf/model.hpp"
#include "rsurf/regions.hpp"
#include "rsurf/tradeoff.hpp"

namespace rsurf {

inline constexpr const char* kToolVersion = "0.1.0";

struct InputDigest {
    std::string path;
    std::string sha256;
};

struct AnalysisOptions {
    std::vector<CanonicalPair> pairs;                  // empty: every non-degenerate pair
    double bound = 1e-8;                               // M
    std::optional<std::vector<CanonicalPair>> pairing; // nullopt: default_pairing()
    std::optional<Vector> center;                      // overrides region centers
    double cond_tol = linalg::kDefaultCondTol;
    bool include_regions = true;
};

struct RegionSection {
    RegionParametrization region;
    std::vector<Interval> intervals;             // elliptical only
    std::optional<std::array<double, 2>> asymptotes;  // hyperbolic only
    std::vector<ConversionRate> marginal;        // hyperbolic only
};

struct IsoSlopeEntry {
    CanonicalPair pair;
    std::array<double, 2> slopes;
};

struct AnalysisReport {
    QuadraticModel model;
    CanonicalModel canonical;
    std::vector<std::string> axis_labels;
    std::vector<RegionSection> regions;
    std::vector<CanonicalPair> pairing;
    std::vector<IsoSlopeEntry> iso_slopes;
    std::vector<ConversionRate> conversion_rates;
    std::vector<InputDigest> inputs;
    AnalysisOptions options;
};

/// Canonical analysis end to end. Errors propagate with their module tag.
AnalysisReport run_analysis(const QuadraticModel& model, const AnalysisOptions& options,
                            std::vector<InputDigest> inputs = {});

/// JSON with shortest round-trip number formatting; deterministic.
std::string report_to_json(const AnalysisReport& r);
std::string report_to_text(const AnalysisReport& r);

/// Plot-ready boundary samples: header `param,r,z_i,z_j,<variables...>`.
/// Ellipses are sampled as a closed curve (the last row repeats the first).
std::string plot_csv(const RegionParametrization& p, std::size_t count, double t_max = kDefaultTMax);
void emit_plot_csv(const RegionParametrization& p, std::size_t count, double t_max, const std::filesystem::path& path);

}  // namespace rsurf
