#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rsurf/fitting.hpp"

namespace rsurf {

/// One country-year of the emissions panel, in thousand metric tons.
struct EmissionsRow {
    int year = 0;
    std::string country;
    double liquid = 0.0;
    double gas = 0.0;
    double gas_flares = 0.0;
    double bunker = 0.0;
    std::optional<double> co2_ppmv;
};

struct YearTotal {
    int year = 0;
    double liquid = 0.0;
    double gas = 0.0;
    double gas_flares = 0.0;
    double bunker = 0.0;
    std::optional<double> co2_ppmv;
    std::size_t countries = 0;
};

struct RejectedRow {
    std::size_t line = 0;
    std::string reason;
};

struct EmissionsTable {
    std::vector<EmissionsRow> rows;     // accepted, sorted by (year, country)
    std::vector<YearTotal> totals;      // ascending year
    std::vector<RejectedRow> rejected;  // negative emissions
    std::size_t excluded_rows = 0;      // dropped by the year-exclusion list
};

/// CSV with header `year,country,liquid,gas,gas_flares,bunker[,co2_ppmv]`.
/// Rows in excluded years are dropped; rows with a negative emission are
/// rejected and reported; malformed cells and duplicate (year, country)
/// pairs raise ParseError.
EmissionsTable parse_emissions(std::istream& in, const std::set<int>& exclude_years, std::string_view source = "<stream>");
EmissionsTable load_emissions(const std::filesystem::path& path, const std::set<int>& exclude_years);

/// Yearly totals with a CO2 reading, as a dataset over (Li, Ga, Fl, Bu).
Dataset to_dataset(const EmissionsTable& table);

}  // namespace rsurf
