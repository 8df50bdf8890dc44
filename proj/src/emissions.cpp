#include "rsurf/emissions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <tuple>

#include <fmt/format.h>

#include "rsurf/errors.hpp"

namespace rsurf {

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, "interface", msg); }

const std::vector<std::string> kColumns{"year", "country", "liquid", "gas", "gas_flares", "bunker", "co2_ppmv"};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

// Comma-separated fields; double quotes protect embedded commas.
std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        const char ch = line[k];
        if (quoted) {
            if (ch == '"' && k + 1 < line.size() && line[k + 1] == '"') {
                cur += '"';
                ++k;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim(cur));
    return out;
}

template <typename T>
T parse_number(const std::string& cell, std::string_view source, std::size_t line, std::string_view column) {
    T value{};
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (cell.empty() || ec != std::errc{} || ptr != last)
        fail(ErrorCode::ParseError, fmt::format("{}:{}: column '{}' has malformed value '{}'", source, line, column, cell));
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(value))
            fail(ErrorCode::ParseError, fmt::format("{}:{}: column '{}' is not finite", source, line, column));
    }
    return value;
}

}  // namespace

EmissionsTable parse_emissions(std::istream& in, const std::set<int>& exclude_years, std::string_view source) {
    std::string line;
    if (!std::getline(in, line)) fail(ErrorCode::ParseError, fmt::format("{}: empty file", source));
    const std::vector<std::string> header = split_csv(line);
    const bool has_co2 = header.size() == kColumns.size();
    if (header.size() != kColumns.size() && header.size() != kColumns.size() - 1)
        fail(ErrorCode::ParseError, fmt::format("{}:1: expected header {}", source, fmt::join(kColumns, ",")));
    for (std::size_t c = 0; c < header.size(); ++c)
        if (header[c] != kColumns[c])
            fail(ErrorCode::ParseError, fmt::format("{}:1: header column {} is '{}', expected '{}'", source, c + 1, header[c], kColumns[c]));

    EmissionsTable table;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split_csv(line);
        if (cells.size() != header.size())
            fail(ErrorCode::ParseError,
                 fmt::format("{}:{}: expected {} columns, found {}", source, line_no, header.size(), cells.size()));

        EmissionsRow row;
        row.year = parse_number<int>(cells[0], source, line_no, kColumns[0]);
        row.country = cells[1];
        if (row.country.empty()) fail(ErrorCode::ParseError, fmt::format("{}:{}: empty country", source, line_no));
        row.liquid = parse_number<double>(cells[2], source, line_no, kColumns[2]);
        row.gas = parse_number<double>(cells[3], source, line_no, kColumns[3]);
        row.gas_flares = parse_number<double>(cells[4], source, line_no, kColumns[4]);
        row.bunker = parse_number<double>(cells[5], source, line_no, kColumns[5]);
        if (has_co2 && !cells[6].empty()) {
            row.co2_ppmv = parse_number<double>(cells[6], source, line_no, kColumns[6]);
            if (*row.co2_ppmv <= 0.0)
                fail(ErrorCode::ParseError, fmt::format("{}:{}: co2_ppmv must be positive", source, line_no));
        }

        if (exclude_years.contains(row.year)) {
            ++table.excluded_rows;
            continue;
        }
        if (row.liquid < 0.0 || row.gas < 0.0 || row.gas_flares < 0.0 || row.bunker < 0.0) {
            table.rejected.push_back(
                {line_no, fmt::format("{}: negative emission for {} in {}", to_string(ErrorCode::NegativeEmission), row.country, row.year)});
            continue;
        }
        table.rows.push_back(std::move(row));
    }

    std::sort(table.rows.begin(), table.rows.end(),
              [](const EmissionsRow& a, const EmissionsRow& b) { return std::tie(a.year, a.country) < std::tie(b.year, b.country); });
    for (std::size_t k = 1; k < table.rows.size(); ++k)
        if (table.rows[k].year == table.rows[k - 1].year && table.rows[k].country == table.rows[k - 1].country)
            fail(ErrorCode::ParseError,
                 fmt::format("{}: duplicate row for {} in {}", source, table.rows[k].country, table.rows[k].year));

    // Summation follows the sorted order, so totals do not depend on input order.
    std::map<int, YearTotal> totals;
    for (const EmissionsRow& row : table.rows) {
        YearTotal& t = totals[row.year];
        t.year = row.year;
        t.liquid += row.liquid;
        t.gas += row.gas;
        t.gas_flares += row.gas_flares;
        t.bunker += row.bunker;
        ++t.countries;
        if (row.co2_ppmv) {
            if (t.co2_ppmv && *t.co2_ppmv != *row.co2_ppmv)
                fail(ErrorCode::ParseError, fmt::format("{}: conflicting co2_ppmv values for {}", source, row.year));
            t.co2_ppmv = row.co2_ppmv;
        }
    }
    for (auto& [year, t] : totals) table.totals.push_back(t);
    return table;
}

EmissionsTable load_emissions(const std::filesystem::path& path, const std::set<int>& exclude_years) {
    std::ifstream f(path);
    if (!f) fail(ErrorCode::IoError, fmt::format("cannot open {}", path.string()));
    return parse_emissions(f, exclude_years, path.string());
}

Dataset to_dataset(const EmissionsTable& table) {
    Dataset d;
    d.names = {"Li", "Ga", "Fl", "Bu"};
    for (const YearTotal& t : table.totals) {
        if (!t.co2_ppmv) continue;
        d.x.push_back({t.liquid, t.gas, t.gas_flares, t.bunker});
        d.response.push_back(*t.co2_ppmv);
        d.labels.push_back(t.year);
    }
    return d;
}

}  // namespace rsurf
