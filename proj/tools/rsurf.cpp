// rsurf: canonical analysis of second-order response-surface models.
//
// Exit codes: 0 success, 2 input error, 3 numerical error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rsurf/emissions.hpp"
#include "rsurf/errors.hpp"
#include "rsurf/fitting.hpp"
#include "rsurf/model_io.hpp"
#include "rsurf/report.hpp"

namespace {

constexpr int kInputError = 2;
constexpr int kNumericalError = 3;

using rsurf::CanonicalPair;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

// "1,3" -> (0, 2)
CanonicalPair parse_pair(const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.size() != 2) throw rsurf::Error(rsurf::ErrorCode::InvalidArgument, "cli", fmt::format("pair '{}' must look like i,j", s));
    try {
        const long i = std::stol(parts[0]);
        const long j = std::stol(parts[1]);
        if (i < 1 || j < 1) throw std::out_of_range("index");
        return {static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)};
    } catch (const std::logic_error&) {
        throw rsurf::Error(rsurf::ErrorCode::InvalidArgument, "cli", fmt::format("pair '{}' needs 1-based axis indices", s));
    }
}

std::vector<CanonicalPair> parse_pairs(const std::vector<std::string>& specs) {
    std::vector<CanonicalPair> out;
    for (const std::string& s : specs) out.push_back(parse_pair(s));
    return out;
}

rsurf::Vector parse_vector(const std::string& s) {
    rsurf::Vector out;
    for (const std::string& part : split(s, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::logic_error&) {
            throw rsurf::Error(rsurf::ErrorCode::InvalidArgument, "cli", fmt::format("'{}' is not a number", part));
        }
    }
    return out;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        rsurf::write_file_atomic(path, text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Canonical analysis of fitted second-order response-surface models"};
    app.require_subcommand(1);
    app.set_version_flag("--version", rsurf::kToolVersion);

    // analyze
    std::string model_path;
    std::vector<std::string> pair_specs;
    std::vector<std::string> pairing_specs;
    double bound = 1e-8;
    std::string format = "text";
    std::string output;
    std::string center_spec;
    auto* analyze = app.add_subcommand("analyze", "Full canonical analysis report");
    analyze->add_option("model", model_path, "Model JSON file")->required();
    analyze->add_option("--pairs", pair_specs, "Canonical pairs i,j (1-based) for confidence regions");
    analyze->add_option("--bound-M", bound, "Response fluctuation bound M")->capture_default_str();
    analyze->add_option("--pairing", pairing_specs, "Canonical pairs i,j used for conversion rates");
    analyze->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    analyze->add_option("--center", center_spec, "Region center overriding the stationary point: comma-separated values, or \"reference\" for the model file's reference_center");
    analyze->add_option("-o,--output", output, "Output file (default stdout)");

    // regions
    std::string region_pair = "1,2";
    std::size_t samples = 360;
    double t_max = rsurf::kDefaultTMax;
    auto* regions = app.add_subcommand("regions", "Boundary samples of one confidence region as CSV");
    regions->add_option("model", model_path, "Model JSON file")->required();
    regions->add_option("--pair", region_pair, "Canonical pair i,j (1-based)")->required();
    regions->add_option("--bound-M", bound, "Response fluctuation bound M")->capture_default_str();
    regions->add_option("--samples", samples, "Samples (per branch for hyperbolas)")->check(CLI::Range(2, 10000000))->capture_default_str();
    regions->add_option("--t-max", t_max, "Hyperbolic parameter range [-t, t]")->capture_default_str();
    regions->add_option("--center", center_spec, "Region center overriding the stationary point: comma-separated values, or \"reference\" for the model file's reference_center");
    regions->add_option("-o,--output", output, "Output CSV (default stdout)");

    // tradeoff
    auto* tradeoff = app.add_subcommand("tradeoff", "Iso-response slopes and conversion rates");
    tradeoff->add_option("model", model_path, "Model JSON file")->required();
    tradeoff->add_option("--pairing", pairing_specs, "Canonical pairs i,j (default: detected two-variable pairs)");
    tradeoff->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

    // fit
    std::string data_path;
    std::string term_spec;
    double exponent = 1.0;
    std::vector<int> exclude_years;
    auto* fit = app.add_subcommand("fit", "Least-squares fit of a second-order model to an emissions CSV");
    fit->add_option("data", data_path, "Emissions CSV (year,country,liquid,gas,gas_flares,bunker,co2_ppmv)")->required();
    fit->add_option("--terms", term_spec, "Comma-separated terms over Li,Ga,Fl,Bu, e.g. Ga,Fl,Ga:Bu,Li:Li")->required();
    fit->add_option("--exponent", exponent, "Power applied to the response before fitting")->capture_default_str();
    fit->add_option("--exclude-years", exclude_years, "Years to drop at ingestion");
    fit->add_option("-o,--output", output, "Output model JSON (default stdout)");

    // predict
    std::string x_spec;
    auto* predict = app.add_subcommand("predict", "Evaluate the model at a point");
    predict->add_option("model", model_path, "Model JSON file")->required();
    predict->add_option("--x", x_spec, "Comma-separated attributable values")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help and --version exit 0; every usage error is an input error.
        return app.exit(e) == 0 ? 0 : kInputError;
    }

    try {
        std::vector<rsurf::InputDigest> digests;
        std::optional<rsurf::Vector> center;
        auto load = [&]() {
            std::string digest = rsurf::sha256_file(model_path);
            digests.push_back({model_path, std::move(digest)});
            rsurf::ModelDocument doc = rsurf::load_model_document(model_path);
            if (center_spec == "reference") {
                if (doc.reference_center.empty())
                    throw rsurf::Error(rsurf::ErrorCode::InvalidArgument, "cli",
                                       fmt::format("{} has no reference_center", model_path));
                center = doc.reference_center;
            } else if (!center_spec.empty()) {
                center = parse_vector(center_spec);
            }
            return doc.model;
        };

        if (analyze->parsed()) {
            const rsurf::QuadraticModel model = load();
            rsurf::AnalysisOptions opt;
            opt.pairs = parse_pairs(pair_specs);
            opt.bound = bound;
            if (!pairing_specs.empty()) opt.pairing = parse_pairs(pairing_specs);
            opt.center = center;
            const rsurf::AnalysisReport report = rsurf::run_analysis(model, opt, digests);
            write_output(format == "json" ? rsurf::report_to_json(report) : rsurf::report_to_text(report), output);
        } else if (regions->parsed()) {
            const rsurf::QuadraticModel model = load();
            const CanonicalPair p = parse_pair(region_pair);
            const rsurf::RegionParametrization region =
                rsurf::make_region(rsurf::canonicalize(model), p.first, p.second, bound, center);
            write_output(rsurf::plot_csv(region, samples, t_max), output);
        } else if (tradeoff->parsed()) {
            rsurf::AnalysisOptions opt;
            if (!pairing_specs.empty()) opt.pairing = parse_pairs(pairing_specs);
            opt.include_regions = false;
            const rsurf::QuadraticModel model = load();
            const rsurf::AnalysisReport report = rsurf::run_analysis(model, opt, digests);
            write_output(format == "json" ? rsurf::report_to_json(report) : rsurf::report_to_text(report), output);
        } else if (fit->parsed()) {
            const std::set<int> excluded(exclude_years.begin(), exclude_years.end());
            const rsurf::EmissionsTable table = rsurf::load_emissions(data_path, excluded);
            for (const rsurf::RejectedRow& rej : table.rejected)
                std::cerr << fmt::format("{}:{}: rejected: {}\n", data_path, rej.line, rej.reason);
            const rsurf::Dataset data = rsurf::to_dataset(table);
            std::vector<rsurf::ModelTerm> terms;
            for (const std::string& t : split(term_spec, ',')) terms.push_back(rsurf::parse_term(t, data.names));
            const rsurf::FitResult result = rsurf::ols_fit(data, terms, exponent);

            std::cerr << fmt::format("{} rows accepted, {} excluded, {} rejected; {} yearly observations; SSE {:.6g}\n",
                                     table.rows.size(), table.excluded_rows, table.rejected.size(), data.rows(), result.sse);
            std::cerr << "Rank  Term        partial F\n";
            for (std::size_t k = 0; k < result.ranking.size(); ++k)
                std::cerr << fmt::format("{:>4}  {:<10}  {:.6g}\n", k + 1, result.ranking[k].name, result.ranking[k].f_value);

            const rsurf::QuadraticModel& fitted = result.model;
            const rsurf::QuadraticModel labelled(fitted.names(), fitted.intercept(), fitted.linear(), fitted.interaction(),
                                                 fitted.exponent(), "CO2 ppmv");
            rsurf::ModelDocument doc{labelled, {}, fmt::format("fitted from {} ({} observations)", data_path, data.rows()), {}};
            for (const rsurf::TermStat& s : result.term_stats) {
                if (std::isfinite(s.f_value))
                    doc.reference_f_values[s.name] = s.f_value;
                else
                    std::cerr << fmt::format("note: F for {} is not finite (exact fit); omitted from the model file\n", s.name);
            }
            write_output(rsurf::model_to_json(doc), output);
        } else if (predict->parsed()) {
            const rsurf::QuadraticModel model = load();
            const rsurf::Vector x = parse_vector(x_spec);
            const double y = rsurf::evaluate_matrix(model, x);
            std::cout << fmt::format("transformed Y = {:.17g}\n", y);
            std::cout << fmt::format("{} = {:.17g}\n", model.response_label(), rsurf::predict_response(model, x));
        }
    } catch (const rsurf::Error& e) {
        std::cerr << fmt::format("error [{}/{}]: {}\n", e.module(), rsurf::to_string(e.code()), e.what());
        return rsurf::is_numerical(e.code()) ? kNumericalError : kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return 0;
}
