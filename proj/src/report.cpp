#include "rsurf/report.hpp"

#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "rsurf/errors.hpp"
#include "rsurf/model_io.hpp"

namespace rsurf {

namespace {

using ojson = nlohmann::ordered_json;

ojson pair_json(const CanonicalPair& p) { return ojson::array({p.first + 1, p.second + 1}); }

ojson rate_json(const ConversionRate& r) {
    ojson j = {{"from", r.from_variable}, {"to", r.to_variable}, {"ratio", r.ratio}};
    if (r.basis.empty())
        j["branch"] = r.branch;
    else
        j["basis"] = r.basis;
    j["bound_M"] = r.bound;
    return j;
}

std::string g(double v) { return fmt::format("{:.6g}", v); }

std::string rate_text(const ConversionRate& r) {
    std::string s = fmt::format("{} = {:.6g} * {}", r.from_variable, r.ratio, r.to_variable);
    if (!r.basis.empty()) s += fmt::format("   ({}-linked, M = {})", r.basis, g(r.bound));
    else s += fmt::format("   (branch {}, M = 0)", r.branch > 0 ? '+' : '-');
    return s;
}

}  // namespace

AnalysisReport run_analysis(const QuadraticModel& model, const AnalysisOptions& options, std::vector<InputDigest> inputs) {
    CanonicalModel canonical = canonicalize(model, options.cond_tol);
    AnalysisReport r{model, std::move(canonical), {}, {}, {}, {}, {}, std::move(inputs), options};
    const CanonicalModel& c = r.canonical;

    for (std::size_t k = 0; k < c.size(); ++k) r.axis_labels.push_back(axis_label(c, k));

    std::vector<CanonicalPair> pairs = options.pairs;
    if (pairs.empty() && options.include_regions) {
        const double tol = c.zero_tol();
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j)
                if (std::abs(c.lambdas[i]) > tol && std::abs(c.lambdas[j]) > tol) pairs.emplace_back(i, j);
    }
    if (!options.include_regions) pairs.clear();
    for (const auto& [i, j] : pairs) {
        RegionSection s{make_region(c, i, j, options.bound, options.center), {}, {}, {}};
        if (s.region.bounded()) {
            s.intervals = max_intervals(s.region);
        } else {
            s.asymptotes = asymptote_slopes(s.region);
            s.marginal = marginal_rates(s.region);
        }
        r.regions.push_back(std::move(s));
    }

    r.pairing = options.pairing ? *options.pairing : default_pairing(c);
    for (const CanonicalPair& p : r.pairing) r.iso_slopes.push_back({p, iso_slopes(c, p.first, p.second)});
    r.conversion_rates = conversion_rates(c, r.pairing);
    return r;
}

std::string report_to_json(const AnalysisReport& r) {
    const QuadraticModel& m = r.model;
    const CanonicalModel& c = r.canonical;
    ojson out;

    ojson inputs = ojson::array();
    for (const InputDigest& d : r.inputs) inputs.push_back({{"path", d.path}, {"sha256", d.sha256}});
    out["provenance"] = {{"tool", "rsurf"},
                         {"version", kToolVersion},
                         {"inputs", inputs},
                         {"tolerances",
                          {{"cond_tol", r.options.cond_tol},
                           {"zero_tol_relative", kZeroTol},
                           {"jacobi_offdiag_relative", 1e-14},
                           {"boundary_relative", 1e-9}}}};

    ojson interaction = ojson::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        ojson row = ojson::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m.interaction()(i, j));
        interaction.push_back(row);
    }
    out["model"] = {{"variables", m.names()},     {"response_label", m.response_label()},
                    {"exponent", m.exponent()},   {"intercept", m.intercept()},
                    {"linear", m.linear()},       {"interaction", interaction}};

    ojson eigen = ojson::array();
    for (std::size_t k = 0; k < c.size(); ++k)
        eigen.push_back({{"index", k + 1}, {"lambda", c.lambdas[k]}, {"vector", c.axes[k]}, {"label", r.axis_labels[k]}});
    out["eigen"] = eigen;

    ojson zero = ojson::array();
    for (std::size_t k : c.kind.zero_indices) zero.push_back(k + 1);
    out["canonical"] = {{"center", c.center}, {"y0", c.y0}, {"kind", to_string(c.kind.type)}, {"zero_eigenvalues", zero}};

    ojson regions = ojson::array();
    for (const RegionSection& s : r.regions) {
        const RegionParametrization& p = s.region;
        const bool ell = p.bounded();
        ojson rows = ojson::array();
        for (std::size_t v = 0; v < p.affine_map.size(); ++v) {
            const AffineRow& a = p.affine_map[v];
            rows.push_back({{"variable", p.names[v]},
                            {"center", a.center},
                            {ell ? "cos" : "cosh", a.first},
                            {ell ? "sin" : "sinh", a.second}});
        }
        ojson j = {{"pair", pair_json({p.i, p.j})},
                   {"kind", to_string(p.kind)},
                   {"bounded", ell},
                   {"bound_M", p.bound},
                   {"semiaxes", p.semiaxes},
                   {"lambdas", p.lambdas},
                   {"center", p.center},
                   {"affine_map", rows}};
        if (ell) {
            ojson iv = ojson::array();
            for (std::size_t v = 0; v < s.intervals.size(); ++v)
                iv.push_back({{"variable", p.names[v]}, {"center", s.intervals[v].center}, {"half_width", s.intervals[v].half_width}});
            j["max_intervals"] = iv;
        } else {
            j["asymptote_slopes"] = *s.asymptotes;
            ojson mr = ojson::array();
            for (const ConversionRate& rate : s.marginal) mr.push_back(rate_json(rate));
            j["marginal_rates"] = mr;
        }
        regions.push_back(j);
    }
    out["regions"] = regions;

    ojson pairing = ojson::array();
    for (const CanonicalPair& p : r.pairing) pairing.push_back(pair_json(p));
    ojson slopes = ojson::array();
    for (const IsoSlopeEntry& e : r.iso_slopes) slopes.push_back({{"pair", pair_json(e.pair)}, {"slopes", e.slopes}});
    ojson rates = ojson::array();
    for (const ConversionRate& rate : r.conversion_rates) rates.push_back(rate_json(rate));
    out["tradeoff"] = {{"pairing", pairing}, {"iso_slopes", slopes}, {"conversion_rates", rates}};

    return out.dump(2) + "\n";
}

std::string report_to_text(const AnalysisReport& r) {
    const QuadraticModel& m = r.model;
    const CanonicalModel& c = r.canonical;
    std::string out;
    auto line = [&out](const std::string& s) { out += s + "\n"; };

    line(fmt::format("Canonical analysis of {}^{} over ({})", m.response_label(), g(m.exponent()), fmt::join(m.names(), ", ")));
    for (const InputDigest& d : r.inputs) line(fmt::format("  input {}  sha256 {}", d.path, d.sha256));
    line("");
    line("Eigenvalues of the interaction matrix (descending |lambda|):");
    for (std::size_t k = 0; k < c.size(); ++k) line(fmt::format("  lambda{} = {:<14}  {}", k + 1, g(c.lambdas[k]), r.axis_labels[k]));
    line("");
    line(fmt::format("Stationary point ({}):", to_string(c.kind.type)));
    for (std::size_t v = 0; v < c.size(); ++v) line(fmt::format("  {} = {}", m.names()[v], g(c.center[v])));
    line(fmt::format("  Y0 = {}", g(c.y0)));

    for (const RegionSection& s : r.regions) {
        const RegionParametrization& p = s.region;
        const bool ell = p.bounded();
        line("");
        line(fmt::format("Region z{}, z{}: {}, M = {}", p.i + 1, p.j + 1, to_string(p.kind), g(p.bound)));
        line(fmt::format("  semiaxes {} ({}), {} ({})", g(p.semiaxes[0]), ell ? "r cos" : "r cosh", g(p.semiaxes[1]),
                         ell ? "r sin" : "r sinh"));
        const char* f1 = ell ? "r cos(theta)" : "r cosh(t)";
        const char* f2 = ell ? "r sin(theta)" : "r sinh(t)";
        for (std::size_t v = 0; v < p.affine_map.size(); ++v) {
            const AffineRow& a = p.affine_map[v];
            line(fmt::format("  {} = {} {:+.6g} {} {:+.6g} {}", p.names[v], g(a.center), a.first, f1, a.second, f2));
        }
        if (ell) {
            line("  maximal intervals:");
            for (std::size_t v = 0; v < s.intervals.size(); ++v)
                line(fmt::format("    |{} - {}| <= {}", p.names[v], g(s.intervals[v].center), g(s.intervals[v].half_width)));
        } else {
            line(fmt::format("  unbounded; asymptotes dz{}/dz{} = +-{}", p.j + 1, p.i + 1, g((*s.asymptotes)[0])));
            for (const ConversionRate& rate : s.marginal) line("  marginal: " + rate_text(rate));
        }
    }

    line("");
    line("Iso-response trade-offs:");
    if (r.pairing.empty()) line("  (no opposite-sign pair touches exactly two variables)");
    for (const IsoSlopeEntry& e : r.iso_slopes)
        line(fmt::format("  z{} = +-{} z{}", e.pair.first + 1, g(e.slopes[0]), e.pair.second + 1));
    for (const ConversionRate& rate : r.conversion_rates) line("  " + rate_text(rate));
    return out;
}

std::string plot_csv(const RegionParametrization& p, std::size_t count, double t_max) {
    std::string out = "param,r,z_i,z_j";
    for (const std::string& n : p.names) out += "," + n;
    out += "\n";
    for (const BoundaryPoint& b : boundary_points(p, count, t_max, Sampling::Closed)) {
        out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}", b.param, b.r, b.z_i, b.z_j);
        for (double x : b.x) out += fmt::format(",{:.17g}", x);
        out += "\n";
    }
    return out;
}

void emit_plot_csv(const RegionParametrization& p, std::size_t count, double t_max, const std::filesystem::path& path) {
    write_file_atomic(path, plot_csv(p, count, t_max));
}

}  // namespace rsurf
