#include "rsurf/model_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>
#include <openssl/evp.h>

#include "rsurf/errors.hpp"

namespace rsurf {

namespace {

using nlohmann::json;

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, "interface", msg); }

const json& require(const json& obj, const char* key, json::value_t type, std::string_view source) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(ErrorCode::SchemaError, fmt::format("{}: missing field '{}'", source, key));
    const bool ok = type == json::value_t::number_float ? it->is_number() : it->type() == type;
    if (!ok) fail(ErrorCode::SchemaError, fmt::format("{}: field '{}' has the wrong type", source, key));
    return *it;
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

ModelDocument parse_model_document(std::string_view text, std::string_view source) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
        fail(ErrorCode::ParseError, fmt::format("{}:{}:{}: malformed JSON", source, line, col));
    }
    if (!doc.is_object()) fail(ErrorCode::SchemaError, fmt::format("{}: top level must be an object", source));

    static const std::set<std::string> known{"variables", "exponent", "intercept", "response_label",
                                             "terms",     "reference_f_values", "reference_center", "description"};
    for (const auto& item : doc.items())
        if (!known.contains(item.key())) fail(ErrorCode::SchemaError, fmt::format("{}: unknown field '{}'", source, item.key()));

    std::vector<std::string> names;
    for (const json& v : require(doc, "variables", json::value_t::array, source)) {
        if (!v.is_string()) fail(ErrorCode::SchemaError, fmt::format("{}: variable names must be strings", source));
        names.push_back(v.get<std::string>());
    }
    if (names.empty()) fail(ErrorCode::SchemaError, fmt::format("{}: 'variables' is empty", source));
    if (std::set<std::string>(names.begin(), names.end()).size() != names.size())
        fail(ErrorCode::SchemaError, fmt::format("{}: variable names must be unique", source));

    const double exponent = require(doc, "exponent", json::value_t::number_float, source).get<double>();
    const double intercept = require(doc, "intercept", json::value_t::number_float, source).get<double>();
    std::string label = "response";
    if (doc.contains("response_label")) label = require(doc, "response_label", json::value_t::string, source).get<std::string>();

    auto index_of = [&](const json& v, std::size_t term_no) -> std::size_t {
        if (!v.is_string()) fail(ErrorCode::SchemaError, fmt::format("{}: term {} has a non-string variable", source, term_no));
        const std::string name = v.get<std::string>();
        for (std::size_t k = 0; k < names.size(); ++k)
            if (names[k] == name) return k;
        fail(ErrorCode::SchemaError, fmt::format("{}: term {} references unknown variable '{}'", source, term_no, name));
    };

    std::vector<ModelTerm> terms;
    std::size_t term_no = 0;
    for (const json& t : require(doc, "terms", json::value_t::array, source)) {
        ++term_no;
        if (!t.is_object()) fail(ErrorCode::SchemaError, fmt::format("{}: term {} must be an object", source, term_no));
        const json& vars = require(t, "vars", json::value_t::array, source);
        const double coef = require(t, "coef", json::value_t::number_float, source).get<double>();
        if (vars.size() == 1)
            terms.push_back(ModelTerm::linear(index_of(vars[0], term_no), coef));
        else if (vars.size() == 2)
            terms.push_back(ModelTerm::quadratic(index_of(vars[0], term_no), index_of(vars[1], term_no), coef));
        else
            fail(ErrorCode::SchemaError, fmt::format("{}: term {} must name one or two variables", source, term_no));
    }

    ModelDocument out{build_model(terms, intercept, exponent, names, label), {}, {}, {}};
    if (doc.contains("reference_f_values")) {
        for (const auto& item : require(doc, "reference_f_values", json::value_t::object, source).items()) {
            if (!item.value().is_number())
                fail(ErrorCode::SchemaError, fmt::format("{}: reference F value '{}' is not a number", source, item.key()));
            out.reference_f_values[item.key()] = item.value().get<double>();
        }
    }
    if (doc.contains("reference_center")) {
        for (const json& v : require(doc, "reference_center", json::value_t::array, source)) {
            if (!v.is_number()) fail(ErrorCode::SchemaError, fmt::format("{}: reference_center entries must be numbers", source));
            out.reference_center.push_back(v.get<double>());
        }
        if (out.reference_center.size() != names.size())
            fail(ErrorCode::SchemaError, fmt::format("{}: reference_center has {} entries for {} variables", source,
                                                     out.reference_center.size(), names.size()));
    }
    if (doc.contains("description")) out.description = require(doc, "description", json::value_t::string, source).get<std::string>();
    return out;
}

ModelDocument load_model_document(const std::filesystem::path& path) {
    return parse_model_document(read_file(path), path.string());
}

QuadraticModel load_model(const std::filesystem::path& path) { return load_model_document(path).model; }

std::string model_to_json(const ModelDocument& doc) {
    const QuadraticModel& m = doc.model;
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    if (!doc.description.empty()) out["description"] = doc.description;
    out["variables"] = m.names();
    out["response_label"] = m.response_label();
    out["exponent"] = m.exponent();
    out["intercept"] = m.intercept();
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const ModelTerm& t : m.terms()) {
        nlohmann::ordered_json vars = nlohmann::ordered_json::array({m.names()[t.i]});
        if (t.kind == TermKind::Quadratic) vars.push_back(m.names()[t.j]);
        terms.push_back({{"vars", vars}, {"coef", t.coefficient}});
    }
    out["terms"] = terms;
    if (!doc.reference_f_values.empty()) out["reference_f_values"] = doc.reference_f_values;
    if (!doc.reference_center.empty()) out["reference_center"] = doc.reference_center;
    return out.dump(2) + "\n";
}

void save_model(const std::filesystem::path& path, const ModelDocument& doc) { write_file_atomic(path, model_to_json(doc)); }

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) fail(ErrorCode::IoError, fmt::format("cannot open {} for writing", tmp.string()));
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) fail(ErrorCode::IoError, fmt::format("write to {} failed", tmp.string()));
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        fail(ErrorCode::IoError, fmt::format("cannot move output into place at {}", path.string()));
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail(ErrorCode::IoError, fmt::format("cannot open {}", path.string()));
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string sha256_file(const std::filesystem::path& path) {
    const std::string bytes = read_file(path);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        fail(ErrorCode::IoError, "SHA-256 computation failed");
    std::string hex;
    for (unsigned int k = 0; k < len; ++k) hex += fmt::format("{:02x}", digest[k]);
    return hex;
}

}  // namespace rsurf
