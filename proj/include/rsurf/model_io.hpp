#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "rsurf/model.hpp"

namespace rsurf {

/// Model file contents. Schema:
///
///   {
///     "variables": ["Li", "Ga", "Fl", "Bu"],
///     "exponent": -2.376,
///     "intercept": 1.23e-6,
///     "response_label": "CO2 ppmv",            (optional)
///     "terms": [{"vars": ["Ga"], "coef": -3.0635e-12},
///               {"vars": ["Ga", "Bu"], "coef": 3.73391e-17}, ...],
///     "reference_f_values": {"Ga": 197.22, ...},  (optional, metadata only)
///     "reference_center": [534271, 286155, ...],  (optional, metadata only)
///     "description": "..."                        (optional)
///   }
///
/// Coefficients are absolute; a term over ["Li", "Li"] is the square term.
struct ModelDocument {
    QuadraticModel model;
    std::map<std::string, double> reference_f_values;
    std::string description;
    Vector reference_center;  // empty when absent
};

ModelDocument parse_model_document(std::string_view text, std::string_view source = "<memory>");
ModelDocument load_model_document(const std::filesystem::path& path);
QuadraticModel load_model(const std::filesystem::path& path);

std::string model_to_json(const ModelDocument& doc);
void save_model(const std::filesystem::path& path, const ModelDocument& doc);

/// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace rsurf
