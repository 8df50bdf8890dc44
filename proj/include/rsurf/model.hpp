#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rsurf/linalg.hpp"

namespace rsurf {

using linalg::SymMatrix;
using linalg::Vector;

enum class TermKind { Linear, Quadratic };

/// One regression term. Linear terms use `i` only; quadratic terms use
/// i <= j. Coefficients are in absolute units (no pending scale factors).
struct ModelTerm {
    TermKind kind = TermKind::Linear;
    std::size_t i = 0;
    std::size_t j = 0;
    double coefficient = 0.0;

    static ModelTerm linear(std::size_t i, double coef) { return {TermKind::Linear, i, i, coef}; }
    static ModelTerm quadratic(std::size_t i, std::size_t j, double coef) { return {TermKind::Quadratic, i, j, coef}; }
};

// "Ga", "Li:Li", "Ga:Bu"
std::string term_name(const ModelTerm& t, std::span<const std::string> names);

/// Second-order model Y = b0 + beta'X + X'BX on the power-transformed
/// response Y = response^exponent.
///
/// B follows the convention B[i][i] = 2*b_ii and B[i][j] = b_ij (i < j).
/// With this convention the quadratic part of the matrix form is exactly
/// twice the quadratic part of the term sum; evaluate_terms() exposes the
/// term-sum reading so the difference stays visible.
class QuadraticModel {
public:
    QuadraticModel(std::vector<std::string> names, double intercept, Vector linear, SymMatrix interaction,
                   double exponent, std::string response_label = "response");

    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    double intercept() const noexcept { return intercept_; }
    const Vector& linear() const noexcept { return linear_; }
    const SymMatrix& interaction() const noexcept { return interaction_; }
    double exponent() const noexcept { return exponent_; }
    const std::string& response_label() const noexcept { return response_label_; }

    /// Non-zero terms in canonical order: linear by index, then quadratic
    /// (i, j) lexicographically. build_model(terms()) reproduces the model.
    std::vector<ModelTerm> terms() const;

    friend bool operator==(const QuadraticModel&, const QuadraticModel&) = default;

private:
    std::vector<std::string> names_;
    double intercept_;
    Vector linear_;
    SymMatrix interaction_;
    double exponent_;
    std::string response_label_;
};

QuadraticModel build_model(std::span<const ModelTerm> terms, double intercept, double exponent,
                           std::vector<std::string> names, std::string response_label = "response");

/// b0 + beta'X + X'BX
double evaluate_matrix(const QuadraticModel& m, std::span<const double> x);

/// b0 + sum b_i x_i + sum_{i<=j} b_ij x_i x_j
double evaluate_terms(const QuadraticModel& m, std::span<const double> x);

/// Natural-units response: evaluate_matrix(x)^(1/exponent).
double predict_response(const QuadraticModel& m, std::span<const double> x);

/// Inverse of the power transform for a single transformed value.
double inverse_transform(double y, double exponent);

/// beta + 2BX
Vector gradient(const QuadraticModel& m, std::span<const double> x);

}  // namespace rsurf
