#pragma once

// Dense symmetric linear algebra for small matrices (n up to ~20).
// Matrices carry no physical scale; callers track units.

#include <cstddef>
#include <span>
#include <vector>

namespace rsurf::linalg {

using Vector = std::vector<double>;

inline constexpr double kDefaultCondTol = 1e-12;

/// Symmetric n×n matrix stored row-major. The constructor symmetrizes its
/// input, so entry(i, j) == entry(j, i) holds bit-exactly.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t n);
    SymMatrix(std::size_t n, std::span<const double> row_major);

    static SymMatrix identity(std::size_t n);
    static SymMatrix diagonal(std::span<const double> diag);

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    // Sets both (i, j) and (j, i).
    void set(std::size_t i, std::size_t j, double value);

    std::span<const double> data() const noexcept { return a_; }
    double frobenius_norm() const;

    friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

/// Eigenpairs ordered by descending |lambda| (ties: larger signed value
/// first). Column k of `vectors` is stored as vectors[k].
struct EigenDecomposition {
    Vector lambdas;
    std::vector<Vector> vectors;
    std::size_t source_n = 0;

    SymMatrix reconstruct() const;
};

/// Cyclic Jacobi. Converges when the off-diagonal Frobenius norm drops to
/// 1e-14 of the matrix norm; gives up with NonConvergence after 100 sweeps.
/// Each eigenvector is signed so its largest-magnitude component is positive.
EigenDecomposition jacobi_eigen(const SymMatrix& s);

/// B^-1 = sum_k lambda_k^-1 V_k V_k'. Throws SingularMatrix when
/// min|lambda| / max|lambda| < cond_tol.
SymMatrix spectral_inverse(const EigenDecomposition& e, double cond_tol = kDefaultCondTol);

/// Solves S x = b by pivoted elimination with one refinement step.
/// Conditioning is checked against cond_tol through the spectrum of S.
Vector solve(const SymMatrix& s, std::span<const double> b, double cond_tol = kDefaultCondTol);

// Small helpers shared by the higher layers.
double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
Vector multiply(const SymMatrix& s, std::span<const double> x);
double quadratic_form(const SymMatrix& s, std::span<const double> x);

/// Ratio min|lambda| / max|lambda|; 0 for the zero matrix.
double inverse_condition(const EigenDecomposition& e);

}  // namespace rsurf::linalg
