#include "rsurf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "rsurf/errors.hpp"

namespace rsurf::linalg {

namespace {

constexpr double kJacobiTol = 1e-14;
constexpr int kMaxSweeps = 100;

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, "linalg", msg); }

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) sum += a[i * n + j] * a[i * n + j];
    return std::sqrt(sum);
}

void check_finite(std::span<const double> values, const char* what) {
    for (double v : values)
        if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, fmt::format("{} has non-finite entries", what));
}

}  // namespace

SymMatrix::SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "matrix dimension must be positive");
}

SymMatrix::SymMatrix(std::size_t n, std::span<const double> row_major) : SymMatrix(n) {
    if (row_major.size() != n * n)
        fail(ErrorCode::DimensionMismatch, fmt::format("expected {} entries, got {}", n * n, row_major.size()));
    check_finite(row_major, "matrix");
    for (std::size_t i = 0; i < n; ++i) {
        a_[i * n + i] = row_major[i * n + i];
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.5 * (row_major[i * n + j] + row_major[j * n + i]);
            a_[i * n + j] = v;
            a_[j * n + i] = v;
        }
    }
}

SymMatrix SymMatrix::identity(std::size_t n) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1.0;
    return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
    SymMatrix m(diag.size());
    check_finite(diag, "diagonal");
    for (std::size_t i = 0; i < diag.size(); ++i) m.a_[i * diag.size() + i] = diag[i];
    return m;
}

void SymMatrix::set(std::size_t i, std::size_t j, double value) {
    if (i >= n_ || j >= n_) fail(ErrorCode::IndexOutOfRange, fmt::format("({}, {}) outside {}x{}", i, j, n_, n_));
    if (!std::isfinite(value)) fail(ErrorCode::InvalidArgument, "matrix entry must be finite");
    a_[i * n_ + j] = value;
    a_[j * n_ + i] = value;
}

double SymMatrix::frobenius_norm() const {
    return std::sqrt(std::inner_product(a_.begin(), a_.end(), a_.begin(), 0.0));
}

SymMatrix EigenDecomposition::reconstruct() const {
    const std::size_t n = source_n;
    std::vector<double> out(n * n, 0.0);
    for (std::size_t k = 0; k < lambdas.size(); ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out[i * n + j] += lambdas[k] * vectors[k][i] * vectors[k][j];
    return SymMatrix(n, out);
}

EigenDecomposition jacobi_eigen(const SymMatrix& s) {
    const std::size_t n = s.size();
    if (n == 0) fail(ErrorCode::InvalidArgument, "empty matrix");

    std::vector<double> a(s.data().begin(), s.data().end());
    std::vector<double> v(n * n, 0.0);  // columns accumulate eigenvectors
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    const double scale = s.frobenius_norm();
    int sweep = 0;
    while (off_diagonal_norm(a, n) > kJacobiTol * scale) {
        if (++sweep > kMaxSweeps)
            fail(ErrorCode::NonConvergence,
                 fmt::format("Jacobi did not converge in {} sweeps (off-diagonal norm {:.3e}, matrix norm {:.3e})",
                             kMaxSweeps, off_diagonal_norm(a, n), scale));
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - sn * akq;
                    a[k * n + q] = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - sn * aqk;
                    a[q * n + k] = sn * apk + c * aqk;
                }
                // The rotation annihilates (p, q) analytically; pin it.
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;

                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k * n + p];
                    const double vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - sn * vkq;
                    v[k * n + q] = sn * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const double lx = a[x * n + x];
        const double ly = a[y * n + y];
        if (std::abs(lx) != std::abs(ly)) return std::abs(lx) > std::abs(ly);
        return lx > ly;
    });

    EigenDecomposition e;
    e.source_n = n;
    e.lambdas.reserve(n);
    e.vectors.reserve(n);
    for (std::size_t k : order) {
        e.lambdas.push_back(a[k * n + k]);
        Vector col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = v[i * n + k];
        std::size_t big = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(col[i]) > std::abs(col[big])) big = i;
        if (col[big] < 0.0)
            for (double& x : col) x = -x;
        e.vectors.push_back(std::move(col));
    }
    return e;
}

double inverse_condition(const EigenDecomposition& e) {
    double lo = INFINITY;
    double hi = 0.0;
    for (double l : e.lambdas) {
        lo = std::min(lo, std::abs(l));
        hi = std::max(hi, std::abs(l));
    }
    return hi > 0.0 ? lo / hi : 0.0;
}

SymMatrix spectral_inverse(const EigenDecomposition& e, double cond_tol) {
    const double rcond = inverse_condition(e);
    if (rcond < cond_tol)
        fail(ErrorCode::SingularMatrix,
             fmt::format("matrix is singular to working tolerance (min|lambda|/max|lambda| = {:.3e} < {:.1e})", rcond,
                         cond_tol));
    const std::size_t n = e.source_n;
    std::vector<double> out(n * n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double inv = 1.0 / e.lambdas[k];
        const Vector& vk = e.vectors[k];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out[i * n + j] += inv * vk[i] * vk[j];
    }
    return SymMatrix(n, out);
}

Vector solve(const SymMatrix& s, std::span<const double> b, double cond_tol) {
    const std::size_t n = s.size();
    if (b.size() != n) fail(ErrorCode::DimensionMismatch, fmt::format("rhs has {} entries, matrix is {}x{}", b.size(), n, n));
    check_finite(b, "right-hand side");

    const double rcond = inverse_condition(jacobi_eigen(s));
    if (rcond < cond_tol)
        fail(ErrorCode::SingularMatrix,
             fmt::format("cannot solve: min|lambda|/max|lambda| = {:.3e} < {:.1e}", rcond, cond_tol));

    // LU with partial pivoting on a working copy.
    std::vector<double> lu(s.data().begin(), s.data().end());
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu[i * n + k]) > std::abs(lu[piv * n + k])) piv = i;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu[k * n + j], lu[piv * n + j]);
            std::swap(perm[k], perm[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lu[i * n + k] / lu[k * n + k];
            lu[i * n + k] = f;
            for (std::size_t j = k + 1; j < n; ++j) lu[i * n + j] -= f * lu[k * n + j];
        }
    }

    auto lu_solve = [&](std::span<const double> rhs) {
        Vector x(n);
        for (std::size_t i = 0; i < n; ++i) {
            double acc = rhs[perm[i]];
            for (std::size_t j = 0; j < i; ++j) acc -= lu[i * n + j] * x[j];
            x[i] = acc;
        }
        for (std::size_t i = n; i-- > 0;) {
            double acc = x[i];
            for (std::size_t j = i + 1; j < n; ++j) acc -= lu[i * n + j] * x[j];
            x[i] = acc / lu[i * n + i];
        }
        return x;
    };

    Vector x = lu_solve(b);
    Vector r = multiply(s, x);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    const Vector dx = lu_solve(r);
    for (std::size_t i = 0; i < n; ++i) x[i] += dx[i];
    return x;
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "dot product of unequal lengths");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

Vector multiply(const SymMatrix& s, std::span<const double> x) {
    const std::size_t n = s.size();
    if (x.size() != n) fail(ErrorCode::DimensionMismatch, fmt::format("vector has {} entries, matrix is {}x{}", x.size(), n, n));
    Vector y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) y[i] += s(i, j) * x[j];
    return y;
}

double quadratic_form(const SymMatrix& s, std::span<const double> x) { return dot(x, multiply(s, x)); }

}  // namespace rsurf::linalg
