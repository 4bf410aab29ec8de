#pragma once

#include <algorithm>
#include <cblas.h>
#include <cfloat>
#include <cmath>
#include <lapacke.h>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace sorsvd {

enum class Trans { none, transpose };

/// Matrix product, optionally transposing either operand in-place in the
/// kernel (no explicit transpose copies).
inline Matrix matmul(const Matrix& a, const Matrix& b,
                     Trans ta = Trans::none, Trans tb = Trans::none) {
    const std::size_t ar = ta == Trans::none ? a.rows() : a.cols();
    const std::size_t ak = ta == Trans::none ? a.cols() : a.rows();
    const std::size_t bk = tb == Trans::none ? b.rows() : b.cols();
    const std::size_t bc = tb == Trans::none ? b.cols() : b.rows();
    if (ak != bk)
        throw shape_error("matmul inner dimensions " + std::to_string(ak) + " and " +
                          std::to_string(bk) + " differ");
    Matrix c(ar, bc);
    cblas_dgemm(CblasRowMajor, ta == Trans::none ? CblasNoTrans : CblasTrans,
                tb == Trans::none ? CblasNoTrans : CblasTrans,
                (int)ar, (int)bc, (int)ak, 1.0, a.data().data(), (int)a.cols(),
                b.data().data(), (int)b.cols(), 0.0, c.data().data(), (int)bc);
    return c;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) { return matmul(a, b); }

namespace detail {

/// Singular values only. The column-major view of our row-major buffer is the
/// transpose, which has identical singular values, so no copy-transpose is
/// needed.
inline std::vector<double> singular_values_destructive(std::vector<double>& buf,
                                                       std::size_t rows, std::size_t cols) {
    const int m = (int)cols, n = (int)rows;  // buffer seen column-major
    std::vector<double> s(std::min(rows, cols));
    int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', m, n, buf.data(), m, s.data(),
                              nullptr, 1, nullptr, 1);
    if (info != 0) throw numerical_error("dgesdd failed, info=" + std::to_string(info));
    return s;
}

}  // namespace detail

/// Singular values of a, nonincreasing.
inline std::vector<double> singular_values(const Matrix& a) {
    std::vector<double> buf = a.data();
    return detail::singular_values_destructive(buf, a.rows(), a.cols());
}

/// Full (thin) SVD: r = min(rows, cols) triplets, sigma nonincreasing, U and V
/// orthonormal. Left singular vectors are canonicalized so their
/// largest-magnitude entry is positive (signs are otherwise non-identifiable).
inline SvdFactors full_svd(const Matrix& a) {
    const std::size_t m = a.rows(), n = a.cols(), r = std::min(m, n);
    std::vector<double> buf = a.data();
    std::vector<double> s(r);
    // Column-major view of the row-major buffer is a^T (n x m). Factor
    // a^T = Ub S Vb^T, then U = Vb and V = Ub. The returned col-major Vb^T
    // buffer (r x m, ld r) reads row-major as Vb (m x r) directly.
    std::vector<double> ub(n * r), vtb(r * m);
    int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'S', (int)n, (int)m, buf.data(), (int)n,
                              s.data(), ub.data(), (int)n, vtb.data(), (int)r);
    if (info != 0) throw numerical_error("dgesdd failed, info=" + std::to_string(info));
    Matrix u(m, r, std::move(vtb));
    Matrix v(n, r);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < r; ++j) v(i, j) = ub[j * n + i];
    // sign canonicalization on the left factor
    for (std::size_t j = 0; j < r; ++j) {
        std::size_t imax = 0;
        double amax = -1.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double av = std::abs(u(i, j));
            if (av > amax) {
                amax = av;
                imax = i;
            }
        }
        if (u(imax, j) < 0.0) {
            for (std::size_t i = 0; i < m; ++i) u(i, j) = -u(i, j);
            for (std::size_t i = 0; i < n; ++i) v(i, j) = -v(i, j);
        }
    }
    return SvdFactors{std::move(u), std::move(s), std::move(v)};
}

/// Leading k triplets of the SVD. Ties at sigma_k keep the factorization's
/// stable descending order, so results are deterministic.
inline SvdFactors truncated_svd(const Matrix& a, std::size_t k) {
    const std::size_t r = std::min(a.rows(), a.cols());
    if (k < 1 || k > r) throw parameter_error("truncation rank k out of range [1, min(m,n)]");
    SvdFactors f = full_svd(a);
    if (k == r) return f;
    f.sigma.resize(k);
    f.u = f.u.block(0, 0, a.rows(), k);
    f.v = f.v.block(0, 0, a.cols(), k);
    return f;
}

/// Thin (economy) QR by Householder reflections; requires rows >= cols.
/// R's diagonal is made nonnegative by flipping signs into Q.
inline QrFactors thin_qr(const Matrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    if (m < n) throw shape_error("thin_qr requires rows >= cols");
    std::vector<double> buf = a.data();
    std::vector<double> tau(n);
    int info = LAPACKE_dgeqrf(LAPACK_ROW_MAJOR, (int)m, (int)n, buf.data(), (int)n, tau.data());
    if (info != 0) throw numerical_error("dgeqrf failed, info=" + std::to_string(info));
    Matrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) r(i, j) = buf[i * n + j];
    info = LAPACKE_dorgqr(LAPACK_ROW_MAJOR, (int)m, (int)n, (int)n, buf.data(), (int)n, tau.data());
    if (info != 0) throw numerical_error("dorgqr failed, info=" + std::to_string(info));
    Matrix q(m, n, std::move(buf));
    for (std::size_t j = 0; j < n; ++j) {
        if (r(j, j) < 0.0) {
            for (std::size_t i = 0; i < m; ++i) q(i, j) = -q(i, j);
            for (std::size_t i = j; i < n; ++i) r(j, i) = -r(j, i);
        }
    }
    return QrFactors{std::move(q), std::move(r)};
}

/// Moore-Penrose pseudo-inverse with an explicit singular value cutoff:
/// directions with sigma_i <= tol * sigma_1 are dropped.
inline Matrix pseudo_inverse(const Matrix& a, double tol) {
    if (tol < 0.0) throw parameter_error("pseudo_inverse tolerance must be nonnegative");
    SvdFactors f = full_svd(a);
    const std::size_t m = a.rows(), n = a.cols(), r = f.sigma.size();
    const double cut = f.sigma.empty() ? 0.0 : tol * f.sigma[0];
    // V * diag(1/sigma) * U^T, built by scaling V's columns
    Matrix vs = f.v;
    for (std::size_t j = 0; j < r; ++j) {
        const double w = f.sigma[j] > cut ? 1.0 / f.sigma[j] : 0.0;
        for (std::size_t i = 0; i < n; ++i) vs(i, j) *= w;
    }
    (void)m;
    return matmul(vs, f.u, Trans::none, Trans::transpose);
}

/// Default cutoff max(m,n) * machine epsilon, the standard rank-determination
/// choice.
inline Matrix pseudo_inverse(const Matrix& a) {
    return pseudo_inverse(a, (double)std::max(a.rows(), a.cols()) * DBL_EPSILON);
}

enum class NormKind { frobenius, spectral, nuclear, l1_elementwise };

inline double norm(const Matrix& a, NormKind kind) {
    switch (kind) {
        case NormKind::frobenius: {
            long double acc = 0.0L;
            for (double x : a.data()) acc += (long double)x * x;
            return std::sqrt((double)acc);
        }
        case NormKind::l1_elementwise: {
            long double acc = 0.0L;
            for (double x : a.data()) acc += std::abs((long double)x);
            return (double)acc;
        }
        case NormKind::spectral: {
            std::vector<double> s = singular_values(a);
            return s.empty() ? 0.0 : s[0];
        }
        case NormKind::nuclear: {
            std::vector<double> s = singular_values(a);
            long double acc = 0.0L;
            for (double x : s) acc += x;
            return (double)acc;
        }
    }
    throw parameter_error("unknown norm kind");
}

}  // namespace sorsvd
