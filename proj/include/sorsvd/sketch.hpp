#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dense.hpp"
#include "random.hpp"

namespace sorsvd {

/// Which randomized decomposition produced a LowRankApprox.
enum class SketchMethod { sor, sor_power, rsvd, tsr };

inline const char* to_string(SketchMethod m) {
    switch (m) {
        case SketchMethod::sor: return "sor";
        case SketchMethod::sor_power: return "sor_power";
        case SketchMethod::rsvd: return "rsvd";
        case SketchMethod::tsr: return "tsr";
    }
    return "?";
}

/// Knobs shared by the randomized decompositions: sample size ell (number of
/// sketch columns, k <= ell < min(m,n)), power iteration count q, the seed of
/// the Gaussian draw, and whether to replace the third data pass by the
/// single-pass compressed-core approximation.
struct SketchConfig {
    int ell = 0;
    int q = 0;
    std::uint64_t seed = 0;
    bool single_pass = false;
};

/// Rank-k factored approximation U diag(sigma) V^T plus method diagnostics.
/// `passes` is the number of passes over the data matrix the producing
/// algorithm consumed.
struct LowRankApprox {
    Matrix u;
    std::vector<double> sigma;
    Matrix v;
    SketchMethod method;
    int passes;
    int ell;
    int q;
    std::uint64_t seed;
};

/// Single-pass approximation of the compressed core M = Q1^T A Q2, computed
/// from matrices already in hand: M_approx = Q1^T T1 (Q2^T W)^+, where W is
/// the sketch that produced Q2 (the test matrix itself for the basic
/// algorithm, the pre-update T2 when the power method is used).
inline Matrix m_approx(const Matrix& q1, const Matrix& t1, const Matrix& q2, const Matrix& w) {
    Matrix lhs = matmul(q1, t1, Trans::transpose, Trans::none);
    Matrix core = matmul(q2, w, Trans::transpose, Trans::none);
    return lhs * pseudo_inverse(core);
}

namespace detail {

inline void validate_sketch(const Matrix& a, int k, int ell, int q) {
    const std::size_t mn = std::min(a.rows(), a.cols());
    if (a.rows() < 2 || a.cols() < 2) throw parameter_error("sketch input must be at least 2x2");
    if (k < 1) throw parameter_error("target rank k must be positive");
    if (ell < k) throw parameter_error("sample size ell must satisfy ell >= k");
    if ((std::size_t)ell >= mn) throw parameter_error("sample size ell must be < min(rows, cols)");
    if (q < 0) throw parameter_error("power iteration count q must be nonnegative");
}

inline Matrix scale_cols(Matrix m, const std::vector<double>& w) {
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) *= w[j];
    return m;
}

}  // namespace detail

/// Subspace-orbit randomized SVD, optionally with q power iterations.
///
/// The column sketch T1 = A Omega and the row sketch T2 = A^T T1 reuse one
/// test matrix; both are orthonormalized and A is compressed from both sides
/// before a small rank-k truncated SVD. With q >= 1 the sketches are refined
/// by alternating multiplications with A and A^T before compression. The
/// single-pass variant replaces M = Q1^T A Q2 with the pseudo-inverse
/// correction built from the pre-update row sketch.
inline LowRankApprox sor_svd_power(const Matrix& a, int k, const SketchConfig& cfg) {
    detail::validate_sketch(a, k, cfg.ell, cfg.q);
    const std::size_t n = a.cols();
    Matrix t2 = gaussian_matrix(n, (std::size_t)cfg.ell, cfg.seed);
    Matrix t1(a.rows(), (std::size_t)cfg.ell);
    Matrix t2_pre = t2;  // value entering the final iteration; feeds m_approx
    for (int i = 0; i <= cfg.q; ++i) {
        if (cfg.single_pass && i == cfg.q) t2_pre = t2;
        t1 = a * t2;
        t2 = matmul(a, t1, Trans::transpose, Trans::none);
    }
    Matrix q1 = thin_qr(t1).q;
    Matrix q2 = thin_qr(t2).q;
    Matrix m = cfg.single_pass
                   ? m_approx(q1, t1, q2, t2_pre)
                   : matmul(matmul(q1, a, Trans::transpose, Trans::none), q2);
    SvdFactors mk = truncated_svd(m, (std::size_t)k);
    const int passes = cfg.single_pass ? 2 * cfg.q + 2 : 2 * cfg.q + 3;
    return LowRankApprox{q1 * mk.u,
                         std::move(mk.sigma),
                         q2 * mk.v,
                         cfg.q == 0 ? SketchMethod::sor : SketchMethod::sor_power,
                         passes,
                         cfg.ell,
                         cfg.q,
                         cfg.seed};
}

/// Basic (three-pass, or two-pass single-pass-core) form; requires cfg.q == 0.
inline LowRankApprox sor_svd(const Matrix& a, int k, const SketchConfig& cfg) {
    if (cfg.q != 0) throw parameter_error("sor_svd requires q == 0; use sor_svd_power");
    return sor_svd_power(a, k, cfg);
}

/// One-sided randomized SVD baseline: Y = (A A^T)^q A Omega, project A onto
/// the orthonormalized range of Y, then a full SVD of the small projection.
/// Returns all ell triplets; truncate() narrows to a target rank.
inline LowRankApprox r_svd(const Matrix& a, int ell, int q, std::uint64_t seed) {
    detail::validate_sketch(a, ell, ell, q);
    Matrix y = a * gaussian_matrix(a.cols(), (std::size_t)ell, seed);
    for (int i = 0; i < q; ++i) y = a * matmul(a, y, Trans::transpose, Trans::none);
    Matrix qy = thin_qr(y).q;
    Matrix b = matmul(qy, a, Trans::transpose, Trans::none);
    SvdFactors f = full_svd(b);
    return LowRankApprox{qy * f.u,     std::move(f.sigma), std::move(f.v), SketchMethod::rsvd,
                         2 * q + 2, ell,                q,               seed};
}

/// Two-sided randomized SVD baseline with two independent test matrices
/// (Psi2 is drawn from seed^1) and a pseudo-inverse core correction; the one
/// truly single-pass algorithm here.
inline LowRankApprox tsr_svd(const Matrix& a, int ell, std::uint64_t seed) {
    detail::validate_sketch(a, ell, ell, 0);
    Matrix psi1 = gaussian_matrix(a.cols(), (std::size_t)ell, seed);
    Matrix psi2 = gaussian_matrix(a.rows(), (std::size_t)ell, seed ^ 1ULL);
    Matrix y1 = a * psi1;
    Matrix y2 = matmul(a, psi2, Trans::transpose, Trans::none);
    Matrix q1 = thin_qr(y1).q;
    Matrix q2 = thin_qr(y2).q;
    Matrix b = m_approx(q1, y1, q2, psi1);
    SvdFactors f = full_svd(b);
    return LowRankApprox{q1 * f.u, std::move(f.sigma), q2 * f.v, SketchMethod::tsr, 1, ell, 0, seed};
}

/// Narrow an approximation to its leading k triplets.
inline LowRankApprox truncate(const LowRankApprox& x, int k) {
    if (k < 1 || (std::size_t)k > x.sigma.size())
        throw parameter_error("truncate rank out of range");
    LowRankApprox t = x;
    t.sigma.resize((std::size_t)k);
    t.u = x.u.block(0, 0, x.u.rows(), (std::size_t)k);
    t.v = x.v.block(0, 0, x.v.rows(), (std::size_t)k);
    return t;
}

/// U diag(sigma) V^T as a dense matrix.
inline Matrix reconstruct(const LowRankApprox& x) {
    return matmul(detail::scale_cols(x.u, x.sigma), x.v, Trans::none, Trans::transpose);
}

/// || a - reconstruct(x) || in the requested norm.
inline double approx_error(const Matrix& a, const LowRankApprox& x, NormKind kind) {
    if (a.rows() != x.u.rows() || a.cols() != x.v.rows())
        throw shape_error("approx_error: approximation does not match matrix dims");
    return norm(a - reconstruct(x), kind);
}

enum class FlopVariant { sor_3pass, sor_2pass, sor_power_2q3, sor_power_2q2 };

/// Operation-count models for the SOR-SVD variants, with C_mult = 2mn (the
/// cost of one multiplication pass with A or A^T). Exact integer arithmetic.
inline long long flop_estimate(long long m, long long n, long long ell, long long k,
                               long long q, FlopVariant variant) {
    if (m <= 0 || n <= 0 || ell <= 0 || k <= 0 || q < 0)
        throw parameter_error("flop_estimate requires positive dimensions and q >= 0");
    const long long cmult = 2 * m * n;
    switch (variant) {
        case FlopVariant::sor_3pass:
            return 3 * ell * cmult + 2 * ell * (m + n) * (ell + k) + 2 * ell * ell * (m + ell);
        case FlopVariant::sor_2pass:
            return 2 * ell * cmult + 2 * ell * (m + n) * (2 * ell + k) + 5 * ell * ell * ell;
        case FlopVariant::sor_power_2q3:
            return (2 * q + 3) * ell * cmult + 2 * ell * (m + n) * (ell + k) +
                   2 * ell * ell * (m + ell);
        case FlopVariant::sor_power_2q2:
            return (2 * q + 2) * ell * cmult + 2 * ell * (m + n) * (2 * ell + k) +
                   5 * ell * ell * ell;
    }
    throw parameter_error("unknown flop variant");
}

}  // namespace sorsvd
