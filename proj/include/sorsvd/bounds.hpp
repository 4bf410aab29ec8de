#pragma once

#include <cfloat>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dense.hpp"
#include "random.hpp"
#include "sketch.hpp"

namespace sorsvd {

/// Analysis parameters: target rank k, sample size ell, the oversampling
/// split p of the spectrum partition (sizes k, ell-p-k, n-ell+p), and power
/// iteration count q. Requires 2 <= p + k <= ell; the average-case bounds
/// additionally need p >= 2.
struct BoundParams {
    int k = 0;
    int ell = 0;
    int p = 0;
    int q = 0;

    void validate() const {
        if (k < 1) throw parameter_error("bound params: k must be positive");
        if (q < 0) throw parameter_error("bound params: q must be nonnegative");
        if (p < 0) throw parameter_error("bound params: p must be nonnegative");
        if (p + k < 2 || p + k > ell)
            throw parameter_error("bound params: need 2 <= p + k <= ell");
    }
};

/// Projections of the n x ell test matrix onto the leading (ell-p) and
/// trailing (n-ell+p) right singular directions, with the two spectral norms
/// that drive every deterministic bound.
struct OmegaSplit {
    Matrix omega1;             // (ell-p) x ell
    Matrix omega2;             // (n-ell+p) x ell
    double norm_omega2;        // ||Omega_2||_2
    double norm_omega1_pinv;   // ||Omega_1^+||_2 (inf if rank deficient)
    bool full_row_rank;
};

/// Split Omega against the right singular basis v (n x n, orthonormal
/// columns assumed): Omega_1 = V_1^T Omega, Omega_2 = V_2^T Omega with V_1
/// the first ell-p columns.
inline OmegaSplit omega_split(const Matrix& v, const Matrix& omega, const BoundParams& params) {
    params.validate();
    const std::size_t n = v.rows();
    if (v.cols() != n) throw shape_error("omega_split expects a full n x n singular basis");
    if (omega.rows() != n || omega.cols() != (std::size_t)params.ell)
        throw shape_error("omega_split: test matrix must be n x ell");
    const std::size_t lead = (std::size_t)(params.ell - params.p);
    if (lead > n) throw parameter_error("omega_split: ell - p exceeds n");
    Matrix v1 = v.block(0, 0, n, lead);
    Matrix v2 = v.block(0, lead, n, n - lead);
    Matrix omega1 = matmul(v1, omega, Trans::transpose, Trans::none);
    Matrix omega2 = matmul(v2, omega, Trans::transpose, Trans::none);
    std::vector<double> s1 = singular_values(omega1);
    const double smax = s1.empty() ? 0.0 : s1.front();
    const double smin = s1.empty() ? 0.0 : s1.back();
    const bool frr = smin > (double)n * DBL_EPSILON * smax;
    return OmegaSplit{std::move(omega1),
                      std::move(omega2),
                      norm(omega2, NormKind::spectral),
                      frr ? 1.0 / smin : std::numeric_limits<double>::infinity(),
                      frr};
}

namespace detail {

inline double tail_norm(const std::vector<double>& sigma, int k, NormKind kind) {
    if ((std::size_t)k >= sigma.size()) return 0.0;
    if (kind == NormKind::spectral) return sigma[(std::size_t)k];
    long double acc = 0.0L;
    for (std::size_t j = (std::size_t)k; j < sigma.size(); ++j)
        acc += (long double)sigma[j] * sigma[j];
    return std::sqrt((double)acc);
}

inline double sigma_at(const std::vector<double>& sigma, int index1) {
    // 1-based index into the spectrum; past-the-end values are zero
    return (std::size_t)index1 <= sigma.size() ? sigma[(std::size_t)index1 - 1] : 0.0;
}

}  // namespace detail

/// Per-realization singular value lower bounds:
/// sigma_j / sqrt(1 + Phi * (sigma_{ell-p+1}/sigma_j)^(4q+4)) for j = 1..k,
/// with Phi = ||Omega_2||_2^2 ||Omega_1^+||_2^2. q = 0 gives exponent 4.
inline std::vector<double> det_sv_lower_bound(const std::vector<double>& sigma,
                                              const BoundParams& params, const OmegaSplit& split) {
    params.validate();
    if (!split.full_row_rank)
        throw bound_inapplicable_error("Omega_1 is not full row rank");
    const double phi = split.norm_omega2 * split.norm_omega2 * split.norm_omega1_pinv *
                       split.norm_omega1_pinv;
    const double s_tail = detail::sigma_at(sigma, params.ell - params.p + 1);
    const double expo = 4.0 * params.q + 4.0;
    std::vector<double> bounds((std::size_t)params.k);
    for (int j = 1; j <= params.k; ++j) {
        const double sj = detail::sigma_at(sigma, j);
        if (sj <= 0.0) {
            bounds[(std::size_t)j - 1] = 0.0;
            continue;
        }
        const double gamma = s_tail / sj;
        bounds[(std::size_t)j - 1] = sj / std::sqrt(1.0 + phi * std::pow(gamma, expo));
    }
    return bounds;
}

/// Per-realization upper bound on the rank-k approximation error:
/// ||A_0||_rho + sqrt(alpha^2 Phi / (1 + beta^2 Phi))
///            + sqrt(eta^2 Phi / (1 + tau^2 Phi)),
/// with (alpha, beta, eta, tau) as stated for the basic and power variants.
inline double det_lowrank_bound(const std::vector<double>& sigma, const BoundParams& params,
                                const OmegaSplit& split, NormKind kind) {
    params.validate();
    if (kind != NormKind::frobenius && kind != NormKind::spectral)
        throw parameter_error("det_lowrank_bound supports frobenius and spectral norms");
    if (!split.full_row_rank)
        throw bound_inapplicable_error("Omega_1 is not full row rank");
    const double a0 = detail::tail_norm(sigma, params.k, kind);
    const double s1 = detail::sigma_at(sigma, 1);
    const double sk = detail::sigma_at(sigma, params.k);
    const double st = detail::sigma_at(sigma, params.ell - params.p + 1);
    if (st <= 0.0 || s1 <= 0.0) return a0;  // vanishing tail: extra terms are exactly zero
    const double phi = split.norm_omega2 * split.norm_omega2 * split.norm_omega1_pinv *
                       split.norm_omega1_pinv;
    const double rootk = std::sqrt((double)params.k);
    double alpha, beta, eta, tau;
    if (params.q == 0) {
        alpha = rootk * st * st / sk;
        beta = st * st / (s1 * sk);
        eta = rootk * st;
        tau = st / s1;
    } else {
        const double g = std::pow(st / sk, 2.0 * params.q);
        alpha = rootk * (st * st / sk) * g;
        beta = (st * st / (s1 * sk)) * g;
        eta = (sk / st) * alpha;
        tau = (1.0 / st) * beta;
    }
    return a0 + std::sqrt(alpha * alpha * phi / (1.0 + beta * beta * phi)) +
           std::sqrt(eta * eta * phi / (1.0 + tau * tau * phi));
}

/// nu_1 = sqrt(n - ell + p) + sqrt(ell) + 7, the Gaussian spectral-norm
/// expectation constant for the trailing block.
inline double avg_nu1(std::size_t n, int ell, int p) {
    return std::sqrt((double)n - ell + p) + std::sqrt((double)ell) + 7.0;
}

/// nu_2 = 4 e sqrt(ell) / (p + 1), the Gaussian pseudo-inverse constant; needs
/// p >= 2.
inline double avg_nu2(int ell, int p) {
    return 4.0 * std::numbers::e * std::sqrt((double)ell) / (double)(p + 1);
}

/// Average-case singular value lower bounds (expectations over the Gaussian
/// draw): sigma_j / sqrt(1 + nu^2 gamma_j^(4q+4)) with nu = nu_1 nu_2 and
/// gamma_j = sigma_{ell-p+1}/sigma_j. The spectrum length is taken as the
/// ambient column dimension n (rows >= cols orientation).
inline std::vector<double> avg_sv_lower_bound(const std::vector<double>& sigma,
                                              const BoundParams& params) {
    params.validate();
    if (params.p < 2) throw parameter_error("average-case bounds need p >= 2");
    const std::size_t n = sigma.size();
    const double nu = avg_nu1(n, params.ell, params.p) * avg_nu2(params.ell, params.p);
    const double st = detail::sigma_at(sigma, params.ell - params.p + 1);
    const double expo = 4.0 * params.q + 4.0;
    std::vector<double> bounds((std::size_t)params.k);
    for (int j = 1; j <= params.k; ++j) {
        const double sj = detail::sigma_at(sigma, j);
        if (sj <= 0.0) {
            bounds[(std::size_t)j - 1] = 0.0;
            continue;
        }
        const double gamma = st / sj;
        bounds[(std::size_t)j - 1] = sj / std::sqrt(1.0 + nu * nu * std::pow(gamma, expo));
    }
    return bounds;
}

/// Average-case upper bound on the approximation error:
/// ||A_0||_rho + (1 + gamma_k) sqrt(k) nu sigma_{ell-p+1} (* gamma_k^(2q)).
inline double avg_lowrank_bound(const std::vector<double>& sigma, const BoundParams& params,
                                NormKind kind) {
    params.validate();
    if (params.p < 2) throw parameter_error("average-case bounds need p >= 2");
    if (kind != NormKind::frobenius && kind != NormKind::spectral)
        throw parameter_error("avg_lowrank_bound supports frobenius and spectral norms");
    const double a0 = detail::tail_norm(sigma, params.k, kind);
    const double sk = detail::sigma_at(sigma, params.k);
    const double st = detail::sigma_at(sigma, params.ell - params.p + 1);
    if (st <= 0.0 || sk <= 0.0) return a0;
    const std::size_t n = sigma.size();
    const double nu = avg_nu1(n, params.ell, params.p) * avg_nu2(params.ell, params.p);
    const double gamma_k = st / sk;
    double extra = (1.0 + gamma_k) * std::sqrt((double)params.k) * nu * st;
    if (params.q > 0) extra *= std::pow(gamma_k, 2.0 * params.q);
    return a0 + extra;
}

/// Tightest admissible average-case error bound over p in {2, ..., ell-k}.
inline double avg_lowrank_bound_best_p(const std::vector<double>& sigma, int k, int ell, int q,
                                       NormKind kind) {
    double best = std::numeric_limits<double>::infinity();
    for (int p = 2; p + k <= ell; ++p) {
        BoundParams bp{k, ell, p, q};
        best = std::min(best, avg_lowrank_bound(sigma, bp, kind));
    }
    if (!std::isfinite(best))
        throw parameter_error("no admissible p in {2, ..., ell-k}");
    return best;
}

enum class BoundKind { deterministic, average };

/// One Monte-Carlo draw of the verification harness.
struct BoundTrial {
    int trial;
    std::uint64_t seed;
    double err_f, err_2;        // realized approximation errors
    double bound_f, bound_2;    // per-realization Theorem-5-style bounds
    bool satisfied_f, satisfied_2;
    bool full_row_rank;
    std::vector<double> sigma_hat;   // realized leading singular values
    std::vector<double> sv_lower;    // per-realization lower bounds
    bool sv_satisfied;               // lower <= realized <= true, all j
};

/// Aggregated verification report. For kind == deterministic the headline
/// bound fields are means of the per-trial bounds and the satisfied flags are
/// conjunctions over trials; for kind == average they carry the closed-form
/// expectation bounds checked against empirical means with a 3-standard-error
/// one-sided allowance. Entries of bound_satisfied: [0, k) singular values,
/// [k] Frobenius error, [k+1] spectral error.
struct BoundReport {
    BoundKind kind;
    int trials;
    std::vector<double> sv_lower_bounds;
    double lowrank_bound_frobenius = 0.0;
    double lowrank_bound_spectral = 0.0;
    double realized_error_frobenius = 0.0;
    double realized_error_spectral = 0.0;
    std::vector<double> realized_sigmas;
    std::vector<bool> bound_satisfied;
    std::vector<BoundTrial> records;
};

/// Run `trials` independent decompositions of a (seed + trial index drives
/// each draw), evaluate the per-realization deterministic bounds with the
/// realized split norms, and aggregate against the average-case bounds.
/// Satisfaction flags allow 1e-9 * sigma_1 of slack. The right singular basis
/// of a required by the split is computed internally (analysis-side oracle);
/// rows >= cols is required so that basis is square.
inline BoundReport bound_tightness_experiment(const Matrix& a, int k, const BoundParams& params,
                                              int trials, std::uint64_t seed,
                                              BoundKind kind = BoundKind::deterministic) {
    params.validate();
    if (k != params.k) throw parameter_error("bound_tightness_experiment: k differs from params.k");
    if (trials < 1) throw parameter_error("bound_tightness_experiment needs trials >= 1");
    if (a.rows() < a.cols())
        throw parameter_error("bound analysis assumes rows >= cols");
    const SvdFactors ref = full_svd(a);
    const std::vector<double>& sigma = ref.sigma;
    const double slack = sigma.empty() ? 0.0 : 1e-9 * sigma[0];

    BoundReport rep;
    rep.kind = kind;
    rep.trials = trials;
    rep.records.reserve((std::size_t)trials);

    std::vector<double> mean_sigma((std::size_t)k, 0.0);
    std::vector<double> mean_sv_bound((std::size_t)k, 0.0);
    std::vector<char> sv_all_ok((std::size_t)k, 1);
    double mean_err_f = 0.0, mean_err_2 = 0.0, mean_bound_f = 0.0, mean_bound_2 = 0.0;
    double ss_err_f = 0.0, ss_err_2 = 0.0;
    std::vector<double> ss_sigma((std::size_t)k, 0.0);
    bool all_f = true, all_2 = true;
    int frr_trials = 0;

    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = seed + (std::uint64_t)t;
        SketchConfig cfg{params.ell, params.q, trial_seed, false};
        LowRankApprox x = sor_svd_power(a, k, cfg);
        BoundTrial rec;
        rec.trial = t;
        rec.seed = trial_seed;
        rec.err_f = approx_error(a, x, NormKind::frobenius);
        rec.err_2 = approx_error(a, x, NormKind::spectral);
        rec.sigma_hat = x.sigma;

        Matrix omega = gaussian_matrix(a.cols(), (std::size_t)params.ell, trial_seed);
        OmegaSplit split = omega_split(ref.v, omega, params);
        rec.full_row_rank = split.full_row_rank;
        if (split.full_row_rank) {
            ++frr_trials;
            rec.sv_lower = det_sv_lower_bound(sigma, params, split);
            rec.bound_f = det_lowrank_bound(sigma, params, split, NormKind::frobenius);
            rec.bound_2 = det_lowrank_bound(sigma, params, split, NormKind::spectral);
            rec.satisfied_f = rec.err_f <= rec.bound_f + slack;
            rec.satisfied_2 = rec.err_2 <= rec.bound_2 + slack;
            rec.sv_satisfied = true;
            for (int j = 0; j < k; ++j) {
                const double shat = rec.sigma_hat[(std::size_t)j];
                const double lo = rec.sv_lower[(std::size_t)j];
                const double hi = detail::sigma_at(sigma, j + 1);
                const bool ok = shat >= lo - slack && shat <= hi + slack;
                if (!ok) {
                    rec.sv_satisfied = false;
                    sv_all_ok[(std::size_t)j] = 0;
                }
                mean_sv_bound[(std::size_t)j] += lo;
            }
            all_f = all_f && rec.satisfied_f;
            all_2 = all_2 && rec.satisfied_2;
            mean_bound_f += rec.bound_f;
            mean_bound_2 += rec.bound_2;
        } else {
            rec.bound_f = rec.bound_2 = std::numeric_limits<double>::infinity();
            rec.satisfied_f = rec.satisfied_2 = true;  // hypothesis vacuous
            rec.sv_satisfied = true;
        }
        mean_err_f += rec.err_f;
        mean_err_2 += rec.err_2;
        ss_err_f += rec.err_f * rec.err_f;
        ss_err_2 += rec.err_2 * rec.err_2;
        for (int j = 0; j < k; ++j) {
            mean_sigma[(std::size_t)j] += rec.sigma_hat[(std::size_t)j];
            ss_sigma[(std::size_t)j] += rec.sigma_hat[(std::size_t)j] * rec.sigma_hat[(std::size_t)j];
        }
        rep.records.push_back(std::move(rec));
    }

    const double nt = (double)trials;
    mean_err_f /= nt;
    mean_err_2 /= nt;
    for (int j = 0; j < k; ++j) mean_sigma[(std::size_t)j] /= nt;
    rep.realized_error_frobenius = mean_err_f;
    rep.realized_error_spectral = mean_err_2;
    rep.realized_sigmas = mean_sigma;

    if (kind == BoundKind::deterministic) {
        const double d = frr_trials > 0 ? (double)frr_trials : 1.0;
        for (int j = 0; j < k; ++j) mean_sv_bound[(std::size_t)j] /= d;
        rep.sv_lower_bounds = mean_sv_bound;
        rep.lowrank_bound_frobenius = mean_bound_f / d;
        rep.lowrank_bound_spectral = mean_bound_2 / d;
        rep.bound_satisfied.assign((std::size_t)k + 2, false);
        for (int j = 0; j < k; ++j) rep.bound_satisfied[(std::size_t)j] = sv_all_ok[(std::size_t)j] != 0;
        rep.bound_satisfied[(std::size_t)k] = all_f;
        rep.bound_satisfied[(std::size_t)k + 1] = all_2;
    } else {
        rep.sv_lower_bounds = avg_sv_lower_bound(sigma, params);
        rep.lowrank_bound_frobenius = avg_lowrank_bound(sigma, params, NormKind::frobenius);
        rep.lowrank_bound_spectral = avg_lowrank_bound(sigma, params, NormKind::spectral);
        rep.bound_satisfied.assign((std::size_t)k + 2, false);
        auto se = [&](double ss, double mean) {
            const double var = std::max(0.0, ss / nt - mean * mean);
            return std::sqrt(var / nt);
        };
        for (int j = 0; j < k; ++j) {
            const double m = mean_sigma[(std::size_t)j];
            const double s = se(ss_sigma[(std::size_t)j], m);
            rep.bound_satisfied[(std::size_t)j] = m + 3.0 * s >= rep.sv_lower_bounds[(std::size_t)j];
        }
        rep.bound_satisfied[(std::size_t)k] =
            mean_err_f - 3.0 * se(ss_err_f, mean_err_f) <= rep.lowrank_bound_frobenius;
        rep.bound_satisfied[(std::size_t)k + 1] =
            mean_err_2 - 3.0 * se(ss_err_2, mean_err_2) <= rep.lowrank_bound_spectral;
    }
    return rep;
}

/// CSV serialization: one row per trial plus a summary row of means and
/// conjunction flags.
inline std::string bound_report_csv(const BoundReport& rep) {
    std::ostringstream out;
    out << "trial,seed,err_f,err_2,bound_f,bound_2,satisfied_f,satisfied_2\n";
    char buf[512];
    for (const BoundTrial& r : rep.records) {
        std::snprintf(buf, sizeof buf, "%d,%llu,%.17g,%.17g,%.17g,%.17g,%d,%d\n", r.trial,
                      (unsigned long long)r.seed, r.err_f, r.err_2, r.bound_f, r.bound_2,
                      r.satisfied_f ? 1 : 0, r.satisfied_2 ? 1 : 0);
        out << buf;
    }
    const std::size_t k = rep.sv_lower_bounds.size();
    const bool sf = rep.bound_satisfied.size() >= k + 2 && rep.bound_satisfied[k];
    const bool s2 = rep.bound_satisfied.size() >= k + 2 && rep.bound_satisfied[k + 1];
    std::snprintf(buf, sizeof buf, "summary,%d,%.17g,%.17g,%.17g,%.17g,%d,%d\n", rep.trials,
                  rep.realized_error_frobenius, rep.realized_error_spectral,
                  rep.lowrank_bound_frobenius, rep.lowrank_bound_spectral, sf ? 1 : 0,
                  s2 ? 1 : 0);
    out << buf;
    return out.str();
}

}  // namespace sorsvd
