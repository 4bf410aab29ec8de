#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "dense.hpp"
#include "random.hpp"

namespace sorsvd {

enum class GenFamily { noisy_lowrank, polydecay, rpca_instance, random_orthonormal };

inline const char* to_string(GenFamily f) {
    switch (f) {
        case GenFamily::noisy_lowrank: return "noisy_lowrank";
        case GenFamily::polydecay: return "polydecay";
        case GenFamily::rpca_instance: return "rpca_instance";
        case GenFamily::random_orthonormal: return "random_orthonormal";
    }
    return "?";
}

/// Parameters of one synthetic experiment instance. s (sparse cardinality)
/// applies to the rpca_instance family only.
struct GenSpec {
    GenFamily family;
    std::size_t n = 0;
    std::size_t k_or_r = 0;
    long long s = 0;
    std::uint64_t seed = 0;
};

/// How the additive noise matrix of the noisy low-rank family is normalized
/// before scaling. Unit spectral norm makes the noise magnitude exactly the
/// requested multiple of sigma_k; unit Frobenius norm is the alternative
/// reading of "normalized Gaussian matrix".
enum class NoiseNormalization { spectral_unit, frobenius_unit };

/// Q factor of the QR of an n x n seeded Gaussian draw. With the nonnegative-
/// diagonal sign convention this is Haar distributed over the given stream.
inline Matrix random_orthonormal(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw parameter_error("random_orthonormal needs n >= 1");
    return thin_qr(gaussian_matrix(n, n, seed)).q;
}

/// Noisy low-rank test matrix of order n: U S V^T + noise_scale * sigma_k * E
/// with k singular values decreasing geometrically from 1 to 1e-9 and E a
/// normalized Gaussian matrix. Sub-streams: U <- 1, V <- 2, E <- 3.
inline Matrix gen_noisy_lowrank(std::size_t n, std::size_t k, std::uint64_t seed,
                                double noise_scale = 0.1,
                                NoiseNormalization normalization =
                                    NoiseNormalization::spectral_unit) {
    if (k < 2) throw parameter_error("gen_noisy_lowrank needs k >= 2");
    if (k >= n) throw parameter_error("gen_noisy_lowrank needs k < n");
    if (noise_scale < 0.0) throw parameter_error("noise_scale must be nonnegative");
    Matrix u = random_orthonormal(n, sub_seed(seed, 1)).block(0, 0, n, k);
    Matrix v = random_orthonormal(n, sub_seed(seed, 2)).block(0, 0, n, k);
    std::vector<double> sigma(k);
    const double sigma_k = 1e-9;
    for (std::size_t j = 0; j < k; ++j)
        sigma[j] = std::pow(10.0, -9.0 * (double)j / (double)(k - 1));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) u(i, j) *= sigma[j];
    Matrix a = matmul(u, v, Trans::none, Trans::transpose);
    if (noise_scale > 0.0) {
        Matrix e = gaussian_matrix(n, n, sub_seed(seed, 3));
        const double denom = normalization == NoiseNormalization::spectral_unit
                                 ? norm(e, NormKind::spectral)
                                 : norm(e, NormKind::frobenius);
        a += e * (noise_scale * sigma_k / denom);
    }
    return a;
}

/// Test matrix with slowly decaying spectrum: U diag(1, 1/2, ..., 1/n) V^T.
/// Sub-streams: U <- 1, V <- 2.
inline Matrix gen_polydecay(std::size_t n, std::uint64_t seed) {
    if (n < 2) throw parameter_error("gen_polydecay needs n >= 2");
    Matrix u = random_orthonormal(n, sub_seed(seed, 1));
    Matrix v = random_orthonormal(n, sub_seed(seed, 2));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) u(i, j) /= (double)(j + 1);
    return matmul(u, v, Trans::none, Trans::transpose);
}

/// Low-rank plus sparse instance: x = l_true + s_true.
struct RpcaInstance {
    Matrix x;
    Matrix l_true;
    Matrix s_true;
};

/// L = U V^T with n x r standard Gaussian factors; S has exactly s nonzeros
/// of value +-50 at distinct uniformly sampled positions. Sub-streams:
/// U <- 1, V <- 2, support <- 3, signs <- 4.
inline RpcaInstance gen_rpca_instance(std::size_t n, std::size_t r, long long s,
                                      std::uint64_t seed) {
    if (r < 1 || r >= n) throw parameter_error("gen_rpca_instance needs 1 <= r < n");
    const long long cells = (long long)n * (long long)n;
    if (s < 0 || s > cells) throw parameter_error("sparse cardinality s out of [0, n^2]");
    Matrix l = matmul(gaussian_matrix(n, r, sub_seed(seed, 1)),
                      gaussian_matrix(n, r, sub_seed(seed, 2)), Trans::none, Trans::transpose);
    Matrix sp(n, n);
    if (s > 0) {
        // Floyd's algorithm: s distinct cells from {0, ..., n^2 - 1}
        std::uint64_t st = sub_seed(seed, 3);
        std::unordered_set<long long> chosen;
        chosen.reserve((std::size_t)s * 2);
        for (long long j = cells - s; j < cells; ++j) {
            const long long t = (long long)(splitmix64_next(st) % (std::uint64_t)(j + 1));
            if (!chosen.insert(t).second) chosen.insert(j);
        }
        std::vector<long long> pos(chosen.begin(), chosen.end());
        std::sort(pos.begin(), pos.end());
        std::uint64_t sg = sub_seed(seed, 4);
        for (long long p : pos)
            sp.data()[(std::size_t)p] = (splitmix64_next(sg) & 1ULL) ? 50.0 : -50.0;
    }
    Matrix x = l + sp;
    return RpcaInstance{std::move(x), std::move(l), std::move(sp)};
}

}  // namespace sorsvd
