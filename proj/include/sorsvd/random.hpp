#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "matrix.hpp"

namespace sorsvd {

/// Advance a splitmix64 state and return the next 64-bit word.
/// The stream produced from a given seed is part of the library's external
/// contract: experiments are reproducible bit-for-bit from (seed, dims).
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derive the seed of an independent sub-stream. Used wherever one user seed
/// must drive several draws (generator factors, sparse supports, ...).
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    return splitmix64_next(s);
}

/// Deterministic standard-normal stream: splitmix64 words mapped to uniforms,
/// then the Box-Muller transform. Each pair of words yields two normals.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : state_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0,1] so the log is finite; u2 in [0,1).
        const double u1 = (double)((splitmix64_next(state_) >> 11) + 1) * 0x1.0p-53;
        const double u2 = (double)(splitmix64_next(state_) >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    std::uint64_t next_word() { return splitmix64_next(state_); }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Matrix with i.i.d. standard-normal entries, filled row-major from the
/// seeded stream. A pure function of (rows, cols, seed).
inline Matrix gaussian_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Matrix g(rows, cols);
    NormalStream ns(seed);
    for (double& x : g.data()) x = ns.next();
    return g;
}

}  // namespace sorsvd
