#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "steklov/errors.hpp"

namespace steklov {

/// Ambient dimension n of the hypersurface M^n = [0,L] x S^{n-1}.
/// The whole toolkit assumes n >= 3.
class Dim {
public:
    explicit Dim(int n) : n_(n) {
        if (n < 3) {
            throw domain_error("dimension must satisfy n >= 3, got n = " + std::to_string(n));
        }
    }
    int n() const { return n_; }

private:
    int n_;
};

/// One spherical-harmonic channel on S^{n-1}: index k, Laplace eigenvalue
/// lambda_k = k(n+k-2), multiplicity m_k.
struct Mode {
    int k = 0;
    double lambda = 0.0;
    std::int64_t mult = 1;
};

/// Laplace eigenvalue of the k-th harmonic on the unit (n-1)-sphere.
inline double laplace_eigenvalue(Dim dim, int k) {
    if (k < 0) {
        throw domain_error("mode index must be >= 0, got k = " + std::to_string(k));
    }
    const double n = static_cast<double>(dim.n());
    return static_cast<double>(k) * (n + static_cast<double>(k) - 2.0);
}

namespace detail {

inline std::int64_t checked_to_i64(unsigned __int128 v, const char* ctx) {
    if (v > static_cast<unsigned __int128>(INT64_MAX)) {
        throw arithmetic_error(std::string(ctx) + ": result exceeds 64-bit range");
    }
    return static_cast<std::int64_t>(v);
}

inline unsigned __int128 checked_mul(unsigned __int128 a, unsigned __int128 b, const char* ctx) {
    unsigned __int128 r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw arithmetic_error(std::string(ctx) + ": 128-bit overflow");
    }
    return r;
}

} // namespace detail

/**
 * Multiplicity m_k of the k-th distinct Laplace eigenvalue on S^{n-1}:
 *
 *   m_0 = 1,   m_k = (n+k-3)(n+k-4)...(n-1)/k! * (n+2k-2)   for k >= 1,
 *
 * the falling product having k-1 factors (empty for k = 1). Evaluated exactly
 * as C(n+k-3, k) * (n+2k-2) / (n-2) in 128-bit integers; overflow throws,
 * never wraps.
 */
inline std::int64_t multiplicity(Dim dim, int k) {
    if (k < 0) {
        throw domain_error("mode index must be >= 0, got k = " + std::to_string(k));
    }
    if (k == 0) return 1;
    const int n = dim.n();
    // binom = C(n+k-3, k), built up term by term; each partial value is itself
    // a binomial coefficient, so the divisions are exact.
    unsigned __int128 binom = 1;
    for (int t = 1; t <= k; ++t) {
        binom = detail::checked_mul(binom, static_cast<unsigned __int128>(n - 3 + t), "multiplicity");
        binom /= static_cast<unsigned __int128>(t);
    }
    unsigned __int128 num = detail::checked_mul(binom, static_cast<unsigned __int128>(n + 2 * k - 2), "multiplicity");
    if (num % static_cast<unsigned __int128>(n - 2) != 0) {
        throw internal_error("multiplicity: exact division by n-2 failed");
    }
    return detail::checked_to_i64(num / static_cast<unsigned __int128>(n - 2), "multiplicity");
}

/// Modes 0..k_max with consistent eigenvalue/multiplicity data.
inline std::vector<Mode> mode_table(Dim dim, int k_max) {
    if (k_max < 0) {
        throw domain_error("k_max must be >= 0, got " + std::to_string(k_max));
    }
    std::vector<Mode> out;
    out.reserve(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        out.push_back(Mode{k, laplace_eigenvalue(dim, k), multiplicity(dim, k)});
    }
    return out;
}

} // namespace steklov
