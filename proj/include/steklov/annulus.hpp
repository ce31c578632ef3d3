#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "steklov/errors.hpp"
#include "steklov/modes.hpp"
#include "steklov/spectrum.hpp"

namespace steklov {

/// Which condition is imposed on the outer sphere of the annulus while the
/// inner sphere carries the Steklov condition.
enum class MixedKind { Dirichlet, Neumann };

namespace detail {

inline void check_outer_radius(double R) {
    if (!(R > 1.0)) {
        throw domain_error("annulus outer radius must satisfy R > 1, got R = " + std::to_string(R));
    }
    if (R - 1.0 < 1e-12) {
        throw ill_conditioned_error("annulus outer radius too close to 1 (R - 1 < 1e-12); "
                                    "closed forms are unreliable there");
    }
}

inline void check_mode(int k) {
    if (k < 0) throw domain_error("mode index must be >= 0, got k = " + std::to_string(k));
}

} // namespace detail

/**
 * Steklov-Dirichlet eigenvalue of the Euclidean annulus A_R (inner radius 1,
 * outer radius R), mode k counted without multiplicity:
 *
 *   sigma_(k)^D(A_R) = ((k+n-2) R^m + k) / (R^m - 1),   m = 2k+n-2.
 *
 * Evaluated with q = R^{-m} = exp(-m log R) so the value stays finite for
 * arbitrarily large k log R, and with expm1 so accuracy survives R near 1.
 */
inline double sd_eigenvalue(Dim dim, double R, int k) {
    detail::check_outer_radius(R);
    detail::check_mode(k);
    const double n = static_cast<double>(dim.n());
    const double m = 2.0 * k + n - 2.0;
    const double mlogR = m * std::log(R);
    const double q = std::exp(-mlogR);          // R^{-m} in (0,1)
    const double one_minus_q = -std::expm1(-mlogR);
    return ((k + n - 2.0) + k * q) / one_minus_q;
}

/**
 * Steklov-Neumann eigenvalue of A_R, mode k counted without multiplicity:
 *
 *   sigma_(k)^N(A_R) = k (k+n-2) (R^m - 1) / (k R^m + k+n-2),   m = 2k+n-2,
 *
 * and sigma_(0)^N = 0 (constant eigenfunction).
 */
inline double sn_eigenvalue(Dim dim, double R, int k) {
    detail::check_outer_radius(R);
    detail::check_mode(k);
    if (k == 0) return 0.0;
    const double n = static_cast<double>(dim.n());
    const double m = 2.0 * k + n - 2.0;
    const double mlogR = m * std::log(R);
    const double q = std::exp(-mlogR);
    const double one_minus_q = -std::expm1(-mlogR);
    return k * (k + n - 2.0) * one_minus_q / (k + (k + n - 2.0) * q);
}

/**
 * Radial factor of a mode-k harmonic function on the annulus, written in the
 * radial variable s in [1, R]:
 *
 *   u(s) = a s^{p+} + b s^{p-},   p+ = k,  p- = -(k+n-2),
 *
 * the two exponents being the roots of the indicial equation
 * p(p-1) + (n-1)p = k(k+n-2).
 */
struct RadialFunction {
    double a = 0.0;
    double b = 0.0;
    double p_plus = 0.0;
    double p_minus = 0.0;
    int n = 3;
    int k = 0;

    double value(double s) const { return a * std::pow(s, p_plus) + b * std::pow(s, p_minus); }

    double deriv(double s) const {
        const double ta = (p_plus == 0.0) ? 0.0 : a * p_plus * std::pow(s, p_plus - 1.0);
        return ta + b * p_minus * std::pow(s, p_minus - 1.0);
    }

    /// Radial flux s^{n-1} u'(s); the mode ODE reads (s^{n-1}u')' = lambda_k s^{n-3} u.
    double flux(double s) const { return std::pow(s, static_cast<double>(n - 1)) * deriv(s); }

    /// Steklov ratio at the inner sphere (outward normal points toward s = 0).
    double steklov_ratio() const { return -deriv(1.0) / value(1.0); }
};

/// Radial eigenfunction of the Steklov-Dirichlet problem: alpha_k(R) = 0,
/// normalized alpha_k(1) = 1.
inline RadialFunction sd_radial_profile(Dim dim, double R, int k) {
    detail::check_outer_radius(R);
    detail::check_mode(k);
    const double n = static_cast<double>(dim.n());
    const double m = 2.0 * k + n - 2.0;
    // a + b = 1,  a R^{p+} + b R^{p-} = 0  =>  a = -q/(1-q), b = 1/(1-q)
    // with q = R^{-m}, which stays finite for any k log R
    const double q = std::exp(-m * std::log(R));
    const double one_minus_q = -std::expm1(-m * std::log(R));
    RadialFunction f;
    f.p_plus = static_cast<double>(k);
    f.p_minus = -(k + n - 2.0);
    f.n = dim.n();
    f.k = k;
    f.a = -q / one_minus_q;
    f.b = 1.0 / one_minus_q;
    return f;
}

/// Radial eigenfunction of the Steklov-Neumann problem: beta_k'(R) = 0,
/// normalized beta_k(1) = 1. For k = 0 this is the constant function.
inline RadialFunction sn_radial_profile(Dim dim, double R, int k) {
    detail::check_outer_radius(R);
    detail::check_mode(k);
    const double n = static_cast<double>(dim.n());
    RadialFunction f;
    f.p_plus = static_cast<double>(k);
    f.p_minus = -(k + n - 2.0);
    f.n = dim.n();
    f.k = k;
    if (k == 0) {
        f.a = 1.0;
        f.b = 0.0;
        return f;
    }
    // b/a = k R^m / (k+n-2) from  a p+ R^{p+-1} + b p- R^{p--1} = 0;
    // normalized via q = R^{-m} to stay finite for any k log R
    const double m = 2.0 * k + n - 2.0;
    const double q = std::exp(-m * std::log(R));
    const double den = (k + n - 2.0) * q + k;
    f.a = (k + n - 2.0) * q / den;
    f.b = k / den;
    return f;
}

/// First `count` eigenvalues (with multiplicity) of the chosen mixed problem
/// on A_R, each tagged with its mode.
inline Spectrum mixed_spectrum(Dim dim, double R, MixedKind kind, std::int64_t count) {
    if (count < 1) throw domain_error("mixed_spectrum: count must be >= 1");
    std::vector<SpectrumEntry> entries;
    std::int64_t have = 0;
    // Both families are strictly increasing in k, so modes can be taken in order.
    for (int k = 0; have < count; ++k) {
        const double sigma = (kind == MixedKind::Dirichlet) ? sd_eigenvalue(dim, R, k)
                                                            : sn_eigenvalue(dim, R, k);
        const std::int64_t mk = multiplicity(dim, k);
        entries.push_back(SpectrumEntry{sigma, k, Parity::None, mk});
        have += mk;
    }
    return Spectrum(std::move(entries));
}

/**
 * Closed-form Steklov spectrum of the degenerated maximizing metric on
 * [0, 2(R-1)] x S^{n-1}: two copies of A_R glued along the outer spheres.
 * Odd reflections carry the Steklov-Dirichlet values, even reflections the
 * Steklov-Neumann values, each with multiplicity m_k.
 */
inline Spectrum glued_annulus_spectrum(Dim dim, double R, std::int64_t count) {
    if (count < 1) throw domain_error("glued_annulus_spectrum: count must be >= 1");
    std::vector<SpectrumEntry> entries;
    std::int64_t have = 0;
    // Both families increase in k and sn_(k) < sd_(k), so mode k+1 and beyond
    // cannot contribute once sn_(k+1) clears the current count-th candidate.
    // (The count alone does not suffice: for R near 1 every Neumann value sits
    // below every Dirichlet value.)
    for (int k = 0;; ++k) {
        if (k > 4096) throw internal_error("glued_annulus_spectrum: mode sweep did not terminate");
        const std::int64_t mk = multiplicity(dim, k);
        entries.push_back(SpectrumEntry{sn_eigenvalue(dim, R, k), k, Parity::Even, mk});
        entries.push_back(SpectrumEntry{sd_eigenvalue(dim, R, k), k, Parity::Odd, mk});
        have += 2 * mk;
        if (have >= count && sn_eigenvalue(dim, R, k + 1) > Spectrum(entries).sigma(count - 1)) {
            break;
        }
    }
    return Spectrum(std::move(entries));
}

} // namespace steklov
