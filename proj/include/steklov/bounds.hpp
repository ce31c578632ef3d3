#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "steklov/annulus.hpp"
#include "steklov/errors.hpp"
#include "steklov/modes.hpp"
#include "steklov/profile.hpp"
#include "steklov/roots.hpp"
#include "steklov/solver.hpp"

namespace steklov {

enum class BranchKind { DirichletMode, NeumannMode, ConstantNminus1 };

/// Which of the competing closed forms realizes a bound.
struct Branch {
    BranchKind kind = BranchKind::NeumannMode;
    int k = 0;

    std::string to_string() const {
        switch (kind) {
            case BranchKind::DirichletMode: return "dirichlet(" + std::to_string(k) + ")";
            case BranchKind::NeumannMode: return "neumann(" + std::to_string(k) + ")";
            default: return "n-1";
        }
    }
};

struct BoundValue {
    double value = 0.0;
    Branch branch;
    double R = 0.0;   // outer radius 1 + L/2 where applicable
};

/// A root of one of the defining equations, with its certificate: relative
/// residual of the equation at the root and the bracket that contained it.
struct CriticalLength {
    double L = 0.0;
    std::string equation;
    double residual = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

struct StabilityConstants {
    double C1 = 0.0;
    double C2 = 0.0;
    double C = 0.0;   // 2 max(C1, C2)
    int n = 0;
};

/**
 * Sharp bound for the first nonzero Steklov eigenvalue at fixed (n, L):
 *
 *   B_n(L) = min{ sigma_0^D(A_{1+L/2}), sigma_1^N(A_{1+L/2}) },
 *
 * Neumann branch below the critical length L_1, Dirichlet above.
 */
inline BoundValue bound_sigma1(Dim dim, double L) {
    if (!(L > 0.0)) throw domain_error("bound_sigma1: L must be positive");
    const double R = 1.0 + L / 2.0;
    const double d = sd_eigenvalue(dim, R, 0);
    const double ne = sn_eigenvalue(dim, R, 1);
    if (ne <= d) return {ne, {BranchKind::NeumannMode, 1}, R};
    return {d, {BranchKind::DirichletMode, 0}, R};
}

/// Upper bracket end for L_1: L_1(n) < 2(e^{3 ln(n-1)/(n-2)} - 1).
inline double l1_upper_bound(Dim dim) {
    const double n = static_cast<double>(dim.n());
    return 2.0 * std::expm1(3.0 * std::log(n - 1.0) / (n - 2.0));
}

namespace detail {

/// Defining polynomial of L_1 in the variable R = 1 + L/2:
/// R^{2n-2} - (n-1) R^n - (n-1)^2 R^{n-2} + (n-1).
inline double l1_polynomial(int n, double R) {
    const double nm1 = static_cast<double>(n - 1);
    return fem::ipow(R, 2 * n - 2) - nm1 * fem::ipow(R, n) - nm1 * nm1 * fem::ipow(R, n - 2) + nm1;
}

inline double l1_polynomial_scale(int n, double R) {
    const double nm1 = static_cast<double>(n - 1);
    return fem::ipow(R, 2 * n - 2) + nm1 * fem::ipow(R, n) + nm1 * nm1 * fem::ipow(R, n - 2) + nm1;
}

/// Defining polynomial of L_2, obtained by clearing denominators in
/// sigma_0^D(A_R) = sigma_(2)^N(A_R):  4R^{2n} - 2n R^{n+2} - n^2 R^{n-2} + 2n.
inline double l2_polynomial(int n, double R) {
    const double nn = static_cast<double>(n);
    return 4.0 * fem::ipow(R, 2 * n) - 2.0 * nn * fem::ipow(R, n + 2) - nn * nn * fem::ipow(R, n - 2) +
           2.0 * nn;
}

inline double l2_polynomial_scale(int n, double R) {
    const double nn = static_cast<double>(n);
    return 4.0 * fem::ipow(R, 2 * n) + 2.0 * nn * fem::ipow(R, n + 2) + nn * nn * fem::ipow(R, n - 2) +
           2.0 * nn;
}

/// Psi_i(R) from the critical-length machinery; its root solves
/// sigma_(i)^D(A_R) = sigma_(i+1)^N(A_R).
inline double psi(int n, int i, double R) {
    const double ip1 = static_cast<double>(i + 1);
    const double inm1 = static_cast<double>(i + n - 1);
    const double tin = static_cast<double>(2 * i + n - 1);
    return ip1 * fem::ipow(R, 2 * i + n - 2) *
               (fem::ipow(R, 2 * i + n) - tin * R * R - inm1 * tin / ip1) +
           inm1;
}

inline double psi_scale(int n, int i, double R) {
    const double ip1 = static_cast<double>(i + 1);
    const double inm1 = static_cast<double>(i + n - 1);
    const double tin = static_cast<double>(2 * i + n - 1);
    return ip1 * fem::ipow(R, 4 * i + 2 * n - 2) + ip1 * tin * fem::ipow(R, 2 * i + n) +
           inm1 * tin * fem::ipow(R, 2 * i + n - 2) + inm1;
}

} // namespace detail

/**
 * Critical length L_1 and the dimensional bound B_n. The root of the
 * defining polynomial (in R = 1 + L/2) is bracketed by (1, l1_upper_bound]
 * and certified two ways: residual of the polynomial and agreement of the
 * two annulus curves at the root.
 */
inline std::pair<CriticalLength, BoundValue> critical_length_L1(Dim dim) {
    const int n = dim.n();
    const double lo = 1.0 + 1e-9;
    double hi = 1.0 + l1_upper_bound(dim) / 2.0;
    auto f = [n](double R) { return detail::l1_polynomial(n, R); };
    hi = ensure_upper_bracket(f, lo, hi);
    const auto r = brent(f, lo, hi);
    const double R1 = r.root;
    const double L1 = 2.0 * (R1 - 1.0);
    const double Bn = (n - 2.0) * std::pow(R1, n - 2.0) / (std::pow(R1, n - 2.0) - 1.0);
    const double cross = std::fabs(sd_eigenvalue(dim, R1, 0) - sn_eigenvalue(dim, R1, 1));
    if (cross > 1e-10 * Bn) {
        throw internal_error("critical_length_L1: polynomial root does not satisfy "
                             "sigma_0^D = sigma_1^N (cross-route residual " + std::to_string(cross) + ")");
    }
    CriticalLength cl;
    cl.L = L1;
    cl.equation = "cor13_polynomial";
    cl.residual = std::fabs(r.f_root) / detail::l1_polynomial_scale(n, R1);
    cl.lo = 2.0 * (r.lo - 1.0);
    cl.hi = 2.0 * (r.hi - 1.0);
    return {cl, BoundValue{Bn, {BranchKind::DirichletMode, 0}, R1}};
}

/// B_n alone (value of the sup of B_n(L) over L).
inline double bound_Bn(Dim dim) { return critical_length_L1(dim).second.value; }

/// Sharp bound for sigma_2 ... sigma_{m_1}: the Neumann mode-1 closed form,
/// independent of where L sits relative to L_1.
inline BoundValue bound_sigma2_to_m1(Dim dim, double L) {
    if (!(L > 0.0)) throw domain_error("bound_sigma2_to_m1: L must be positive");
    const double R = 1.0 + L / 2.0;
    return {sn_eigenvalue(dim, R, 1), {BranchKind::NeumannMode, 1}, R};
}

/// sup over L of bound_sigma2_to_m1: the L -> infinity limit n-1 (a critical
/// length at infinity).
inline double bound_sigma2_to_m1_sup(Dim dim) { return static_cast<double>(dim.n()) - 1.0; }

/// Critical length L_2: unique root of sigma_0^D(A_{1+L/2}) = sigma_(2)^N(A_{1+L/2}).
inline CriticalLength critical_length_L2(Dim dim) {
    const int n = dim.n();
    const double lo = 1.0 + 1e-9;
    double hi = 1.0 + l1_upper_bound(dim) / 2.0;   // L_2 < L_1 <= this bracket
    auto f = [n](double R) { return detail::l2_polynomial(n, R); };
    hi = ensure_upper_bracket(f, lo, hi);
    const auto r = brent(f, lo, hi);
    const double R2 = r.root;
    const double cross = std::fabs(sd_eigenvalue(dim, R2, 0) - sn_eigenvalue(dim, R2, 2));
    if (cross > 1e-10 * sd_eigenvalue(dim, R2, 0)) {
        throw internal_error("critical_length_L2: polynomial root does not satisfy "
                             "sigma_0^D = sigma_(2)^N");
    }
    CriticalLength cl;
    cl.L = 2.0 * (R2 - 1.0);
    cl.equation = "sigma0D_eq_sigma2N";
    cl.residual = std::fabs(r.f_root) / detail::l2_polynomial_scale(n, R2);
    cl.lo = 2.0 * (r.lo - 1.0);
    cl.hi = 2.0 * (r.hi - 1.0);
    return cl;
}

/**
 * Piecewise sharp bound for sigma_{m_1 + 1}:
 *
 *   sigma_(2)^N  if L <= L_2,   sigma_(0)^D  if L_2 < L <= L_1,
 *   sigma_(1)^N  if L_1 < L,
 *
 * continuous at both breakpoints by definition of the roots.
 */
inline BoundValue bound_m1_plus_1(Dim dim, double L) {
    if (!(L > 0.0)) throw domain_error("bound_m1_plus_1: L must be positive");
    const double R = 1.0 + L / 2.0;
    const double L2 = critical_length_L2(dim).L;
    const double L1 = critical_length_L1(dim).first.L;
    if (L <= L2) return {sn_eigenvalue(dim, R, 2), {BranchKind::NeumannMode, 2}, R};
    if (L <= L1) return {sd_eigenvalue(dim, R, 0), {BranchKind::DirichletMode, 0}, R};
    return {sn_eigenvalue(dim, R, 1), {BranchKind::NeumannMode, 1}, R};
}

/// L_D and L_N from the closed forms sigma_0^D = n-1 resp. sigma_(2)^N = n-1,
/// plus the branch the comparison selects for the global m_1+1 bound.
inline std::tuple<CriticalLength, CriticalLength, Branch> appendix_comparator(Dim dim) {
    const double n = static_cast<double>(dim.n());
    const double LD = 2.0 * std::pow(n - 1.0, 1.0 / (n - 2.0)) - 2.0;
    const double LN = 2.0 * std::pow(n * (n + 1.0) / 2.0, 1.0 / (n + 2.0)) - 2.0;
    CriticalLength cd;
    cd.L = LD;
    cd.equation = "sigma0D_eq_nminus1";
    cd.residual = std::fabs(sd_eigenvalue(dim, 1.0 + LD / 2.0, 0) - (n - 1.0)) / (n - 1.0);
    cd.lo = cd.hi = LD;
    CriticalLength cn;
    cn.L = LN;
    cn.equation = "sigma2N_eq_nminus1";
    cn.residual = std::fabs(sn_eigenvalue(dim, 1.0 + LN / 2.0, 2) - (n - 1.0)) / (n - 1.0);
    cn.lo = cn.hi = LN;
    const Branch br = (LN < LD) ? Branch{BranchKind::DirichletMode, 0}
                                : Branch{BranchKind::ConstantNminus1, -1};
    return {cd, cn, br};
}

/// Global (L-independent) sharp bound for sigma_{m_1+1}:
/// max{ sigma_0^D(A_{1+L_2/2}), n-1 }, Dirichlet branch for 3 <= n <= 6.
inline BoundValue bound_m1_plus_1_global(Dim dim) {
    const auto [cd, cn, br] = appendix_comparator(dim);
    if (br.kind == BranchKind::DirichletMode) {
        const double L2 = critical_length_L2(dim).L;
        const double R2 = 1.0 + L2 / 2.0;
        return {sd_eigenvalue(dim, R2, 0), br, R2};
    }
    return {static_cast<double>(dim.n()) - 1.0, br, 0.0};
}

/// Upper bracket end for L_i*: 2(e^{2 ln(2i+n)/(2i+n-2)} - 1).
inline double li_star_upper_bound(Dim dim, int i) {
    if (i < 1) throw domain_error("li_star_upper_bound: need i >= 1");
    const double s = static_cast<double>(2 * i + dim.n());
    return 2.0 * std::expm1(2.0 * std::log(s) / (s - 2.0));
}

/// L_i*: the unique root of Psi_i, i.e. of sigma_(i)^D = sigma_(i+1)^N.
/// An upper bound for the i-th finite critical length L_i.
inline CriticalLength critical_length_Li_star(Dim dim, int i) {
    if (i < 1) throw domain_error("critical_length_Li_star: need i >= 1");
    const int n = dim.n();
    const double lo = 1.0 + 1e-9;
    double hi = 1.0 + li_star_upper_bound(dim, i) / 2.0;
    auto f = [n, i](double R) { return detail::psi(n, i, R); };
    hi = ensure_upper_bracket(f, lo, hi);
    const auto r = brent(f, lo, hi);
    const double Ri = r.root;
    const double cross = std::fabs(sd_eigenvalue(dim, Ri, i) - sn_eigenvalue(dim, Ri, i + 1));
    if (cross > 1e-10 * sd_eigenvalue(dim, Ri, i)) {
        throw internal_error("critical_length_Li_star: Psi root does not satisfy "
                             "sigma_(i)^D = sigma_(i+1)^N");
    }
    CriticalLength cl;
    cl.L = 2.0 * (Ri - 1.0);
    cl.equation = "psi_" + std::to_string(i);
    cl.residual = std::fabs(r.f_root) / detail::psi_scale(n, i, Ri);
    cl.lo = 2.0 * (r.lo - 1.0);
    cl.hi = 2.0 * (r.hi - 1.0);
    return cl;
}

/// Indices of eigenvalues with a finite critical length:
/// k_1 = 1, k_i = m_0 + sum_{j<=i} 2 m_j for i >= 2. Strictly increasing.
inline std::vector<std::int64_t> k_sequence(Dim dim, int i_max) {
    if (i_max < 1) throw domain_error("k_sequence: need i_max >= 1");
    std::vector<std::int64_t> out{1};
    unsigned __int128 acc = 1;   // m_0
    for (int j = 1; j <= i_max; ++j) {
        acc += detail::checked_mul(2, static_cast<unsigned __int128>(multiplicity(dim, j)), "k_sequence");
        if (j >= 2) out.push_back(detail::checked_to_i64(acc, "k_sequence"));
    }
    return out;
}

/// C_1(n), C_2(n) and C(n) = 2 max(C_1, C_2) from the stability theorem,
/// evaluated at B_n.
inline StabilityConstants stability_constants(Dim dim) {
    const double n = static_cast<double>(dim.n());
    const double Bn = bound_Bn(dim);
    const double gapD = Bn - (n - 2.0);   // in (0,1) since n-2 < B_n < n-1
    const double gapN = (n - 1.0) - Bn;
    const double C1 = (2.0 / (gapD * gapD)) / std::pow(Bn / gapD, (n - 3.0) / (n - 2.0));
    const double C2 = ((n - 2.0) * (n - 2.0) / (gapN * gapN)) /
                      (n * std::pow(((n - 1.0) * Bn + 1.0) / gapN, 1.0 / n));
    StabilityConstants c;
    c.C1 = C1;
    c.C2 = C2;
    c.C = 2.0 * std::fmax(C1, C2);
    c.n = dim.n();
    return c;
}

/// C(n, L) = B_n - B_n(L), strictly positive away from L_1.
inline double stability_gap_CnL(Dim dim, double L) {
    if (!(L > 0.0)) throw domain_error("stability_gap_CnL: L must be positive");
    const double L1 = critical_length_L1(dim).first.L;
    if (std::fabs(L - L1) <= 1e-12 * L1) {
        throw domain_error("stability_gap_CnL: L = L_1 (the gap vanishes there by definition)");
    }
    return bound_Bn(dim) - bound_sigma1(dim, L).value;
}

/**
 * C(n, L, m) = B_n(L) - sigma_1(M, g~_m): the bound minus the solver's first
 * nonzero eigenvalue of the smoothed plateau profile. Eigenvalue is
 * Richardson-extrapolated over {N/4, N/2, N}; a non-positive result means the
 * resolution cannot separate the plateau class from the maximizer and is
 * reported as a failure, never returned.
 */
inline double stability_gap_CnLm(Dim dim, double L, double m, double delta, int N) {
    const Profile p = plateau_profile(L, m, delta);
    std::vector<double> vals;
    for (const int Ni : {N / 4, N / 2, N}) {
        vals.push_back(steklov_spectrum(p, dim, 2, Ni).sigma(1));
    }
    const double s1 = richardson_extrapolate(vals, 2.0).limit;
    const double gap = bound_sigma1(dim, L).value - s1;
    if (!(gap > 0.0)) {
        throw numerical_error("stability_gap_CnLm: non-positive gap at N = " + std::to_string(N) +
                              "; refine the grid or shrink delta");
    }
    return gap;
}

} // namespace steklov
