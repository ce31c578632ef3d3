#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "steklov/annulus.hpp"
#include "steklov/errors.hpp"
#include "steklov/modes.hpp"
#include "steklov/profile.hpp"
#include "steklov/roots.hpp"
#include "steklov/spectrum.hpp"

namespace steklov {

struct SpectrumOptions {
    int k_max = 128;        // hard cap on the mode sweep
    int safety_modes = 2;   // extra modes checked after the cutoff
};

namespace fem {

/// Symmetric tridiagonal matrix (diag of size M, off of size M-1).
struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off;
};

inline double ipow(double x, int e) {
    double r = 1.0;
    for (double b = x; e > 0; e >>= 1, b *= b) {
        if (e & 1) r *= b;
    }
    return r;
}

inline void dedup_sorted(std::vector<double>& v) {
    std::size_t w = 1;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] - v[w - 1] > 1e-13) v[w++] = v[i];
    }
    v.resize(w);
}

/// Subdivides each interval between consecutive breakpoints into a number of
/// equal elements proportional to its length (at least one), so every
/// breakpoint is a grid node and the grid stays quasi-uniform.
inline std::vector<double> grid_from_breakpoints(const std::vector<double>& breaks, int target_elems) {
    std::vector<double> b = breaks;
    std::sort(b.begin(), b.end());
    dedup_sorted(b);
    const double total = b.back() - b.front();
    std::vector<double> nodes{b.front()};
    for (std::size_t s = 0; s + 1 < b.size(); ++s) {
        const double len = b[s + 1] - b[s];
        const auto cnt = std::max<std::int64_t>(1, std::llround(target_elems * len / total));
        for (std::int64_t i = 1; i < cnt; ++i) {
            nodes.push_back(b[s] + len * static_cast<double>(i) / static_cast<double>(cnt));
        }
        nodes.push_back(b[s + 1]);
    }
    return nodes;
}

/// Grid for a full profile. Symmetric profiles get a bitwise-mirrored grid
/// (with a midpoint node), so the discrete even/odd decomposition matches the
/// half-problem discretizations exactly.
inline std::vector<double> build_grid(const Profile& p, int target_elems) {
    if (target_elems < 16) throw domain_error("grid size N must be >= 16");
    if (!p.symmetric()) return grid_from_breakpoints(p.breakpoints(), target_elems);
    const double half = p.length() / 2.0;
    std::vector<double> hb;
    for (double x : p.breakpoints()) {
        if (x < half - 1e-14) hb.push_back(x);
    }
    hb.push_back(half);
    const auto hnodes = grid_from_breakpoints(hb, std::max(8, target_elems / 2));
    std::vector<double> nodes = hnodes;
    for (std::size_t i = hnodes.size() - 1; i-- > 0;) {
        nodes.push_back(p.length() - hnodes[i]);
    }
    return nodes;
}

inline std::vector<double> build_half_grid(const HalfProfile& hp, int target_elems) {
    if (target_elems < 16) throw domain_error("grid size N must be >= 16");
    return grid_from_breakpoints(hp.breakpoints(), target_elems);
}

/**
 * Stiffness + weighted mass of the per-mode bilinear form
 *
 *   a(u, v) = int ( h^{n-1} u'v' + lambda h^{n-3} u v ) dr
 *
 * on piecewise-linear elements, 2-point Gauss per element. The common factor
 * Vol(S^{n-1}) of the full Rayleigh quotient is cancelled throughout.
 */
template <typename HEval>
Tridiagonal assemble(const std::vector<double>& nodes, const HEval& h, int n, double lambda) {
    const std::size_t M = nodes.size();
    Tridiagonal A;
    A.diag.assign(M, 0.0);
    A.off.assign(M - 1, 0.0);
    constexpr double gauss = 0.28867513459481287;   // 1/(2 sqrt(3))
    for (std::size_t e = 0; e + 1 < M; ++e) {
        const double x0 = nodes[e], x1 = nodes[e + 1];
        const double dl = x1 - x0;
        const double mid = 0.5 * (x0 + x1);
        const double g1 = mid - gauss * dl;
        const double g2 = mid + gauss * dl;
        const double w = 0.5 * dl;
        const double kap = w * (ipow(h(g1), n - 1) + ipow(h(g2), n - 1)) / (dl * dl);
        A.diag[e] += kap;
        A.diag[e + 1] += kap;
        A.off[e] -= kap;
        if (lambda != 0.0) {
            for (const double g : {g1, g2}) {
                const double wv = w * lambda * ipow(h(g), n - 3);
                const double p0 = (x1 - g) / dl;
                const double p1 = (g - x0) / dl;
                A.diag[e] += wv * p0 * p0;
                A.diag[e + 1] += wv * p1 * p1;
                A.off[e] += wv * p0 * p1;
            }
        }
    }
    return A;
}

/// LDL^T solve for a symmetric positive definite tridiagonal system.
/// in-place on a copy; throws internal_error if a pivot is not positive.
inline std::vector<double> solve_spd(const Tridiagonal& A, std::vector<double> rhs) {
    const std::size_t M = A.diag.size();
    std::vector<double> d = A.diag;
    std::vector<double> l(M > 0 ? M - 1 : 0);
    for (std::size_t i = 0; i + 1 < M; ++i) {
        if (!(d[i] > 0.0)) throw internal_error("tridiagonal solve: singular interior block");
        l[i] = A.off[i] / d[i];
        d[i + 1] -= A.off[i] * l[i];
    }
    if (M > 0 && !(d[M - 1] > 0.0)) throw internal_error("tridiagonal solve: singular interior block");
    for (std::size_t i = 1; i < M; ++i) rhs[i] -= l[i - 1] * rhs[i - 1];
    for (std::size_t i = 0; i < M; ++i) rhs[i] /= d[i];
    for (std::size_t i = M - 1; i-- > 0;) rhs[i] -= l[i] * rhs[i + 1];
    return rhs;
}

} // namespace fem

/**
 * Discrete per-mode Dirichlet-to-Neumann matrix: the 2x2 Schur complement of
 * the mode system onto the two boundary nodes. Its eigenvalues are the two
 * mode-k Steklov eigenvalues of the profile.
 */
struct DtnMatrix {
    double a00 = 0.0;
    double a01 = 0.0;   // symmetrized off-diagonal
    double a11 = 0.0;
    int k = 0;
    int elements = 0;
    double asymmetry = 0.0;   // |S01 - S10| before symmetrization

    double norm() const {
        return std::fmax(std::fabs(a00) + std::fabs(a01), std::fabs(a11) + std::fabs(a01));
    }

    /// (lower, upper) by the closed form; the lower eigenvalue uses det/upper
    /// to dodge cancellation near 0.
    std::pair<double, double> eigenvalues() const {
        const double mean = 0.5 * (a00 + a11);
        const double disc = std::hypot(0.5 * (a00 - a11), a01);
        const double hi = mean + disc;
        const double det = a00 * a11 - a01 * a01;
        const double lo = (hi != 0.0) ? det / hi : mean - disc;
        return {lo, hi};
    }
};

namespace detail {

inline void require_valid(const Profile& p) {
    const auto rep = validate(p);
    if (!rep.ok()) {
        throw domain_error("invalid profile: " + rep.issues.front().what + " at r = " +
                           std::to_string(rep.issues.front().r));
    }
}

struct SchurParts {
    double s00, s01, s10, s11;
    std::vector<double> y0, y1;   // interior solves against the two boundary columns
};

inline SchurParts boundary_schur(const fem::Tridiagonal& A) {
    fem::Tridiagonal Aii;
    Aii.diag.assign(A.diag.begin() + 1, A.diag.end() - 1);
    Aii.off.assign(A.off.begin() + 1, A.off.end() - 1);
    const std::size_t Mi = Aii.diag.size();
    std::vector<double> r0(Mi, 0.0), r1(Mi, 0.0);
    r0.front() = A.off.front();
    r1.back() = A.off.back();
    auto y0 = fem::solve_spd(Aii, std::move(r0));
    auto y1 = fem::solve_spd(Aii, std::move(r1));
    SchurParts s{};
    s.s00 = A.diag.front() - A.off.front() * y0.front();
    s.s01 = -A.off.front() * y1.front();
    s.s10 = -A.off.back() * y0.back();
    s.s11 = A.diag.back() - A.off.back() * y1.back();
    s.y0 = std::move(y0);
    s.y1 = std::move(y1);
    return s;
}

} // namespace detail

/// Assembles the mode-k system on an N-element grid and condenses it onto the
/// two boundary nodes via two tridiagonal solves.
inline DtnMatrix mode_dtn(const Profile& p, Dim dim, int k, int N) {
    detail::require_valid(p);
    const double lambda = laplace_eigenvalue(dim, k);
    const auto nodes = fem::build_grid(p, N);
    const auto A = fem::assemble(nodes, [&p](double r) { return p.value(r); }, dim.n(), lambda);
    const auto s = detail::boundary_schur(A);
    DtnMatrix d;
    d.a00 = s.s00;
    d.a11 = s.s11;
    d.a01 = 0.5 * (s.s01 + s.s10);
    d.asymmetry = std::fabs(s.s01 - s.s10);
    d.k = k;
    d.elements = static_cast<int>(nodes.size()) - 1;
    return d;
}

/// Sampled radial factor of a mode-k function, on an explicit grid. Mixed-
/// problem eigenvectors remember which inner condition produced them.
struct ModeFunction {
    std::vector<double> nodes;
    std::vector<double> values;
    int k = 0;
    std::optional<EndCondition> mixed_origin;
};

/// Discrete harmonic extension of an eigenvector of the mode-k DtN matrix
/// back to the full grid (lower or upper branch).
inline ModeFunction dtn_mode_function(const Profile& p, Dim dim, int k, int N, bool lower_branch) {
    detail::require_valid(p);
    const double lambda = laplace_eigenvalue(dim, k);
    const auto nodes = fem::build_grid(p, N);
    const auto A = fem::assemble(nodes, [&p](double r) { return p.value(r); }, dim.n(), lambda);
    const auto s = detail::boundary_schur(A);
    DtnMatrix d;
    d.a00 = s.s00;
    d.a11 = s.s11;
    d.a01 = 0.5 * (s.s01 + s.s10);
    const auto [lo, hi] = d.eigenvalues();
    const double sig = lower_branch ? lo : hi;
    // eigenvector of [[a00,a01],[a01,a11]] for sig: pick the better-conditioned row
    double g0, g1;
    if (std::fabs(sig - d.a00) > std::fabs(sig - d.a11)) {
        g0 = d.a01;
        g1 = sig - d.a00;
    } else {
        g0 = sig - d.a11;
        g1 = d.a01;
    }
    if (g0 == 0.0 && g1 == 0.0) { g0 = 1.0; g1 = lower_branch ? 1.0 : -1.0; }
    const double nrm = std::hypot(g0, g1);
    g0 /= nrm;
    g1 /= nrm;
    ModeFunction mf;
    mf.k = k;
    mf.nodes = nodes;
    mf.values.assign(nodes.size(), 0.0);
    mf.values.front() = g0;
    mf.values.back() = g1;
    for (std::size_t i = 0; i < s.y0.size(); ++i) {
        mf.values[i + 1] = -(s.y0[i] * g0 + s.y1[i] * g1);
    }
    return mf;
}

/**
 * Mode-k eigenvalue of the mixed problem on a half profile: Steklov at r = 0,
 * the declared condition at the inner end r = L/2. Dirichlet eliminates the
 * last node; Neumann keeps it as a natural condition. Either way the result
 * is the 1x1 Schur complement onto the r = 0 node.
 */
inline double mixed_eigenvalue(const HalfProfile& hp, Dim dim, int k, int N) {
    detail::require_valid(hp.base);
    if (k < 0) throw domain_error("mode index must be >= 0");
    if (hp.condition == EndCondition::Neumann && k == 0) return 0.0;   // constant eigenfunction
    const double lambda = laplace_eigenvalue(dim, k);
    const auto nodes = fem::build_half_grid(hp, N);
    const auto A = fem::assemble(nodes, [&hp](double r) { return hp.value(r); }, dim.n(), lambda);
    fem::Tridiagonal Aii;
    if (hp.condition == EndCondition::Dirichlet) {
        Aii.diag.assign(A.diag.begin() + 1, A.diag.end() - 1);
        Aii.off.assign(A.off.begin() + 1, A.off.end() - 1);
    } else {
        Aii.diag.assign(A.diag.begin() + 1, A.diag.end());
        Aii.off.assign(A.off.begin() + 1, A.off.end());
    }
    std::vector<double> rhs(Aii.diag.size(), 0.0);
    rhs.front() = A.off.front();
    const auto y = fem::solve_spd(Aii, std::move(rhs));
    return A.diag.front() - A.off.front() * y.front();
}

/// Eigenvector behind mixed_eigenvalue, normalized to 1 at the Steklov end.
inline ModeFunction mixed_mode_function(const HalfProfile& hp, Dim dim, int k, int N) {
    detail::require_valid(hp.base);
    const double lambda = laplace_eigenvalue(dim, k);
    const auto nodes = fem::build_half_grid(hp, N);
    ModeFunction mf;
    mf.k = k;
    mf.nodes = nodes;
    mf.mixed_origin = hp.condition;
    if (hp.condition == EndCondition::Neumann && k == 0) {
        mf.values.assign(nodes.size(), 1.0);
        return mf;
    }
    const auto A = fem::assemble(nodes, [&hp](double r) { return hp.value(r); }, dim.n(), lambda);
    fem::Tridiagonal Aii;
    const bool dir = hp.condition == EndCondition::Dirichlet;
    if (dir) {
        Aii.diag.assign(A.diag.begin() + 1, A.diag.end() - 1);
        Aii.off.assign(A.off.begin() + 1, A.off.end() - 1);
    } else {
        Aii.diag.assign(A.diag.begin() + 1, A.diag.end());
        Aii.off.assign(A.off.begin() + 1, A.off.end());
    }
    std::vector<double> rhs(Aii.diag.size(), 0.0);
    rhs.front() = -A.off.front();   // harmonic extension of boundary value 1
    const auto y = fem::solve_spd(Aii, std::move(rhs));
    mf.values.assign(nodes.size(), 0.0);
    mf.values.front() = 1.0;
    for (std::size_t i = 0; i < y.size(); ++i) mf.values[i + 1] = y[i];
    if (dir) mf.values.back() = 0.0;
    return mf;
}

/**
 * Extends a mixed-problem eigenvector to the full interval by reflection:
 * odd, f(L-r) = -f(r), matches the Dirichlet inner condition; even,
 * f(L-r) = f(r), matches Neumann. The combination is checked: using the
 * wrong parity would not produce an H^1 test function.
 */
inline ModeFunction reflect_test_function(const ModeFunction& half_fn, Parity parity) {
    if (parity == Parity::None) throw domain_error("reflect_test_function: parity must be odd or even");
    if (!half_fn.mixed_origin.has_value()) {
        throw domain_error("reflect_test_function: input must come from a mixed problem");
    }
    const bool odd = parity == Parity::Odd;
    if (odd != (*half_fn.mixed_origin == EndCondition::Dirichlet)) {
        throw domain_error("reflect_test_function: parity/inner-condition mismatch (odd <-> Dirichlet, "
                           "even <-> Neumann)");
    }
    double vmax = 0.0;
    for (double v : half_fn.values) vmax = std::fmax(vmax, std::fabs(v));
    if (odd && std::fabs(half_fn.values.back()) > 1e-9 * vmax) {
        throw domain_error("reflect_test_function: odd reflection requires u(L/2) = 0");
    }
    const double Lh = half_fn.nodes.back();
    ModeFunction full;
    full.k = half_fn.k;
    full.nodes = half_fn.nodes;
    full.values = half_fn.values;
    const double sign = odd ? -1.0 : 1.0;
    for (std::size_t i = half_fn.nodes.size() - 1; i-- > 0;) {
        full.nodes.push_back(2.0 * Lh - half_fn.nodes[i]);
        full.values.push_back(sign * half_fn.values[i]);
    }
    return full;
}

/**
 * Rayleigh quotient of a mode-k radial function on its own grid:
 *
 *   [ int (u'^2 h^{n-1} + lambda_k u^2 h^{n-3}) dr ] / (u(0)^2 + u(L)^2),
 *
 * with the same quadrature as the solver. Returns +infinity when the
 * boundary trace vanishes (distinct signal, not an error).
 */
inline double rayleigh_quotient(const Profile& p, Dim dim, int k, const ModeFunction& u) {
    detail::require_valid(p);
    if (u.nodes.size() != u.values.size() || u.nodes.size() < 2) {
        throw domain_error("rayleigh_quotient: malformed mode function");
    }
    if (std::fabs(u.nodes.front()) > 1e-12 || std::fabs(u.nodes.back() - p.length()) > 1e-12) {
        throw domain_error("rayleigh_quotient: mode function grid must span [0, L]");
    }
    const double lambda = laplace_eigenvalue(dim, k);
    const int n = dim.n();
    constexpr double gauss = 0.28867513459481287;
    double num = 0.0;
    for (std::size_t e = 0; e + 1 < u.nodes.size(); ++e) {
        const double x0 = u.nodes[e], x1 = u.nodes[e + 1];
        const double dl = x1 - x0;
        const double du = (u.values[e + 1] - u.values[e]) / dl;
        const double mid = 0.5 * (x0 + x1);
        for (const double g : {mid - gauss * dl, mid + gauss * dl}) {
            const double h = p.value(g);
            const double ug = u.values[e] * (x1 - g) / dl + u.values[e + 1] * (g - x0) / dl;
            num += 0.5 * dl * (du * du * fem::ipow(h, n - 1) + lambda * ug * ug * fem::ipow(h, n - 3));
        }
    }
    const double den = u.values.front() * u.values.front() + u.values.back() * u.values.back();
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return num / den;
}

/**
 * First K Steklov eigenvalues (with multiplicity). Sweeps modes upward; each
 * mode contributes its two DtN eigenvalues with multiplicity m_k. The sweep
 * stops once the smaller eigenvalue of the current mode exceeds the K-th
 * smallest candidate, then checks `safety_modes` further modes and insists
 * they change nothing — the monotonicity of the lower branch in k is a
 * checked assumption, not a silent one.
 */
inline Spectrum steklov_spectrum(const Profile& p, Dim dim, std::int64_t K, int N,
                                 const SpectrumOptions& opts = {}) {
    if (K < 1) throw domain_error("steklov_spectrum: K must be >= 1");
    detail::require_valid(p);
    const Parity lower_par = p.symmetric() ? Parity::Even : Parity::None;
    const Parity upper_par = p.symmetric() ? Parity::Odd : Parity::None;
    std::vector<SpectrumEntry> entries;
    std::int64_t have = 0;
    int stop_k = -1;
    double kth = std::numeric_limits<double>::infinity();
    for (int k = 0;; ++k) {
        if (k > opts.k_max) {
            throw resource_error("steklov_spectrum: mode sweep exceeded k_max = " +
                                 std::to_string(opts.k_max) + " before collecting K = " +
                                 std::to_string(K) + " eigenvalues");
        }
        const auto d = mode_dtn(p, dim, k, N);
        auto [lo, hi] = d.eigenvalues();
        if (k == 0) {
            // constants are Steklov eigenfunctions with sigma = 0
            if (std::fabs(lo) > 1e-7 * std::fmax(1.0, d.norm())) {
                throw internal_error("steklov_spectrum: mode-0 lower eigenvalue not numerically zero");
            }
            lo = 0.0;
        }
        const std::int64_t mk = multiplicity(dim, k);
        entries.push_back(SpectrumEntry{lo, k, k == 0 ? Parity::Even : lower_par, mk});
        entries.push_back(SpectrumEntry{hi, k, upper_par, mk});
        have += 2 * mk;
        if (have >= K) {
            kth = Spectrum(entries).sigma(K - 1);
            if (lo > kth) {
                stop_k = k;
                break;
            }
        }
    }
    for (int j = stop_k + 1; j <= stop_k + opts.safety_modes && j <= opts.k_max; ++j) {
        const auto d = mode_dtn(p, dim, j, N);
        if (d.eigenvalues().first < kth - 1e-12 * std::fmax(1.0, std::fabs(kth))) {
            throw internal_error("steklov_spectrum: safety mode " + std::to_string(j) +
                                 " would enter the first K eigenvalues; lower-branch monotonicity "
                                 "assumption violated");
        }
    }
    return Spectrum(std::move(entries));
}

struct ConvergenceRow {
    int N = 0;
    double lower = 0.0;
    double upper = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    RichardsonResult lower_fit;
    RichardsonResult upper_fit;
};

namespace detail {

inline double common_ratio(const std::vector<int>& N_list) {
    if (N_list.size() < 3) throw domain_error("convergence study needs >= 3 grid sizes");
    const double r = static_cast<double>(N_list[1]) / N_list[0];
    for (std::size_t i = 0; i + 1 < N_list.size(); ++i) {
        if (N_list[i + 1] <= N_list[i]) throw domain_error("grid sizes must be strictly increasing");
        const double ri = static_cast<double>(N_list[i + 1]) / N_list[i];
        if (std::fabs(ri - r) > 0.01 * r) {
            throw domain_error("convergence study needs a constant refinement ratio");
        }
    }
    return r;
}

} // namespace detail

/// Per-grid DtN eigenvalues of one mode plus fitted convergence order and
/// Richardson limit for each branch.
inline ConvergenceTable convergence_study(const Profile& p, Dim dim, int k,
                                          const std::vector<int>& N_list) {
    const double ratio = detail::common_ratio(N_list);
    ConvergenceTable t;
    std::vector<double> lows, highs;
    for (int N : N_list) {
        const auto [lo, hi] = mode_dtn(p, dim, k, N).eigenvalues();
        t.rows.push_back({N, lo, hi});
        lows.push_back(lo);
        highs.push_back(hi);
    }
    t.lower_fit = richardson_extrapolate(lows, ratio);
    t.upper_fit = richardson_extrapolate(highs, ratio);
    return t;
}

struct MixedConvergenceRow {
    int N = 0;
    double value = 0.0;
};

struct MixedConvergenceTable {
    std::vector<MixedConvergenceRow> rows;
    RichardsonResult fit;
};

inline MixedConvergenceTable convergence_study(const HalfProfile& hp, Dim dim, int k,
                                               const std::vector<int>& N_list) {
    const double ratio = detail::common_ratio(N_list);
    MixedConvergenceTable t;
    std::vector<double> vals;
    for (int N : N_list) {
        const double v = mixed_eigenvalue(hp, dim, k, N);
        t.rows.push_back({N, v});
        vals.push_back(v);
    }
    t.fit = richardson_extrapolate(vals, ratio);
    return t;
}

} // namespace steklov
