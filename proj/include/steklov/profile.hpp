#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "steklov/errors.hpp"

namespace steklov {

/// Analytic building blocks for warping profiles. Caps store explicit
/// coefficients: PolyCap is c0 + c1 t + c2 t^2 in t = r - r0, CosCap is
/// c0 + c1 sin(c2 t).
enum class SegmentKind { UnitSlopeUp, UnitSlopeDown, Constant, PolyCap, CosCap };

struct Segment {
    SegmentKind kind = SegmentKind::Constant;
    double r0 = 0.0;
    double r1 = 0.0;
    std::array<double, 3> c{};   // c[0] is the value at r0 for the slope/constant kinds

    double value(double r) const {
        const double t = r - r0;
        switch (kind) {
            case SegmentKind::UnitSlopeUp: return c[0] + t;
            case SegmentKind::UnitSlopeDown: return c[0] - t;
            case SegmentKind::Constant: return c[0];
            case SegmentKind::PolyCap: return c[0] + t * (c[1] + t * c[2]);
            case SegmentKind::CosCap: return c[0] + c[1] * std::sin(c[2] * t);
        }
        return c[0];
    }

    double slope(double r) const {
        const double t = r - r0;
        switch (kind) {
            case SegmentKind::UnitSlopeUp: return 1.0;
            case SegmentKind::UnitSlopeDown: return -1.0;
            case SegmentKind::Constant: return 0.0;
            case SegmentKind::PolyCap: return c[1] + 2.0 * c[2] * t;
            case SegmentKind::CosCap: return c[1] * c[2] * std::cos(c[2] * t);
        }
        return 0.0;
    }

    /// Exact sup of |h'| over the segment (slopes of the cap kinds are
    /// monotone resp. bounded by |c1 c2|).
    double max_abs_slope() const {
        switch (kind) {
            case SegmentKind::UnitSlopeUp:
            case SegmentKind::UnitSlopeDown: return 1.0;
            case SegmentKind::Constant: return 0.0;
            case SegmentKind::PolyCap:
                return std::fmax(std::fabs(slope(r0)), std::fabs(slope(r1)));
            case SegmentKind::CosCap: return std::fabs(c[1] * c[2]);
        }
        return 0.0;
    }

    /// Exact min of h over the segment (cap kinds: candidates are the
    /// endpoints and the interior stationary point).
    double min_value() const {
        double m = std::fmin(value(r0), value(r1));
        if (kind == SegmentKind::PolyCap && c[2] != 0.0) {
            const double ts = -c[1] / (2.0 * c[2]);
            if (ts > 0.0 && ts < r1 - r0) m = std::fmin(m, value(r0 + ts));
        }
        if (kind == SegmentKind::CosCap) {
            m = std::fmin(m, c[0] - std::fabs(c[1]));
        }
        return m;
    }

    double max_value() const {
        double m = std::fmax(value(r0), value(r1));
        if (kind == SegmentKind::PolyCap && c[2] != 0.0) {
            const double ts = -c[1] / (2.0 * c[2]);
            if (ts > 0.0 && ts < r1 - r0) m = std::fmax(m, value(r0 + ts));
        }
        if (kind == SegmentKind::CosCap) {
            // sin reaches +-1 inside the segment only if c2*(r1-r0) spans it;
            // our caps always place the extremum at the midpoint, endpoints cover the rest
            const double span = c[2] * (r1 - r0);
            if (span >= 1.5707963267948966) m = std::fmax(m, c[0] + std::fabs(c[1]));
        }
        return m;
    }
};

/**
 * Warping profile h on [0, L]: either an ordered list of analytic segments or
 * uniform samples interpreted piecewise-linearly. Admissible profiles satisfy
 * h(0) = h(L) = 1, h > 0 and |h'| <= 1 (Def. of a metric of revolution whose
 * boundary spheres are unit); validate() reports violations without throwing.
 *
 * Immutable after construction; safe to share across threads.
 */
class Profile {
public:
    static Profile from_segments(double L, std::vector<Segment> segments, bool symmetric,
                                 std::string family) {
        if (!(L > 0.0)) throw domain_error("profile length must be positive");
        if (segments.empty()) throw domain_error("profile needs at least one segment");
        Profile p;
        p.length_ = L;
        p.segments_ = std::move(segments);
        p.symmetric_ = symmetric;
        p.family_ = std::move(family);
        double prev = 0.0;
        for (const auto& s : p.segments_) {
            if (std::fabs(s.r0 - prev) > 1e-12 || !(s.r1 > s.r0)) {
                throw domain_error("profile segments must tile [0, L] in order");
            }
            prev = s.r1;
        }
        if (std::fabs(prev - L) > 1e-12) {
            throw domain_error("profile segments must end at r = L");
        }
        return p;
    }

    static Profile from_samples(double L, std::vector<double> samples, bool symmetric = false,
                                std::string family = "samples") {
        if (!(L > 0.0)) throw domain_error("profile length must be positive");
        if (samples.size() < 17) {
            throw domain_error("sampled profile needs at least 17 samples (N >= 16 intervals)");
        }
        Profile p;
        p.length_ = L;
        p.samples_ = std::move(samples);
        p.symmetric_ = symmetric;
        p.family_ = std::move(family);
        return p;
    }

    double length() const { return length_; }
    bool symmetric() const { return symmetric_; }
    const std::string& family() const { return family_; }
    bool is_sampled() const { return !samples_.empty(); }
    const std::vector<Segment>& segments() const { return segments_; }
    const std::vector<double>& samples() const { return samples_; }

    double value(double r) const {
        if (is_sampled()) {
            const auto [i, t] = locate_sample(r);
            return samples_[i] * (1.0 - t) + samples_[i + 1] * t;
        }
        return segments_[segment_index(r)].value(r);
    }

    /// One-sided (right) slope; piecewise-constant for sampled profiles.
    double slope(double r) const {
        if (is_sampled()) {
            const auto [i, t] = locate_sample(r);
            const double dr = length_ / static_cast<double>(samples_.size() - 1);
            return (samples_[i + 1] - samples_[i]) / dr;
        }
        return segments_[segment_index(r)].slope(r);
    }

    double max_value() const {
        if (is_sampled()) return *std::max_element(samples_.begin(), samples_.end());
        double m = segments_.front().value(0.0);
        for (const auto& s : segments_) m = std::fmax(m, s.max_value());
        return m;
    }

    /// Abscissae where the analytic description changes (segment joins), plus
    /// both endpoints; sample nodes for sampled profiles. Solver grids align
    /// to these.
    std::vector<double> breakpoints() const {
        std::vector<double> b;
        if (is_sampled()) {
            const double dr = length_ / static_cast<double>(samples_.size() - 1);
            for (std::size_t i = 0; i < samples_.size(); ++i) b.push_back(dr * static_cast<double>(i));
            b.back() = length_;
        } else {
            b.push_back(0.0);
            for (const auto& s : segments_) b.push_back(s.r1);
        }
        return b;
    }

private:
    Profile() = default;

    std::size_t segment_index(double r) const {
        // few segments in practice: linear scan
        for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
            if (r < segments_[i].r1) return i;
        }
        return segments_.size() - 1;
    }

    std::pair<std::size_t, double> locate_sample(double r) const {
        const double dr = length_ / static_cast<double>(samples_.size() - 1);
        double x = r / dr;
        auto i = static_cast<std::size_t>(std::clamp(x, 0.0, static_cast<double>(samples_.size() - 2)));
        if (i > samples_.size() - 2) i = samples_.size() - 2;
        return {i, std::clamp(x - static_cast<double>(i), 0.0, 1.0)};
    }

    double length_ = 0.0;
    std::vector<Segment> segments_;
    std::vector<double> samples_;
    bool symmetric_ = false;
    std::string family_;
};

/// h == 1: the product cylinder [0,L] x S^{n-1}.
inline Profile cylinder_profile(double L) {
    if (!(L > 0.0)) throw domain_error("cylinder_profile: L must be positive");
    Segment s{SegmentKind::Constant, 0.0, L, {1.0, 0.0, 0.0}};
    return Profile::from_segments(L, {s}, true, "cylinder");
}

/// The degenerated maximizing profile h*(r) = 1 + min(r, L-r): two unit-slope
/// segments meeting at the midpoint. Not a smooth metric of revolution, but
/// the solver admits it as the limit object it is.
inline Profile degenerate_profile(double L) {
    if (!(L > 0.0)) throw domain_error("degenerate_profile: L must be positive");
    Segment up{SegmentKind::UnitSlopeUp, 0.0, L / 2.0, {1.0, 0.0, 0.0}};
    Segment down{SegmentKind::UnitSlopeDown, L / 2.0, L, {1.0 + L / 2.0, 0.0, 0.0}};
    return Profile::from_segments(L, {up, down}, true, "degenerate");
}

enum class CapShape { Quadratic, Cosine };

/**
 * The sharpness family g_delta: equal to 1+r on [0, L/2-delta], capped on
 * [L/2-delta, L/2+delta], symmetric, with |h'| <= 1 and h <= h* pointwise.
 *
 * Quadratic (default): slope ramps linearly 1 -> 0 over each half of the cap;
 * C^1 at the joins, midpoint value 1 + L/2 - delta/2.
 * Cosine: h = (1+L/2-delta) + (2 delta/pi) sin(pi t / (2 delta)); C^2 at the
 * joins, midpoint value 1 + L/2 - delta(1 - 2/pi).
 */
inline Profile smoothed_max_profile(double L, double delta, CapShape shape = CapShape::Quadratic) {
    if (!(L > 0.0)) throw domain_error("smoothed_max_profile: L must be positive");
    if (!(delta > 0.0 && delta < L / 2.0)) {
        throw domain_error("smoothed_max_profile: need 0 < delta < L/2");
    }
    const double half = L / 2.0;
    const double h0 = 1.0 + half - delta;   // value at both cap joins
    std::vector<Segment> segs;
    segs.push_back(Segment{SegmentKind::UnitSlopeUp, 0.0, half - delta, {1.0, 0.0, 0.0}});
    if (shape == CapShape::Quadratic) {
        segs.push_back(Segment{SegmentKind::PolyCap, half - delta, half, {h0, 1.0, -0.5 / delta}});
        segs.push_back(Segment{SegmentKind::PolyCap, half, half + delta,
                               {h0 + 0.5 * delta, 0.0, -0.5 / delta}});
    } else {
        const double om = 1.5707963267948966 / delta;   // pi / (2 delta)
        segs.push_back(Segment{SegmentKind::CosCap, half - delta, half + delta, {h0, 1.0 / om, om}});
    }
    segs.push_back(Segment{SegmentKind::UnitSlopeDown, half + delta, L, {h0, 0.0, 0.0}});
    return Profile::from_segments(L, std::move(segs), true,
                                  shape == CapShape::Quadratic ? "smoothed_max" : "smoothed_max_cos");
}

/**
 * Smooth representative of the plateau class M_m: h = 1+r on [0, m-1], slope
 * ramps 1 -> 0 over [m-1, m-1+delta] reaching m + delta/2, constant plateau,
 * mirror image on the right. Dominates the exact plateau
 * h_m = min(1+r, m, 1+L-r) pointwise (required for the eigenvalue comparison)
 * while keeping max h <= m + delta.
 *
 * For m = 1 the exact plateau is the cylinder, already smooth, and is
 * returned unchanged.
 */
inline Profile plateau_profile(double L, double m, double delta) {
    if (!(L > 0.0)) throw domain_error("plateau_profile: L must be positive");
    if (!(m >= 1.0 && m < 1.0 + L / 2.0)) {
        throw domain_error("plateau_profile: need 1 <= m < 1 + L/2");
    }
    if (m == 1.0) return cylinder_profile(L);
    const double a = m - 1.0;
    const double W = L / 2.0 - a;
    if (!(delta > 0.0 && delta <= W)) {
        throw domain_error("plateau_profile: smoothing delta must satisfy 0 < delta <= L/2 - (m-1)");
    }
    const double top = m + 0.5 * delta;
    std::vector<Segment> segs;
    segs.push_back(Segment{SegmentKind::UnitSlopeUp, 0.0, a, {1.0, 0.0, 0.0}});
    segs.push_back(Segment{SegmentKind::PolyCap, a, a + delta, {m, 1.0, -0.5 / delta}});
    segs.push_back(Segment{SegmentKind::Constant, a + delta, L - a - delta, {top, 0.0, 0.0}});
    segs.push_back(Segment{SegmentKind::PolyCap, L - a - delta, L - a, {top, 0.0, -0.5 / delta}});
    segs.push_back(Segment{SegmentKind::UnitSlopeDown, L - a, L, {m, 0.0, 0.0}});
    return Profile::from_segments(L, std::move(segs), true, "plateau");
}

/**
 * One step of the eigenvalue-increasing construction: given p with
 * m = max h < 1 + L/2, returns the symmetric profile
 *
 *   h2 = 1+r on [0, m-1],   h2 = 1+L-r on [L-m+1, L],
 *
 * joined by quadratic arcs whose slope ramps linearly 1 -> 0 towards the
 * midpoint. The ramp geometry gives h2(L/2) = (1 + L/2 + m)/2 exactly, and
 * h2 > m on the open middle, so h2 >= h with strict inequality on a
 * continuum. Iterating drives max h -> 1 + L/2 (the degenerate profile).
 */
inline Profile successor_profile(const Profile& p) {
    const double L = p.length();
    const double m = p.max_value();
    if (m >= 1.0 + L / 2.0 - 1e-12) {
        throw domain_error("successor_profile: profile is already degenerate (max h = 1 + L/2)");
    }
    if (m < 1.0) throw domain_error("successor_profile: max h < 1 is not admissible");
    const double a = m - 1.0;
    const double W = L / 2.0 - a;
    std::vector<Segment> segs;
    if (a > 0.0) segs.push_back(Segment{SegmentKind::UnitSlopeUp, 0.0, a, {1.0, 0.0, 0.0}});
    segs.push_back(Segment{SegmentKind::PolyCap, a, L / 2.0, {m, 1.0, -0.5 / W}});
    segs.push_back(Segment{SegmentKind::PolyCap, L / 2.0, L - a, {m + 0.5 * W, 0.0, -0.5 / W}});
    if (a > 0.0) segs.push_back(Segment{SegmentKind::UnitSlopeDown, L - a, L, {m, 0.0, 0.0}});
    return Profile::from_segments(L, std::move(segs), true, "successor");
}

struct ValidationIssue {
    std::string what;
    double r = 0.0;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

/// Checks the admissibility conditions h(0)=h(L)=1, h > 0, |h'| <= 1 and,
/// when the symmetric flag is set, h(r) = h(L-r). Sampled profiles get a
/// 1e-9 slope allowance to absorb rounding.
inline ValidationReport validate(const Profile& p) {
    ValidationReport rep;
    const double L = p.length();
    if (std::fabs(p.value(0.0) - 1.0) > 1e-12) {
        rep.issues.push_back({"h(0) != 1 (got " + std::to_string(p.value(0.0)) + ")", 0.0});
    }
    if (std::fabs(p.value(L) - 1.0) > 1e-12) {
        rep.issues.push_back({"h(L) != 1 (got " + std::to_string(p.value(L)) + ")", L});
    }
    if (p.is_sampled()) {
        const auto& v = p.samples();
        const double dr = L / static_cast<double>(v.size() - 1);
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            const double s = (v[i + 1] - v[i]) / dr;
            if (std::fabs(s) > 1.0 + 1e-9) {
                rep.issues.push_back({"|h'| > 1 (slope " + std::to_string(s) + ")",
                                      dr * static_cast<double>(i)});
            }
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!(v[i] > 0.0)) {
                rep.issues.push_back({"h <= 0", dr * static_cast<double>(i)});
            }
        }
    } else {
        for (const auto& s : p.segments()) {
            if (s.max_abs_slope() > 1.0 + 1e-12) {
                rep.issues.push_back({"|h'| > 1 (max slope " + std::to_string(s.max_abs_slope()) + ")", s.r0});
            }
            if (!(s.min_value() > 0.0)) {
                rep.issues.push_back({"h <= 0", s.r0});
            }
        }
    }
    if (p.symmetric()) {
        const int probes = 257;
        for (int i = 0; i <= probes; ++i) {
            const double r = L * static_cast<double>(i) / probes;
            if (std::fabs(p.value(r) - p.value(L - r)) > 1e-12) {
                rep.issues.push_back({"symmetric flag set but h(r) != h(L-r)", r});
                break;
            }
        }
    }
    return rep;
}

enum class EndCondition { Dirichlet, Neumann };

inline const char* to_string(EndCondition c) {
    return c == EndCondition::Dirichlet ? "dirichlet" : "neumann";
}

/// Restriction of a symmetric profile to [0, L/2] with a declared condition
/// at the inner end r = L/2. Evaluation delegates to the full profile.
struct HalfProfile {
    Profile base;
    EndCondition condition = EndCondition::Dirichlet;

    double length() const { return base.length() / 2.0; }
    double value(double r) const { return base.value(r); }

    std::vector<double> breakpoints() const {
        const double half = length();
        std::vector<double> b;
        for (double x : base.breakpoints()) {
            if (x < half - 1e-14) b.push_back(x);
        }
        b.push_back(half);
        return b;
    }
};

/// Splits a symmetric profile into its two half problems (Dirichlet and
/// Neumann inner condition), mirroring the even/odd reflection argument.
inline std::pair<HalfProfile, HalfProfile> halves(const Profile& p) {
    if (!p.symmetric()) {
        throw domain_error("halves: profile must be symmetric");
    }
    return {HalfProfile{p, EndCondition::Dirichlet}, HalfProfile{p, EndCondition::Neumann}};
}

/// Sup-norm distance between two profiles of equal length, by dense sampling.
inline double sup_distance(const Profile& p, const Profile& q, int samples = 4096) {
    if (std::fabs(p.length() - q.length()) > 1e-12) {
        throw domain_error("sup_distance: profiles must have equal length");
    }
    double d = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double r = p.length() * static_cast<double>(i) / samples;
        d = std::fmax(d, std::fabs(p.value(r) - q.value(r)));
    }
    return d;
}

} // namespace steklov
