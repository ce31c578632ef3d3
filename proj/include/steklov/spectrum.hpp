#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "steklov/errors.hpp"

namespace steklov {

/// Reflection parity of an eigenfunction of a symmetric metric: even modes
/// satisfy u(r) = u(L-r) (Neumann condition at the midpoint), odd modes
/// u(r) = -u(L-r) (Dirichlet at the midpoint).
enum class Parity { Even, Odd, None };

inline const char* to_string(Parity p) {
    switch (p) {
        case Parity::Even: return "even";
        case Parity::Odd: return "odd";
        default: return "none";
    }
}

/// One distinct eigenvalue with its provenance: the spherical-harmonic mode k
/// it comes from, the reflection parity (when defined) and the multiplicity
/// m_k it carries in the full spectrum.
struct SpectrumEntry {
    double sigma = 0.0;
    int k = 0;
    Parity parity = Parity::None;
    std::int64_t mult = 1;
};

/// Sorted multiset of Steklov eigenvalues. Entries are stored once per
/// (mode, branch) with their multiplicity; sigma(i) indexes the expanded
/// sequence sigma_0 <= sigma_1 <= ...
class Spectrum {
public:
    Spectrum() = default;
    explicit Spectrum(std::vector<SpectrumEntry> entries) : entries_(std::move(entries)) {
        std::stable_sort(entries_.begin(), entries_.end(),
                         [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.sigma < b.sigma; });
    }

    const std::vector<SpectrumEntry>& entries() const { return entries_; }

    std::int64_t total_count() const {
        std::int64_t c = 0;
        for (const auto& e : entries_) c += e.mult;
        return c;
    }

    /// sigma_i counted with multiplicity.
    double sigma(std::int64_t index) const { return entry_at(index).sigma; }

    /// Full entry (value + provenance) behind the i-th eigenvalue.
    const SpectrumEntry& entry_at(std::int64_t index) const {
        if (index < 0) throw domain_error("spectrum index must be >= 0");
        std::int64_t seen = 0;
        for (const auto& e : entries_) {
            seen += e.mult;
            if (index < seen) return e;
        }
        throw domain_error("spectrum index " + std::to_string(index) + " out of range (have " +
                           std::to_string(total_count()) + " eigenvalues)");
    }

    /// The first `count` distinct eigenvalues sigma_(0) < sigma_(1) < ...
    /// (exact-equality dedup across entries).
    std::vector<double> distinct_values(std::size_t count) const {
        std::vector<double> out;
        for (const auto& e : entries_) {
            if (out.empty() || e.sigma != out.back()) out.push_back(e.sigma);
            if (out.size() == count) break;
        }
        return out;
    }

    /// First `count` eigenvalues expanded by multiplicity.
    std::vector<double> values_with_multiplicity(std::int64_t count) const {
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(count));
        for (const auto& e : entries_) {
            for (std::int64_t j = 0; j < e.mult && static_cast<std::int64_t>(out.size()) < count; ++j) {
                out.push_back(e.sigma);
            }
            if (static_cast<std::int64_t>(out.size()) >= count) break;
        }
        if (static_cast<std::int64_t>(out.size()) < count) {
            throw domain_error("spectrum holds fewer than " + std::to_string(count) + " eigenvalues");
        }
        return out;
    }

private:
    std::vector<SpectrumEntry> entries_;
};

} // namespace steklov
