#pragma once

#include "k3series/monomial.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace k3series {

/// Per-variable degree range of a truncated series.
struct VarRange {
    int lo = 0;
    int hi = 0;
    bool laurent = false;  // negative exponents permitted

    friend bool operator==(const VarRange& a, const VarRange& b) {
        return a.lo == b.lo && a.hi == b.hi && a.laurent == b.laurent;
    }
};

/// Truncation window: the set of monomials a series may carry. A monomial is
/// inside the window when every variable it uses (with nonzero exponent) is
/// declared and its exponent lies in the declared range.
class Window {
public:
    Window() = default;

    Window& set(VarId v, int lo, int hi, bool laurent = false) {
        if (lo > hi) throw std::invalid_argument("Window: min degree exceeds max degree for " + var_name(v));
        if (!laurent && lo < 0)
            throw std::invalid_argument("Window: negative min degree for non-Laurent variable " + var_name(v));
        ranges_[v] = VarRange{lo, hi, laurent};
        return *this;
    }

    bool has(VarId v) const { return ranges_.count(v) != 0; }

    const VarRange& range(VarId v) const {
        auto it = ranges_.find(v);
        if (it == ranges_.end()) throw std::invalid_argument("Window: variable " + var_name(v) + " not declared");
        return it->second;
    }

    const std::map<VarId, VarRange>& ranges() const { return ranges_; }

    bool contains(const Monomial& m) const {
        for (const auto& [v, e] : m.exponents()) {
            auto it = ranges_.find(v);
            if (it == ranges_.end()) return false;
            if (e < it->second.lo || e > it->second.hi) return false;
        }
        return true;
    }

    /// Result window of a binary operation: shared variables must agree on the
    /// Laurent flag and overlap; their ranges are intersected. Variables known
    /// to only one operand keep their range (the other operand is exactly
    /// constant in them).
    static Window intersect(const Window& a, const Window& b) {
        Window r = a;
        for (const auto& [v, rb] : b.ranges_) {
            auto it = r.ranges_.find(v);
            if (it == r.ranges_.end()) {
                r.ranges_[v] = rb;
                continue;
            }
            VarRange& ra = it->second;
            if (ra.laurent != rb.laurent)
                throw std::invalid_argument("Window: incompatible Laurent flags for " + var_name(v));
            ra.lo = std::max(ra.lo, rb.lo);
            ra.hi = std::min(ra.hi, rb.hi);
            if (ra.lo > ra.hi)
                throw std::invalid_argument("Window: empty intersection for " + var_name(v));
        }
        return r;
    }

    /// True when every range of *this lies inside the corresponding range of o.
    bool inside(const Window& o) const {
        for (const auto& [v, r] : ranges_) {
            auto it = o.ranges_.find(v);
            if (it == o.ranges_.end()) return false;
            if (r.laurent != it->second.laurent) return false;
            if (r.lo < it->second.lo || r.hi > it->second.hi) return false;
        }
        return true;
    }

    friend bool operator==(const Window& a, const Window& b) { return a.ranges_ == b.ranges_; }
    friend bool operator!=(const Window& a, const Window& b) { return !(a == b); }

    std::string str() const {
        std::string s = "{";
        bool first = true;
        for (const auto& [v, r] : ranges_) {
            if (!first) s += ", ";
            first = false;
            s += var_name(v) + ":[" + std::to_string(r.lo) + "," + std::to_string(r.hi) + "]";
            if (r.laurent) s += "L";
        }
        return s + "}";
    }

private:
    std::map<VarId, VarRange> ranges_;
};

}  // namespace k3series
