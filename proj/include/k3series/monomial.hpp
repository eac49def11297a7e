#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace k3series {

using VarId = std::uint32_t;

namespace detail {

struct VarRegistry {
    std::mutex mutex;
    std::vector<std::string> names;
    std::map<std::string, VarId> ids;

    VarRegistry() {
        // The standard formal variables get fixed, canonical ids so that
        // term ordering and printed output are stable.
        for (const char* n : {"q", "v", "y"}) intern(n);
    }

    VarId intern(const std::string& name) {
        auto it = ids.find(name);
        if (it != ids.end()) return it->second;
        VarId id = static_cast<VarId>(names.size());
        names.push_back(name);
        ids.emplace(name, id);
        return id;
    }
};

inline VarRegistry& var_registry() {
    static VarRegistry reg;
    return reg;
}

}  // namespace detail

/// Interns a variable name, returning its id. Thread-safe.
inline VarId var(const std::string& name) {
    auto& reg = detail::var_registry();
    std::lock_guard<std::mutex> lock(reg.mutex);
    return reg.intern(name);
}

inline const std::string& var_name(VarId id) {
    auto& reg = detail::var_registry();
    std::lock_guard<std::mutex> lock(reg.mutex);
    return reg.names.at(id);
}

/// A formal monomial: a finite map from variable to integer exponent.
/// Variables absent from the map have exponent zero; stored exponents are
/// nonzero and sorted by variable id, so equality is structural.
class Monomial {
public:
    Monomial() = default;

    Monomial(VarId v, int exponent) {
        if (exponent != 0) exps_.emplace_back(v, exponent);
    }

    static Monomial unit() { return Monomial(); }

    bool is_unit() const { return exps_.empty(); }

    int exponent(VarId v) const {
        for (const auto& [id, e] : exps_)
            if (id == v) return e;
        return 0;
    }

    const std::vector<std::pair<VarId, int>>& exponents() const { return exps_; }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        r.exps_.reserve(exps_.size() + o.exps_.size());
        std::size_t i = 0, j = 0;
        while (i < exps_.size() && j < o.exps_.size()) {
            if (exps_[i].first < o.exps_[j].first) {
                r.exps_.push_back(exps_[i++]);
            } else if (exps_[i].first > o.exps_[j].first) {
                r.exps_.push_back(o.exps_[j++]);
            } else {
                int e = exps_[i].second + o.exps_[j].second;
                if (e != 0) r.exps_.emplace_back(exps_[i].first, e);
                ++i, ++j;
            }
        }
        for (; i < exps_.size(); ++i) r.exps_.push_back(exps_[i]);
        for (; j < o.exps_.size(); ++j) r.exps_.push_back(o.exps_[j]);
        return r;
    }

    /// Raises every exponent to the k-th multiple; k may be negative or zero.
    Monomial pow(int k) const {
        Monomial r;
        if (k == 0) return r;
        r.exps_ = exps_;
        for (auto& [id, e] : r.exps_) e *= k;
        return r;
    }

    /// The monomial with variable v removed.
    Monomial without(VarId v) const {
        Monomial r;
        for (const auto& p : exps_)
            if (p.first != v) r.exps_.push_back(p);
        return r;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.exps_ < b.exps_; }

    std::string str() const {
        if (exps_.empty()) return "1";
        std::string s;
        for (const auto& [id, e] : exps_) {
            if (!s.empty()) s += " ";
            s += var_name(id);
            if (e != 1) s += "^" + std::to_string(e);
        }
        return s;
    }

private:
    std::vector<std::pair<VarId, int>> exps_;
};

}  // namespace k3series
