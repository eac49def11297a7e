#pragma once

#include "k3series/series.hpp"

#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3series::sheaf {

/// Sheaf-counting charge (r, m*beta_0, s) on the ray of a primitive class
/// beta_0 with beta_0^2 = 2*h0 - 2.
struct MukaiVector {
    long long r = 0;   // rank
    long long m = 0;   // multiple of beta_0, >= 0
    long long h0 = 0;  // beta_0^2 = 2*h0 - 2
    long long s = 0;   // remaining charge component

    void validate() const {
        if (m < 0) throw std::invalid_argument("MukaiVector: m must be >= 0");
        if (r == 0 && m == 0 && s == 0)
            throw std::invalid_argument("MukaiVector: (r, m, s) must be nonzero");
    }
};

/// Mukai pairing (v, w) = beta_v . beta_w - r_v s_w - r_w s_v, with
/// beta_v . beta_w = m_v m_w (2 h0 - 2). Both vectors must sit on the same
/// primitive ray (equal h0).
inline long long mukai_pairing(const MukaiVector& v, const MukaiVector& w) {
    v.validate();
    w.validate();
    if (v.h0 != w.h0) throw std::invalid_argument("mukai_pairing: mismatched h0");
    return v.m * w.m * (2 * v.h0 - 2) - v.r * w.s - w.r * v.s;
}

/// Largest k with v/k still integral: gcd of the components (beta-divisibility
/// is divisibility of m).
inline long long divisibility(const MukaiVector& v) {
    v.validate();
    long long g = std::gcd(std::gcd(std::llabs(v.r), v.m), std::llabs(v.s));
    return g;
}

/// Euler characteristic of the Hilbert scheme of n points on a K3 surface:
/// the q^n coefficient of prod_k (1-q^k)^-24. Memoized; safe for concurrent
/// callers.
inline const Integer& hilb_euler(int n) {
    if (n < 0) throw std::invalid_argument("hilb_euler: n must be >= 0");
    static std::mutex cache_mutex;
    static std::vector<Integer> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (n >= static_cast<int>(cache.size())) {
        int top = std::max(n, 2 * static_cast<int>(cache.size()) + 8);
        VarId q = var("q");
        Window w;
        w.set(q, 0, top);
        std::map<int, int> a;
        for (int k = 1; k <= top; ++k) a[k] = -24;
        Series p = product_expansion(a, q, top, w);
        cache.resize(static_cast<std::size_t>(top) + 1);
        for (int k = 0; k <= top; ++k) cache[static_cast<std::size_t>(k)] = p.coeff(Monomial(q, k)).as_integer();
    }
    return cache[static_cast<std::size_t>(n)];
}

/// Joyce-Song sheaf-counting invariant by the closed divisor-sum formula
///
///   J(v) = sum_{k | v} (1/k^2) e(Hilb^{(v/k, v/k)/2 + 1} S).
///
/// A divisor whose Hilbert index is negative indexes an empty moduli space;
/// it contributes 0 and a warning is recorded when a sink is supplied.
inline Rational js_invariant(const MukaiVector& v, std::vector<std::string>* warnings = nullptr) {
    v.validate();
    long long k0 = divisibility(v);
    Rational total(0);
    for (long long k = 1; k <= k0; ++k) {
        if (k0 % k != 0) continue;
        MukaiVector vk{v.r / k, v.m / k, v.h0, v.s / k};
        long long pairing = mukai_pairing(vk, vk);
        // (v,v) is even: beta^2 is even on a K3 and 2 r s is even.
        long long index = pairing / 2 + 1;
        if (index < 0) {
            if (warnings)
                warnings->push_back("js_invariant: empty moduli for k=" + std::to_string(k) +
                                    " (Hilbert index " + std::to_string(index) + "), contributing 0");
            continue;
        }
        total += Rational(hilb_euler(static_cast<int>(index))) / Rational(k * k);
    }
    return total;
}

/// Both sides of the multiple cover formula
///   J(0, m beta_0, n) = sum_{k | (m, n)} (1/k^2) J(0, (m/k) beta_0, 1)
/// evaluated exactly.
struct MultipleCoverReport {
    Rational lhs;
    Rational rhs;
    bool equal = false;
};

inline MultipleCoverReport multiple_cover_check(long long m, long long n, long long h0,
                                                std::vector<std::string>* warnings = nullptr) {
    if (m < 1) throw std::invalid_argument("multiple_cover_check: m must be >= 1");
    MultipleCoverReport rep;
    rep.lhs = js_invariant(MukaiVector{0, m, h0, n}, warnings);
    long long g = std::gcd(m, std::llabs(n));
    rep.rhs = Rational(0);
    for (long long k = 1; k <= g; ++k) {
        if (g % k != 0) continue;
        rep.rhs += js_invariant(MukaiVector{0, m / k, h0, 1}, warnings) / Rational(k * k);
    }
    rep.equal = rep.lhs == rep.rhs;
    return rep;
}

}  // namespace k3series::sheaf
