#pragma once

#include "k3series/monomial.hpp"
#include "k3series/rational.hpp"
#include "k3series/window.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace k3series {

/// Truncated multivariate Laurent series over the exact rationals.
///
/// Invariants: every stored monomial lies inside the window and no stored
/// coefficient is zero. Two series are equal iff their windows agree and
/// their coefficient maps agree. Terms produced by arithmetic that fall
/// outside the window are dropped silently; that truncation is the contract,
/// exponents never wrap.
class Series {
public:
    explicit Series(Window w) : win_(std::move(w)) {}

    static Series zero(Window w) { return Series(std::move(w)); }

    static Series constant(Window w, Rational c) {
        Series s(std::move(w));
        s.add_term(Monomial::unit(), std::move(c));
        return s;
    }

    static Series one(Window w) { return constant(std::move(w), Rational(1)); }

    /// Single-term series; the monomial must lie inside the window.
    static Series term(Window w, const Monomial& m, Rational c) {
        if (!w.contains(m))
            throw std::invalid_argument("Series::term: monomial " + m.str() + " outside window " + w.str());
        Series s(std::move(w));
        s.add_term(m, std::move(c));
        return s;
    }

    const Window& window() const { return win_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Rational coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Accumulates c onto the coefficient of m, truncating silently when m is
    /// outside the window.
    void add_term(const Monomial& m, const Rational& c) {
        if (c.is_zero() || !win_.contains(m)) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Series operator-() const {
        Series r(win_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    Series scaled(const Rational& c) const {
        Series r(win_);
        if (c.is_zero()) return r;
        for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
        return r;
    }

    /// Drops all terms outside `sub`, which must lie inside the current
    /// window (a restriction never invents coefficients).
    Series restricted(const Window& sub) const {
        if (!sub.inside(win_))
            throw std::invalid_argument("Series::restricted: " + sub.str() + " is not inside " + win_.str());
        Series r(sub);
        for (const auto& [m, c] : terms_) r.add_term(m, c);
        return r;
    }

    friend bool operator==(const Series& a, const Series& b) {
        return a.win_ == b.win_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")";
            if (!m.is_unit()) s += " " + m.str();
        }
        return s;
    }

private:
    Window win_;
    std::map<Monomial, Rational> terms_;
};

/// Coefficient-wise sum on the intersected window.
inline Series add(const Series& a, const Series& b) {
    Series r(Window::intersect(a.window(), b.window()));
    for (const auto& [m, c] : a.terms()) r.add_term(m, c);
    for (const auto& [m, c] : b.terms()) r.add_term(m, c);
    return r;
}

inline Series sub(const Series& a, const Series& b) { return add(a, -b); }

/// Convolution product truncated to the intersected window.
inline Series mul(const Series& a, const Series& b) {
    Series r(Window::intersect(a.window(), b.window()));
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) r.add_term(ma * mb, ca * cb);
    return r;
}

inline Series operator+(const Series& a, const Series& b) { return add(a, b); }
inline Series operator-(const Series& a, const Series& b) { return sub(a, b); }
inline Series operator*(const Series& a, const Series& b) { return mul(a, b); }

inline Series pow_series(const Series& f, unsigned e) {
    Series acc = Series::one(f.window());
    Series base = f;
    while (e) {
        if (e & 1u) acc = mul(acc, base);
        base = (e >>= 1u) ? mul(base, base) : base;
    }
    return acc;
}

namespace detail {

inline int nilpotency_cap(const Window& w) {
    long long cap = 4;
    for (const auto& [v, r] : w.ranges()) {
        (void)v;
        cap += 2ll * (std::abs(r.lo) + std::abs(r.hi));
    }
    return static_cast<int>(std::min<long long>(cap, 1 << 20));
}

}  // namespace detail

/// Multiplicative inverse within the window. Requires the minimal-degree term
/// of f to be a nonzero constant; expands 1/f = (1/c) * sum_k (1 - f/c)^k,
/// which terminates exactly when the tail is nilpotent under truncation.
inline Series invert(const Series& f) {
    Rational c = f.coeff(Monomial::unit());
    if (c.is_zero()) throw std::domain_error("invert: not invertible (constant term is zero)");
    Series tail = Series::one(f.window()) - f.scaled(Rational(1) / c);  // 1 - f/c
    Series acc = Series::one(f.window());
    Series p = tail;
    int cap = detail::nilpotency_cap(f.window());
    for (int k = 1; !p.is_zero(); ++k) {
        if (k > cap) throw std::domain_error("invert: not invertible within window " + f.window().str());
        acc = acc + p;
        p = mul(p, tail);
    }
    return acc.scaled(Rational(1) / c);
}

namespace detail {

inline int grading_cap(const Series& f, VarId grading, const char* who) {
    for (const auto& [m, c] : f.terms()) {
        (void)c;
        if (m.exponent(grading) < 1)
            throw std::domain_error(std::string(who) + ": non-nilpotent argument (term " + m.str() +
                                    " has " + var_name(grading) + "-degree < 1)");
    }
    return f.window().has(grading) ? f.window().range(grading).hi : 0;
}

}  // namespace detail

/// exp(f) = sum_k f^k / k!, truncated. Every monomial of f must have degree
/// >= 1 in the grading variable, which makes the sum finite.
inline Series exp_series(const Series& f, VarId grading = var("v")) {
    int cap = detail::grading_cap(f, grading, "exp_series");
    Series acc = Series::one(f.window());
    Series term = Series::one(f.window());
    for (int k = 1; k <= cap; ++k) {
        term = mul(term, f).scaled(Rational(1, k));
        if (term.is_zero()) break;
        acc = acc + term;
    }
    return acc;
}

/// log(1+f) = sum_k (-1)^(k-1) f^k / k, truncated; same domain as exp_series.
inline Series log1p_series(const Series& f, VarId grading = var("v")) {
    int cap = detail::grading_cap(f, grading, "log1p_series");
    Series acc = Series::zero(f.window());
    Series p = Series::one(f.window());
    for (int k = 1; k <= cap; ++k) {
        p = mul(p, f);
        if (p.is_zero()) break;
        acc = acc + p.scaled(Rational(k % 2 == 1 ? 1 : -1, k));
    }
    return acc;
}

/// (1 - m)^e for a non-unit monomial m; negative exponents go through invert.
inline Series pow_one_minus(const Monomial& m, int e, const Window& w) {
    if (m.is_unit()) throw std::invalid_argument("pow_one_minus: monomial must not be constant");
    Series base = Series::one(w);
    base.add_term(m, Rational(-1));
    if (e >= 0) return pow_series(base, static_cast<unsigned>(e));
    return pow_series(invert(base), static_cast<unsigned>(-e));
}

/// prod_{n=1}^{N} (1 - x^n)^{a_n} truncated to the window, where x is `v` and
/// a is a (possibly sparse) map n -> exponent. Requires N at least the top
/// degree of the window in v, so that the truncated product is exact.
inline Series product_expansion(const std::map<int, int>& a, VarId v, int N, const Window& w) {
    if (!w.has(v)) throw std::invalid_argument("product_expansion: window lacks variable " + var_name(v));
    if (N < w.range(v).hi)
        throw std::invalid_argument("product_expansion: N = " + std::to_string(N) +
                                    " below window top degree " + std::to_string(w.range(v).hi));
    Series r = Series::one(w);
    for (const auto& [n, e] : a) {
        if (n < 1 || n > N || e == 0) continue;
        r = mul(r, pow_one_minus(Monomial(v, n), e, w));
    }
    return r;
}

/// Substitutes v -> sign * repl in f: the coefficient of v^k moves onto
/// sign^k * repl^k. Every image monomial must fit in the output window.
inline Series substitute_monomial(const Series& f, VarId v, int sign, const Monomial& repl,
                                  const Window& out) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("substitute_monomial: sign must be +1 or -1");
    Series r(out);
    for (const auto& [m, c] : f.terms()) {
        int k = m.exponent(v);
        Monomial image = m.without(v) * repl.pow(k);
        if (!out.contains(image))
            throw std::invalid_argument("substitute_monomial: image " + image.str() +
                                        " escapes output window " + out.str());
        bool flip = sign == -1 && (k % 2 != 0);
        r.add_term(image, flip ? -c : c);
    }
    return r;
}

}  // namespace k3series
