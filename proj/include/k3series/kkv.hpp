#pragma once

#include "k3series/series.hpp"

#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3series::kkv {

/// Laurent polynomial in y, symmetric under y <-> 1/y. Stores the
/// coefficients c_m for m = 0..M; the negative side is implied.
class SymmetricLaurentPoly {
public:
    SymmetricLaurentPoly() : c_(1, Rational(0)) {}

    explicit SymmetricLaurentPoly(std::vector<Rational> nonneg_side) : c_(std::move(nonneg_side)) {
        if (c_.empty()) c_.assign(1, Rational(0));
        trim();
    }

    /// Builds from a full coefficient list full[i] = coefficient of
    /// y^(i - offset); rejects asymmetric input.
    static SymmetricLaurentPoly from_full(const std::vector<Rational>& full, int offset) {
        int top = static_cast<int>(full.size()) - 1 - offset;
        int bottom = -offset;
        int m_max = std::max(top, -bottom);
        std::vector<Rational> c(static_cast<std::size_t>(m_max) + 1, Rational(0));
        auto at = [&](int m) -> Rational {
            int i = m + offset;
            return (i >= 0 && i < static_cast<int>(full.size())) ? full[static_cast<std::size_t>(i)]
                                                                 : Rational(0);
        };
        for (int m = 0; m <= m_max; ++m) {
            if (at(m) != at(-m))
                throw std::invalid_argument("SymmetricLaurentPoly: asymmetric input at y^" +
                                            std::to_string(m));
            c[static_cast<std::size_t>(m)] = at(m);
        }
        return SymmetricLaurentPoly(std::move(c));
    }

    int max_degree() const { return static_cast<int>(c_.size()) - 1; }

    Rational coeff(int m) const {
        int a = std::abs(m);
        return a <= max_degree() ? c_[static_cast<std::size_t>(a)] : Rational(0);
    }

    /// Value at y = 1: c_0 + 2 * sum_{m>=1} c_m.
    Rational at_one() const {
        Rational s = c_[0];
        for (std::size_t m = 1; m < c_.size(); ++m) s += c_[m] + c_[m];
        return s;
    }

    friend bool operator==(const SymmetricLaurentPoly& a, const SymmetricLaurentPoly& b) {
        return a.c_ == b.c_;
    }

private:
    void trim() {
        while (c_.size() > 1 && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Rational> c_;  // c_[m] = coefficient of y^m = coefficient of y^-m
};

namespace detail {

/// Expansions of z^g in y, z = y - 2 + 1/y. Row g holds coefficients of
/// y^m for m = -g..g (index m + g); all integers.
inline std::vector<std::vector<Integer>> z_power_rows(int g_max) {
    std::vector<std::vector<Integer>> rows(static_cast<std::size_t>(g_max) + 1);
    rows[0] = {Integer(1)};
    for (int g = 1; g <= g_max; ++g) {
        const auto& prev = rows[static_cast<std::size_t>(g - 1)];
        std::vector<Integer> cur(2 * static_cast<std::size_t>(g) + 1, Integer(0));
        for (int m = -(g - 1); m <= g - 1; ++m) {
            const Integer& c = prev[static_cast<std::size_t>(m + g - 1)];
            if (c == 0) continue;
            cur[static_cast<std::size_t>(m + 1 + g)] += c;
            cur[static_cast<std::size_t>(m + g)] -= 2 * c;
            cur[static_cast<std::size_t>(m - 1 + g)] += c;
        }
        rows[static_cast<std::size_t>(g)] = std::move(cur);
    }
    return rows;
}

}  // namespace detail

/// Writes p exactly in the basis z^g, z = y - 2 + 1/y, by peeling the top
/// y-coefficient (z^g is monic in y^g). Returns a_0..a_M.
inline std::vector<Rational> to_z_basis(const SymmetricLaurentPoly& p) {
    int M = p.max_degree();
    std::vector<Rational> residual(static_cast<std::size_t>(2 * M + 1));
    for (int m = -M; m <= M; ++m) residual[static_cast<std::size_t>(m + M)] = p.coeff(m);
    auto zpow = detail::z_power_rows(M);
    std::vector<Rational> a(static_cast<std::size_t>(M) + 1, Rational(0));
    for (int g = M; g >= 0; --g) {
        Rational top = residual[static_cast<std::size_t>(g + M)];
        if (top.is_zero()) continue;
        a[static_cast<std::size_t>(g)] = top;
        const auto& row = zpow[static_cast<std::size_t>(g)];
        for (int m = -g; m <= g; ++m)
            residual[static_cast<std::size_t>(m + M)] -= top * Rational(row[static_cast<std::size_t>(m + g)]);
    }
    for (const auto& r : residual)
        if (!r.is_zero())
            throw std::logic_error("to_z_basis: nonzero residual after peeling (not symmetric?)");
    return a;
}

namespace detail {

/// Dense expansion of prod_{n=1}^{H} (1-q^n)^-20 (1-y q^n)^-2 (1-y^-1 q^n)^-2
/// mod q^(H+1). rows[h][m + H] is the coefficient of q^h y^m; all integers.
/// The q^h coefficient has y-support in [-h, h], so one offset fits all rows.
inline std::vector<std::vector<Integer>> kkv_rows(int h_max) {
    const int H = h_max;
    std::vector<std::vector<Integer>> rows(static_cast<std::size_t>(H) + 1,
                                           std::vector<Integer>(2 * static_cast<std::size_t>(H) + 1));
    rows[0][static_cast<std::size_t>(H)] = 1;

    // Multiply the accumulator in place by 1 + sum_{j>=1} c_j q^(n j) y^(s j),
    // descending in q-degree so each read sees pre-update values.
    auto mul_factor = [&](int n, int s, auto coefficient) {
        for (int h = H; h >= n; --h) {
            for (int j = 1; n * j <= h; ++j) {
                Integer c = coefficient(j);
                const auto& src = rows[static_cast<std::size_t>(h - n * j)];
                auto& dst = rows[static_cast<std::size_t>(h)];
                int shift = s * j;
                for (int m = -H; m <= H; ++m) {
                    int mm = m - shift;
                    if (mm < -H || mm > H) continue;
                    const Integer& v = src[static_cast<std::size_t>(mm + H)];
                    if (v != 0) dst[static_cast<std::size_t>(m + H)] += c * v;
                }
            }
        }
    };

    for (int n = 1; n <= H; ++n) {
        // (1-q^n)^-20 = sum_j C(j+19,19) q^(nj)
        mul_factor(n, 0, [](int j) { return binomial(static_cast<unsigned>(j) + 19, 19); });
        // (1-y q^n)^-2 = sum_j (j+1) y^j q^(nj)
        mul_factor(n, +1, [](int j) { return Integer(j + 1); });
        // (1-y^-1 q^n)^-2 = sum_j (j+1) y^-j q^(nj)
        mul_factor(n, -1, [](int j) { return Integer(j + 1); });
    }
    return rows;
}

}  // namespace detail

/// The KKV product prod_{n>=1} (1-q^n)^-20 (1-y q^n)^-2 (1-y^-1 q^n)^-2
/// truncated at q-degree h_max, as a series in q and Laurent y.
inline Series kkv_rhs(int h_max) {
    if (h_max < 0) throw std::invalid_argument("kkv_rhs: h_max must be >= 0");
    VarId q = var("q"), y = var("y");
    Window w;
    w.set(q, 0, h_max);
    w.set(y, -std::max(h_max, 0), std::max(h_max, 0), true);
    auto rows = detail::kkv_rows(h_max);
    Series s(w);
    for (int h = 0; h <= h_max; ++h)
        for (int m = -h_max; m <= h_max; ++m) {
            const Integer& c = rows[static_cast<std::size_t>(h)][static_cast<std::size_t>(m + h_max)];
            if (c != 0) s.add_term(Monomial(q, h) * Monomial(y, m), Rational(c));
        }
    return s;
}

/// Extracts the q^h coefficient of a series in (q, y) as a symmetric
/// Laurent polynomial in y.
inline SymmetricLaurentPoly q_coefficient(const Series& s, int h) {
    VarId q = var("q"), y = var("y");
    int M = 0;
    for (const auto& [m, c] : s.terms()) {
        (void)c;
        if (m.exponent(q) == h) M = std::max(M, std::abs(m.exponent(y)));
    }
    std::vector<Rational> full(2 * static_cast<std::size_t>(M) + 1, Rational(0));
    for (const auto& [m, c] : s.terms())
        if (m.exponent(q) == h) full[static_cast<std::size_t>(m.exponent(y) + M)] = c;
    return SymmetricLaurentPoly::from_full(full, M);
}

/// Triangular table of the integers n_g,h extracted from the KKV product:
/// the q^h coefficient equals sum_g (-1)^g n_g,h z^g with z = y - 2 + 1/y.
class GvTable {
public:
    int h_max() const { return h_max_; }

    /// n_g,h; zero whenever g > h. Indices must be in [0, h_max].
    const Integer& entry(int g, int h) const {
        if (g < 0 || h < 0 || g > h_max_ || h > h_max_)
            throw std::out_of_range("GvTable::entry: index outside table");
        return n_[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)];
    }

private:
    friend std::shared_ptr<const GvTable> compute_gv_table(int);
    int h_max_ = 0;
    std::vector<std::vector<Integer>> n_;
};

/// Computes (and memoizes, per h_max) the table n_g,h for 0 <= g,h <= h_max.
inline std::shared_ptr<const GvTable> compute_gv_table(int h_max) {
    if (h_max < 0) throw std::invalid_argument("compute_gv_table: h_max must be >= 0");
    static std::mutex cache_mutex;
    static std::map<int, std::shared_ptr<const GvTable>> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(h_max);
        if (it != cache.end()) return it->second;
    }

    auto rows = detail::kkv_rows(h_max);
    auto table = std::make_shared<GvTable>();
    table->h_max_ = h_max;
    table->n_.assign(static_cast<std::size_t>(h_max) + 1,
                     std::vector<Integer>(static_cast<std::size_t>(h_max) + 1, Integer(0)));
    for (int h = 0; h <= h_max; ++h) {
        std::vector<Rational> full;
        full.reserve(2 * static_cast<std::size_t>(h) + 1);
        for (int m = -h; m <= h; ++m)
            full.emplace_back(rows[static_cast<std::size_t>(h)][static_cast<std::size_t>(m + h_max)]);
        auto a = to_z_basis(SymmetricLaurentPoly::from_full(full, h));
        for (int g = 0; g < static_cast<int>(a.size()); ++g) {
            if (a[static_cast<std::size_t>(g)].is_zero()) continue;
            if (g > h) throw std::logic_error("compute_gv_table: z-degree exceeds q-degree");
            Rational val = (g % 2 == 0) ? a[static_cast<std::size_t>(g)] : -a[static_cast<std::size_t>(g)];
            if (!val.is_integer())
                throw std::runtime_error("KKV integrality violated at g=" + std::to_string(g) +
                                         ", h=" + std::to_string(h) + ": " + val.str());
            table->n_[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)] = val.as_integer();
        }
    }

    std::lock_guard<std::mutex> lock(cache_mutex);
    auto [it, inserted] = cache.emplace(h_max, std::move(table));
    (void)inserted;
    return it->second;
}

}  // namespace k3series::kkv
