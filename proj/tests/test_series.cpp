#include "k3series/series.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

using namespace k3series;

namespace {

const VarId Q = var("q");
const VarId V = var("v");

Series poly_q(const Window& w, std::vector<std::pair<int, Rational>> coeffs) {
    Series s(w);
    for (auto& [e, c] : coeffs) s.add_term(Monomial(Q, e), c);
    return s;
}

}  // namespace

TEST_CASE("monomials multiply, cancel and order deterministically") {
    Monomial a(Q, 2), b(Q, -2);
    CHECK(a * b == Monomial::unit());
    CHECK((a * Monomial(V, 1)).exponent(Q) == 2);
    CHECK(Monomial(V, 3).pow(-2).exponent(V) == -6);
    CHECK(Monomial(Q, 1).pow(0).is_unit());
    CHECK((Monomial(Q, 1) * Monomial(V, 2)).str() == "q v^2");
}

TEST_CASE("windows police membership and intersect") {
    Window w;
    w.set(Q, -2, 4, true).set(V, 0, 3);
    CHECK(w.contains(Monomial(Q, -2)));
    CHECK_FALSE(w.contains(Monomial(Q, -3)));
    CHECK_FALSE(w.contains(Monomial(V, 4)));
    CHECK(w.contains(Monomial::unit()));
    CHECK_FALSE(w.contains(Monomial(var("y"), 1)));
    CHECK_THROWS_AS(Window{}.set(Q, 3, 2, true), std::invalid_argument);
    CHECK_THROWS_AS(Window{}.set(Q, -1, 2, false), std::invalid_argument);

    Window w2;
    w2.set(Q, 0, 6, true);
    Window i = Window::intersect(w, w2);
    CHECK(i.range(Q).lo == 0);
    CHECK(i.range(Q).hi == 4);
    CHECK(i.range(V).hi == 3);

    Window bad;
    bad.set(Q, 0, 6, false);
    CHECK_THROWS_AS(Window::intersect(w, bad), std::invalid_argument);
    Window disjoint;
    disjoint.set(Q, 5, 9, true);
    CHECK_THROWS_AS(Window::intersect(w, disjoint), std::invalid_argument);
}

TEST_CASE("addition: cancellation, identity, disjoint support") {
    Window w;
    w.set(Q, 0, 4);
    Series a = poly_q(w, {{0, 1}, {1, 1}});   // 1 + q
    Series b = poly_q(w, {{0, 1}, {1, -1}});  // 1 - q
    CHECK(add(a, b) == Series::constant(w, 2));
    CHECK(add(a, Series::zero(w)) == a);
    Series c = poly_q(w, {{1, 24}});
    Series d = poly_q(w, {{2, 300}});
    Series e = add(c, d);
    CHECK(e.coeff(Monomial(Q, 1)) == Rational(24));
    CHECK(e.coeff(Monomial(Q, 2)) == Rational(300));
    CHECK(e.term_count() == 2);
}

TEST_CASE("multiplication: convolution, Laurent cancellation, truncation") {
    Window w;
    w.set(Q, -2, 2, true);
    Series a = poly_q(w, {{0, 1}, {1, 1}});
    Series b = poly_q(w, {{0, 1}, {1, -1}});
    CHECK(mul(a, b) == poly_q(w, {{0, 1}, {2, -1}}));

    CHECK(mul(poly_q(w, {{-1, 1}}), poly_q(w, {{1, 1}})) == Series::one(w));

    // exponent overflow truncates silently, never wraps
    Series top = poly_q(w, {{2, 1}});
    CHECK(mul(top, top).is_zero());
}

TEST_CASE("inverse: geometric series, constants, binomial tail") {
    Window w;
    w.set(Q, 0, 8);
    Series one_minus_q = poly_q(w, {{0, 1}, {1, -1}});

    // oracle: geometric expansion built directly, then checked by convolution
    Series geometric(w);
    for (int k = 0; k <= 8; ++k) geometric.add_term(Monomial(Q, k), Rational(1));
    CHECK(mul(geometric, one_minus_q) == Series::one(w));
    CHECK(invert(one_minus_q) == geometric);

    CHECK(invert(Series::constant(w, 2)) == Series::constant(w, Rational(1, 2)));

    // (1-q)^-2 = sum (m+1) q^m
    Series sq = mul(one_minus_q, one_minus_q);
    Series inv2 = invert(sq);
    for (int m = 0; m <= 8; ++m) CHECK(inv2.coeff(Monomial(Q, m)) == Rational(m + 1));

    CHECK_THROWS_AS(invert(poly_q(w, {{1, 1}})), std::domain_error);
    CHECK_THROWS_AS(invert(Series::zero(w)), std::domain_error);
}

TEST_CASE("inverse rejects series that are not units in the truncated ring") {
    Window w;
    w.set(Q, -4, 4, true);
    // 1 + q + 1/q: the tail keeps cycling through the constant, no inverse
    Series f = poly_q(w, {{0, 1}, {1, 1}, {-1, 1}});
    CHECK_THROWS_AS(invert(f), std::domain_error);
}

TEST_CASE("exponential and logarithm of graded series") {
    Window w;
    w.set(Q, 0, 6);
    w.set(V, 0, 3);
    CHECK(exp_series(Series::zero(w), V) == Series::one(w));
    CHECK(log1p_series(Series::zero(w), V) == Series::zero(w));

    Rational P(5, 2);
    Series f = Series::term(w, Monomial(Q, 1) * Monomial(V, 1), P);
    Series e = exp_series(f, V);
    CHECK(e.coeff(Monomial::unit()) == Rational(1));
    CHECK(e.coeff(Monomial(Q, 1) * Monomial(V, 1)) == P);
    CHECK(e.coeff(Monomial(Q, 2) * Monomial(V, 2)) == P * P / Rational(2));
    CHECK(e.coeff(Monomial(Q, 3) * Monomial(V, 3)) == P * P * P / Rational(6));

    Series l = log1p_series(-f, V);
    CHECK(l.coeff(Monomial(Q, 1) * Monomial(V, 1)) == -P);
    CHECK(l.coeff(Monomial(Q, 2) * Monomial(V, 2)) == -(P * P) / Rational(2));
    CHECK(l.coeff(Monomial(Q, 3) * Monomial(V, 3)) == -(P * P * P) / Rational(3));

    Series bad = Series::term(w, Monomial(Q, 1), Rational(1));  // v-degree 0
    CHECK_THROWS_AS(exp_series(bad, V), std::domain_error);
    CHECK_THROWS_AS(log1p_series(bad, V), std::domain_error);
}

TEST_CASE("exp and log1p are mutually inverse on random graded series") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> qe(-2, 2), ve(1, 2), nt(0, 8), num(-9, 9), den(1, 9);
    Window w;
    w.set(Q, -8, 8, true);
    w.set(V, 0, 4);
    Series one = Series::one(w);
    for (int trial = 0; trial < 120; ++trial) {
        Series f(w);
        int k = nt(rng);
        // exponents stay small enough that no product can cross the window
        for (int i = 0; i < k; ++i)
            f.add_term(Monomial(Q, qe(rng)) * Monomial(V, ve(rng)), Rational(num(rng), den(rng)));
        CHECK(exp_series(log1p_series(f, V), V) == add(one, f));
        CHECK(log1p_series(sub(exp_series(f, V), one), V) == f);
    }
}

TEST_CASE("ring axioms hold exactly on truncation-safe series") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> qe(-2, 2), ve(0, 2), nt(0, 8), num(-9, 9), den(1, 9);
    Window w;
    w.set(Q, -8, 8, true);
    w.set(V, 0, 8);
    auto rand_series = [&]() {
        Series s(w);
        int k = nt(rng);
        for (int i = 0; i < k; ++i)
            s.add_term(Monomial(Q, qe(rng)) * Monomial(V, ve(rng)), Rational(num(rng), den(rng)));
        return s;
    };
    for (int trial = 0; trial < 120; ++trial) {
        Series a = rand_series(), b = rand_series(), c = rand_series();
        CHECK(add(add(a, b), c) == add(a, add(b, c)));
        CHECK(add(a, b) == add(b, a));
        CHECK(mul(a, b) == mul(b, a));
        CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
        CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
    }
}

TEST_CASE("product expansion: empty, single factor, eta power") {
    Window w;
    w.set(Q, 0, 4);
    CHECK(product_expansion({}, Q, 4, w) == Series::one(w));
    CHECK(product_expansion({{1, 1}}, Q, 4, w) == poly_q(w, {{0, 1}, {1, -1}}));
    CHECK_THROWS_AS(product_expansion({}, Q, 3, w), std::invalid_argument);

    // oracle: direct convolution of the binomial expansions of (1-q^n)^-24
    std::vector<Integer> oracle{1, 0, 0, 0, 0};
    {
        std::vector<Integer> acc{1, 0, 0, 0, 0};
        for (int n = 1; n <= 4; ++n) {
            std::vector<Integer> factor(5, Integer(0));
            for (int j = 0; n * j <= 4; ++j)
                factor[static_cast<std::size_t>(n * j)] = binomial(static_cast<unsigned>(j) + 23, 23);
            std::vector<Integer> next(5, Integer(0));
            for (int i = 0; i <= 4; ++i)
                for (int j = 0; i + j <= 4; ++j)
                    next[static_cast<std::size_t>(i + j)] +=
                        acc[static_cast<std::size_t>(i)] * factor[static_cast<std::size_t>(j)];
            acc = next;
        }
        oracle = acc;
    }
    CHECK(oracle[1] == 24);
    CHECK(oracle[2] == 324);
    CHECK(oracle[3] == 3200);
    CHECK(oracle[4] == 25650);

    std::map<int, int> a;
    for (int n = 1; n <= 4; ++n) a[n] = -24;
    Series p = product_expansion(a, Q, 4, w);
    for (int k = 0; k <= 4; ++k)
        CHECK(p.coeff(Monomial(Q, k)) == Rational(oracle[static_cast<std::size_t>(k)]));
}

TEST_CASE("product expansion against its own inverse exponents") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> expo(-4, 4), idx(1, 6);
    Window w;
    w.set(Q, 0, 8);
    for (int trial = 0; trial < 120; ++trial) {
        std::map<int, int> a;
        for (int i = 0; i < 3; ++i) a[idx(rng)] = expo(rng);
        std::map<int, int> neg;
        for (auto& [n, e] : a) neg[n] = -e;
        CHECK(mul(product_expansion(a, Q, 8, w), product_expansion(neg, Q, 8, w)) == Series::one(w));
    }
}

TEST_CASE("monomial substitution moves coefficients with the right signs") {
    Window w;
    w.set(Q, -2, 2, true);
    Series f = poly_q(w, {{0, 1}, {1, 1}});  // 1 + q
    CHECK(substitute_monomial(f, Q, -1, Monomial(Q, 1), w) == poly_q(w, {{0, 1}, {1, -1}}));

    Series g = poly_q(w, {{1, 1}});
    CHECK(substitute_monomial(g, Q, 1, Monomial(Q, 2), w) == poly_q(w, {{2, 1}}));

    Series h = poly_q(w, {{-1, 1}});
    CHECK(substitute_monomial(h, Q, -1, Monomial(Q, 1), w) == poly_q(w, {{-1, -1}}));

    Window tight;
    tight.set(Q, 0, 1);
    CHECK_THROWS_AS(substitute_monomial(g, Q, 1, Monomial(Q, 2), tight), std::invalid_argument);
}

TEST_CASE("series equality compares window and coefficients") {
    Window w1, w2;
    w1.set(Q, 0, 4);
    w2.set(Q, 0, 5);
    CHECK(Series::one(w1) != Series::one(w2));
    CHECK(Series::one(w1) == Series::one(w1));
    Series s = poly_q(w2, {{0, 1}, {5, 7}});
    CHECK(s.restricted(w1) == Series::one(w1));
    CHECK_THROWS_AS(Series::one(w2).restricted(Window{}.set(Q, 0, 9)), std::invalid_argument);
}
