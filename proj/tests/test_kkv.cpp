#include "k3series/kkv.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace k3series;
using namespace k3series::kkv;

namespace {
const VarId Q = var("q");
const VarId Y = var("y");
}

TEST_CASE("kkv product: trivial truncation and first coefficient") {
    CHECK(kkv_rhs(0) == Series::one(Window{}.set(Q, 0, 0).set(Y, 0, 0, true)));

    Series rhs = kkv_rhs(4);
    auto p1 = q_coefficient(rhs, 1);
    CHECK(p1.coeff(0) == Rational(20));
    CHECK(p1.coeff(1) == Rational(2));
    CHECK(p1.coeff(-1) == Rational(2));
    CHECK(p1.coeff(2) == Rational(0));
    CHECK(p1.at_one() == Rational(24));
    CHECK(q_coefficient(rhs, 0).coeff(0) == Rational(1));
}

TEST_CASE("z-basis conversion by top-degree peeling") {
    SymmetricLaurentPoly one({Rational(1)});
    CHECK(to_z_basis(one) == std::vector<Rational>{Rational(1)});

    // z itself: y - 2 + 1/y
    SymmetricLaurentPoly z({Rational(-2), Rational(1)});
    CHECK(to_z_basis(z) == std::vector<Rational>{Rational(0), Rational(1)});

    // 20 + 2y + 2/y = 24 + 2z
    SymmetricLaurentPoly p({Rational(20), Rational(2)});
    CHECK(to_z_basis(p) == std::vector<Rational>{Rational(24), Rational(2)});

    std::vector<Rational> asym{Rational(1), Rational(0), Rational(2)};  // y^-1 + 2 y
    CHECK_THROWS_AS(SymmetricLaurentPoly::from_full(asym, 1), std::invalid_argument);
}

TEST_CASE("GV table: spot values, triangularity, integrality") {
    auto gv = compute_gv_table(10);
    CHECK(gv->entry(0, 0) == 1);
    CHECK(gv->entry(0, 1) == 24);
    CHECK(gv->entry(1, 1) == -2);
    const long long expect0[5] = {1, 24, 324, 3200, 25650};
    for (int h = 0; h <= 4; ++h) CHECK(gv->entry(0, h) == expect0[h]);
    for (int g = 0; g <= 10; ++g)
        for (int h = 0; h < g; ++h) CHECK(gv->entry(g, h) == 0);
    // top-genus entries follow the (-1)^h (h+1) pattern of the product
    for (int h = 0; h <= 10; ++h)
        CHECK(gv->entry(h, h) == (h % 2 == 0 ? Integer(h + 1) : Integer(-(h + 1))));
    CHECK_THROWS_AS(gv->entry(0, 11), std::out_of_range);

    // memoized per h_max
    CHECK(compute_gv_table(10).get() == gv.get());
}

TEST_CASE("y -> 1 specialization agrees with the eta-power expansion") {
    auto gv = compute_gv_table(8);
    Window w;
    w.set(Q, 0, 8);
    std::map<int, int> a;
    for (int n = 1; n <= 8; ++n) a[n] = -24;
    Series eta = product_expansion(a, Q, 8, w);
    Series rhs = kkv_rhs(8);
    for (int h = 0; h <= 8; ++h) {
        CHECK(Rational(gv->entry(0, h)) == eta.coeff(Monomial(Q, h)));
        CHECK(q_coefficient(rhs, h).at_one() == eta.coeff(Monomial(Q, h)));
    }
}

TEST_CASE("table entries reconstruct the product coefficients") {
    const int H = 5;
    auto gv = compute_gv_table(H);
    Series rhs = kkv_rhs(H);
    Window wy;
    wy.set(Y, -H, H, true);
    Series z(wy);
    z.add_term(Monomial(Y, 1), Rational(1));
    z.add_term(Monomial::unit(), Rational(-2));
    z.add_term(Monomial(Y, -1), Rational(1));
    for (int h = 0; h <= H; ++h) {
        Series rebuilt(wy);
        for (int g = 0; g <= h; ++g) {
            Rational c(gv->entry(g, h));
            if (g % 2 == 1) c = -c;
            rebuilt = add(rebuilt, pow_series(z, static_cast<unsigned>(g)).scaled(c));
        }
        auto poly = q_coefficient(rhs, h);
        for (int m = -h; m <= h; ++m) CHECK(rebuilt.coeff(Monomial(Y, m)) == poly.coeff(m));
    }
}
