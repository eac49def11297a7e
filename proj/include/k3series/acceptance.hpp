#pragma once

#include "k3series/kkv.hpp"
#include "k3series/ray.hpp"
#include "k3series/series.hpp"
#include "k3series/sheaf.hpp"
#include "k3series/vafa_witten.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace k3series::acceptance {

namespace detail {

inline Rational random_rational(std::mt19937_64& rng, int num_span = 9, int den_max = 9) {
    std::uniform_int_distribution<int> num(-num_span, num_span);
    std::uniform_int_distribution<int> den(1, den_max);
    return Rational(num(rng), den(rng));
}

/// Partition-power oracle: coefficients of prod_{k=1}^{top} (1-q^k)^-24 by
/// direct convolution of the binomial expansions of each factor. Independent
/// of the Series machinery.
inline std::vector<Integer> partition_power_oracle(int top) {
    std::vector<Integer> acc(static_cast<std::size_t>(top) + 1, Integer(0));
    acc[0] = 1;
    for (int k = 1; k <= top; ++k) {
        std::vector<Integer> factor(static_cast<std::size_t>(top) + 1, Integer(0));
        for (int j = 0; k * j <= top; ++j)
            factor[static_cast<std::size_t>(k * j)] = binomial(static_cast<unsigned>(j) + 23, 23);
        std::vector<Integer> next(static_cast<std::size_t>(top) + 1, Integer(0));
        for (int i = 0; i <= top; ++i) {
            if (acc[static_cast<std::size_t>(i)] == 0) continue;
            for (int j = 0; i + j <= top; ++j)
                next[static_cast<std::size_t>(i + j)] +=
                    acc[static_cast<std::size_t>(i)] * factor[static_cast<std::size_t>(j)];
        }
        acc = std::move(next);
    }
    return acc;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

}  // namespace detail

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Criterion 1: GV table at h_max = 10 in under 10 s, all entries integral,
/// triangular, y -> 1 specialization matching the partition power, and the
/// genus-0 spot values 1, 24, 324, 3200, 25650.
inline CriterionResult criterion_kkv_table() {
    CriterionResult res{1, "KKV table", true, ""};
    detail::Timer timer;
    auto gv = kkv::compute_gv_table(10);
    double elapsed = timer.seconds();
    if (elapsed >= 10.0) {
        res.pass = false;
        res.detail += "table took " + std::to_string(elapsed) + "s; ";
    }
    for (int g = 0; g <= 10; ++g)
        for (int h = 0; h < g; ++h)
            if (gv->entry(g, h) != 0) {
                res.pass = false;
                res.detail += "nonzero above diagonal at g=" + std::to_string(g) + ",h=" + std::to_string(h) + "; ";
            }
    auto oracle = detail::partition_power_oracle(10);
    for (int h = 0; h <= 10; ++h)
        if (gv->entry(0, h) != oracle[static_cast<std::size_t>(h)]) {
            res.pass = false;
            res.detail += "y->1 mismatch at h=" + std::to_string(h) + "; ";
        }
    const long long spot[5] = {1, 24, 324, 3200, 25650};
    for (int h = 0; h <= 4; ++h)
        if (gv->entry(0, h) != spot[h]) {
            res.pass = false;
            res.detail += "spot value mismatch at h=" + std::to_string(h) + "; ";
        }
    if (res.pass) res.detail = "h_max=10 in " + std::to_string(elapsed) + "s";
    return res;
}

/// Criteria 2 and 3 share one sweep over h0 in {0,1,2,3} with d_max = 3 and
/// q-window [-10, 10].
inline std::pair<CriterionResult, CriterionResult> criteria_identity_chain_and_integrality() {
    CriterionResult chain{2, "identity chain", true, ""};
    CriterionResult integrality{3, "integrality", true, ""};
    detail::Timer timer;
    VarId q = var("q"), v = var("v");

    int needed = 0;
    for (int h0 = 0; h0 <= 3; ++h0) {
        ray::RayContext ctx;
        ctx.h0 = h0;
        ctx.d_max = 3;
        ctx.q_window.set(q, -10, 10, true);
        needed = std::max(needed, ctx.required_h_max());
    }
    auto gv = kkv::compute_gv_table(needed);

    for (int h0 = 0; h0 <= 3; ++h0) {
        ray::RayContext ctx;
        ctx.h0 = h0;
        ctx.d_max = 3;
        ctx.q_window.set(q, -10, 10, true);
        ray::RayBundle b;
        try {
            b = ray::build_ray_bundle(ctx, *gv);
        } catch (const std::exception& e) {
            chain.pass = integrality.pass = false;
            chain.detail += std::string("h0=") + std::to_string(h0) + ": " + e.what() + "; ";
            continue;
        }
        Series one = Series::one(b.internal);
        bool eq1 = (-log1p_series(b.z_chi_internal, v)).restricted(b.requested) == b.f;
        bool eq2 = log1p_series(b.z_twistor_internal, v).restricted(b.requested) == b.f;
        bool eq3 = mul(b.z_chi_internal + one, b.z_twistor_internal + one).restricted(b.requested) ==
                   Series::one(b.requested);
        if (!(eq1 && eq2 && eq3)) {
            chain.pass = false;
            chain.detail += "h0=" + std::to_string(h0) + " chain failed (" + std::to_string(eq1) +
                            std::to_string(eq2) + std::to_string(eq3) + "); ";
        }
        for (const auto* s : {&b.z_chi, &b.z_naive, &b.z_twistor})
            for (const auto& [m, c] : s->terms())
                if (!c.is_integer()) {
                    integrality.pass = false;
                    integrality.detail += "non-integer at " + m.str() + " = " + c.str() + "; ";
                }
    }
    double elapsed = timer.seconds();
    if (elapsed >= 30.0) {
        integrality.pass = false;
        integrality.detail += "sweep took " + std::to_string(elapsed) + "s; ";
    }
    if (chain.pass) chain.detail = "h0 in {0..3}, d_max=3, q in [-10,10], exact";
    if (integrality.pass) integrality.detail = "sweep in " + std::to_string(elapsed) + "s";
    return {chain, integrality};
}

/// Criterion 4: strata_sum against -log1p over random charge data, plus the
/// configuration-space Euler characteristic recursion.
inline CriterionResult criterion_strata_oracle(std::uint64_t seed) {
    CriterionResult res{4, "strata oracle", true, ""};
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    VarId q = var("q"), v = var("v");
    Window w;
    w.set(q, -10, 10, true);
    w.set(v, 0, 5);

    std::uniform_int_distribution<int> size_dist(1, 3), n_dist(-2, 2), d_dist(1, 2);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::pair<Monomial, Rational>> charges;
        int size = size_dist(rng);
        while (static_cast<int>(charges.size()) < size) {
            Monomial cand = Monomial(q, n_dist(rng)) * Monomial(v, d_dist(rng));
            bool dup = false;
            for (const auto& [m, c] : charges) {
                (void)c;
                if (m == cand) dup = true;
            }
            if (!dup) charges.emplace_back(cand, detail::random_rational(rng));
        }
        Series z(w);
        for (const auto& [m, c] : charges) z.add_term(m, c);
        if (ray::strata_sum(charges, w) != -log1p_series(z, v)) {
            res.pass = false;
            res.detail += "mismatch at trial " + std::to_string(trial) + "; ";
        }
    }
    Integer e = 1;
    for (int k = 1; k <= 6; ++k) {
        if (k > 1) e *= -(k - 1);
        if (ray::config_euler(k) != e) {
            res.pass = false;
            res.detail += "config_euler recursion fails at k=" + std::to_string(k) + "; ";
        }
    }
    if (res.pass) res.detail = "50 random charge sets, config_euler k<=6";
    return res;
}

/// Criterion 5: multiple cover formula over 1 <= m <= 6, 1 <= |n| <= 6,
/// h0 in {0,1,2,3}.
inline CriterionResult criterion_multiple_cover() {
    CriterionResult res{5, "multiple cover", true, ""};
    for (long long h0 = 0; h0 <= 3; ++h0)
        for (long long m = 1; m <= 6; ++m)
            for (long long n = -6; n <= 6; ++n) {
                if (n == 0) continue;
                auto rep = sheaf::multiple_cover_check(m, n, h0);
                if (!rep.equal) {
                    res.pass = false;
                    res.detail += "m=" + std::to_string(m) + ",n=" + std::to_string(n) +
                                  ",h0=" + std::to_string(h0) + ": " + rep.lhs.str() + " != " +
                                  rep.rhs.str() + "; ";
                }
            }
    if (res.pass) res.detail = "m<=6, |n|<=6, h0<=3, exact";
    return res;
}

/// Criterion 6: Joyce-Song value of the primitive vector (0, beta_0, 1)
/// equals the genus-0 GV number n_0,h0.
inline CriterionResult criterion_yau_zaslow() {
    CriterionResult res{6, "Yau-Zaslow cross-check", true, ""};
    auto gv = kkv::compute_gv_table(10);
    for (long long h0 = 1; h0 <= 4; ++h0) {
        Rational J = sheaf::js_invariant(sheaf::MukaiVector{0, 1, h0, 1});
        if (!J.is_integer() || J.num() != gv->entry(0, static_cast<int>(h0))) {
            res.pass = false;
            res.detail += "h0=" + std::to_string(h0) + ": J=" + J.str() + " vs n=" +
                          gv->entry(0, static_cast<int>(h0)).str() + "; ";
        }
    }
    if (res.pass) res.detail = "h0 in {1..4}";
    return res;
}

/// Criterion 7: the Vafa-Witten pipeline returns VW = vw exactly for
/// M_max = 6, chi0 in {+-1..+-5}, 20 random draws each, with the
/// composition-sum identity agreeing with the log route; under 10 s.
inline CriterionResult criterion_vafa_witten(std::uint64_t seed) {
    CriterionResult res{7, "Vafa-Witten theorem", true, ""};
    detail::Timer timer;
    std::mt19937_64 rng(seed ^ 0xda3e39cb94b95bdbull);
    for (long long c : {1, -1, 2, -2, 3, -3, 4, -4, 5, -5}) {
        for (int draw = 0; draw < 20; ++draw) {
            vw::VwRay ray;
            ray.M_max = 6;
            ray.chi0 = c;
            ray.vw.resize(6);
            for (auto& x : ray.vw) x = detail::random_rational(rng);
            auto rep = vw::theorem_check(ray);
            if (!rep.pass) {
                res.pass = false;
                res.detail += "chi0=" + std::to_string(c) + " draw " + std::to_string(draw) +
                              (rep.exp_identity_ok ? " VW!=vw" : " exp identity failed") + "; ";
            }
        }
    }
    double elapsed = timer.seconds();
    if (elapsed >= 10.0) {
        res.pass = false;
        res.detail += "took " + std::to_string(elapsed) + "s; ";
    }
    if (res.pass) res.detail = "200 draws in " + std::to_string(elapsed) + "s";
    return res;
}

/// Criterion 8: algebra properties over randomized small instances:
/// exp/log round trips, ring axioms, and product_expansion(a) * (-a) = 1.
/// The random supports are chosen so no product can cross the window, which
/// is what makes the axioms exact identities of the truncated ring.
inline CriterionResult criterion_algebra_properties(std::uint64_t seed) {
    CriterionResult res{8, "algebra properties", true, ""};
    std::mt19937_64 rng(seed ^ 0xc2b2ae3d27d4eb4full);
    VarId q = var("q"), v = var("v");

    Window w;
    w.set(q, -8, 8, true);
    w.set(v, 0, 8);
    std::uniform_int_distribution<int> qexp(-2, 2), vexp(0, 2), nterms(0, 8);

    auto random_series = [&](bool graded) {
        Series s(w);
        int k = nterms(rng);
        for (int i = 0; i < k; ++i) {
            int ve = graded ? std::max(1, vexp(rng)) : vexp(rng);
            s.add_term(Monomial(q, qexp(rng)) * Monomial(v, ve), detail::random_rational(rng));
        }
        return s;
    };

    for (int trial = 0; trial < 120; ++trial) {
        Series a = random_series(false), b = random_series(false), c = random_series(false);
        bool ok = add(add(a, b), c) == add(a, add(b, c)) && add(a, b) == add(b, a) &&
                  mul(a, b) == mul(b, a) && mul(mul(a, b), c) == mul(a, mul(b, c)) &&
                  mul(a, add(b, c)) == add(mul(a, b), mul(a, c));
        if (!ok) {
            res.pass = false;
            res.detail += "ring axiom failed at trial " + std::to_string(trial) + "; ";
        }
        Series f = random_series(true);
        Series one = Series::one(w);
        if (exp_series(log1p_series(f, v), v) != add(one, f) ||
            log1p_series(sub(exp_series(f, v), one), v) != f) {
            res.pass = false;
            res.detail += "exp/log round trip failed at trial " + std::to_string(trial) + "; ";
        }
    }

    Window wq;
    wq.set(q, 0, 8);
    std::uniform_int_distribution<int> expo(-4, 4), idx(1, 6);
    for (int trial = 0; trial < 120; ++trial) {
        std::map<int, int> a;
        for (int i = 0; i < 3; ++i) a[idx(rng)] = expo(rng);
        std::map<int, int> neg;
        for (const auto& [n, e] : a) neg[n] = -e;
        Series p = product_expansion(a, q, 8, wq);
        Series pinv = product_expansion(neg, q, 8, wq);
        if (mul(p, pinv) != Series::one(wq)) {
            res.pass = false;
            res.detail += "product_expansion inverse failed at trial " + std::to_string(trial) + "; ";
        }
    }
    if (res.pass) res.detail = "120 instances per property";
    return res;
}

/// Runs every acceptance criterion, printing one PASS/FAIL line each.
/// Returns true iff all pass.
inline bool run_all(std::uint64_t seed, std::ostream& out) {
    std::vector<CriterionResult> results;
    results.push_back(criterion_kkv_table());
    auto [chain, integrality] = criteria_identity_chain_and_integrality();
    results.push_back(chain);
    results.push_back(integrality);
    results.push_back(criterion_strata_oracle(seed));
    results.push_back(criterion_multiple_cover());
    results.push_back(criterion_yau_zaslow());
    results.push_back(criterion_vafa_witten(seed));
    results.push_back(criterion_algebra_properties(seed));

    bool all = true;
    for (const auto& r : results) {
        all = all && r.pass;
        out << (r.pass ? "PASS" : "FAIL") << " criterion " << r.index << " (" << r.name << ")";
        if (!r.detail.empty()) out << ": " << r.detail;
        out << "\n";
    }
    out << (all ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << "\n";
    return all;
}

}  // namespace k3series::acceptance
