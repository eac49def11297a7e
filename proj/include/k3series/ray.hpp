#pragma once

#include "k3series/kkv.hpp"
#include "k3series/series.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace k3series::ray {

using kkv::GvTable;

/// Euler characteristic of the configuration space (E^k \ diagonal)/E:
/// (-1)^(k-1) (k-1)!.
inline Integer config_euler(int k) {
    if (k < 1) throw std::invalid_argument("config_euler: k must be >= 1");
    Integer e = factorial(static_cast<unsigned>(k - 1));
    return (k % 2 == 1) ? e : -e;
}

/// Ray of a primitive class: beta_0 with beta_0^2 = 2*h0 - 2, multiples
/// d*beta_0 for d up to d_max, and a Laurent q-window for the coefficients.
struct RayContext {
    int h0 = 0;
    int d_max = 1;
    Window q_window;  // Laurent range for q

    /// Arithmetic genus of the class m*beta_0: (m beta_0)^2 = 2h - 2 gives
    /// h(m) = m^2 (h0 - 1) + 1. Negative values mean the class carries no
    /// curves and contributes nothing.
    int h_of(int m) const { return m * m * (h0 - 1) + 1; }

    /// Largest table index consulted: max h(m) over m <= d_max.
    int required_h_max() const {
        int r = 0;
        for (int m = 1; m <= d_max; ++m) r = std::max(r, h_of(m));
        return r;
    }

    void validate() const {
        if (h0 < 0) throw std::invalid_argument("RayContext: h0 must be >= 0");
        if (d_max < 1) throw std::invalid_argument("RayContext: d_max must be >= 1");
        VarId q = var("q");
        if (!q_window.has(q) || !q_window.range(q).laurent)
            throw std::invalid_argument("RayContext: q_window must declare q as Laurent");
    }
};

/// The multiple-cover kernel ((-q)^d - 2 + (-q)^-d)^(g-1).
///
/// For g >= 1 this is a Laurent polynomial supported on [-d(g-1), d(g-1)],
/// which must fit inside the window. For g = 0 the inverse power is expanded
/// in ascending powers of q: sum_{j>=1} j (-q)^(dj), truncated at the top.
inline Series genus_factor(int g, int d, const Window& q_window) {
    if (g < 0 || d < 1) throw std::invalid_argument("genus_factor: need g >= 0, d >= 1");
    VarId q = var("q");
    if (!q_window.has(q)) throw std::invalid_argument("genus_factor: window lacks q");
    const VarRange& r = q_window.range(q);
    if (g == 0) {
        Series s(q_window);
        for (int j = 1; d * j <= r.hi; ++j) {
            bool neg = (d * j) % 2 != 0;
            s.add_term(Monomial(q, d * j), Rational(neg ? -j : j));
        }
        return s;
    }
    int span = d * (g - 1);
    if (span > 0 && (r.lo > -span || r.hi < span))
        throw std::invalid_argument("genus_factor: window " + q_window.str() +
                                    " cannot hold Laurent support [-" + std::to_string(span) + "," +
                                    std::to_string(span) + "]");
    Series base(q_window);
    int sign = d % 2 == 0 ? 1 : -1;  // (-q)^d = (-1)^d q^d
    base.add_term(Monomial(q, d), Rational(sign));
    base.add_term(Monomial::unit(), Rational(-2));
    base.add_term(Monomial(q, -d), Rational(sign));
    return pow_series(base, static_cast<unsigned>(g - 1));
}

namespace detail {

/// Largest possible polar q-degree of any product of ray series whose total
/// v-degree is D. A single v-degree-D term of the generating series has polar
/// part at most max{d*(h(m)-1) : d*m = D}; products are bounded by the best
/// splitting, computed by superadditive closure.
inline std::vector<int> polar_bounds(const RayContext& ctx) {
    std::vector<int> base(static_cast<std::size_t>(ctx.d_max) + 1, 0);
    for (int m = 1; m <= ctx.d_max; ++m) {
        int h = ctx.h_of(m);
        if (h < 1) continue;
        for (int d = 1; d * m <= ctx.d_max; ++d) {
            int D = d * m;
            base[static_cast<std::size_t>(D)] = std::max(base[static_cast<std::size_t>(D)], d * (h - 1));
        }
    }
    std::vector<int> b(base.size(), 0);
    for (int D = 1; D <= ctx.d_max; ++D) {
        b[static_cast<std::size_t>(D)] = base[static_cast<std::size_t>(D)];
        for (int j = 1; j < D; ++j)
            b[static_cast<std::size_t>(D)] =
                std::max(b[static_cast<std::size_t>(D)],
                         b[static_cast<std::size_t>(j)] + b[static_cast<std::size_t>(D - j)]);
    }
    return b;
}

}  // namespace detail

/// All the generating series of one ray, computed on a widened internal
/// window so that every coefficient inside the requested window is exact.
///
/// The widening is forced by the Laurent polar parts: a product coefficient
/// near the top of a window draws on factor coefficients up to the polar
/// depth beyond it, so the builder works at top + 2*d_max*B and bottom -B
/// (B = worst polar degree) and the exp/log chain then loses at most
/// 2*(d_max-1)*B of the top, which leaves the requested range exact.
struct RayBundle {
    RayContext ctx;
    Window requested;  // q as requested, v in [0, d_max]
    Window internal;   // widened
    int polar_bound = 0;

    Series f_internal;          // reduced GW series F on the internal window
    Series z_chi_internal;      // exp(-F) - 1
    Series z_twistor_internal;  // exp(+F) - 1

    Series f;            // restrictions to the requested window
    Series z_chi;        // integrality-checked
    Series z_naive;      // z_chi under q -> -q
    Series z_twistor;    // integrality-checked
    Series bps_display;  // the BPS-form display, i.e. -F

    RayBundle()
        : f_internal(Window{}), z_chi_internal(Window{}), z_twistor_internal(Window{}),
          f(Window{}), z_chi(Window{}), z_naive(Window{}), z_twistor(Window{}),
          bps_display(Window{}) {}
};

namespace detail {

inline void check_integral(const Series& s, const char* name) {
    for (const auto& [m, c] : s.terms())
        if (!c.is_integer())
            throw std::runtime_error(std::string(name) + " integrality violated at " + m.str() +
                                     ": " + c.str());
}

}  // namespace detail

inline RayBundle build_ray_bundle(const RayContext& ctx, const GvTable& gv) {
    ctx.validate();
    if (gv.h_max() < ctx.required_h_max())
        throw std::invalid_argument("build_ray_bundle: GV table h_max " + std::to_string(gv.h_max()) +
                                    " below required " + std::to_string(ctx.required_h_max()));
    VarId q = var("q"), v = var("v");
    const VarRange& qr = ctx.q_window.range(q);

    auto bounds = detail::polar_bounds(ctx);
    int B = 0;
    for (int x : bounds) B = std::max(B, x);

    RayBundle out;
    out.ctx = ctx;
    out.polar_bound = B;
    out.requested = Window{};
    out.requested.set(q, qr.lo, qr.hi, true);
    out.requested.set(v, 0, ctx.d_max);
    out.internal = Window{};
    out.internal.set(q, std::min(qr.lo, -B), qr.hi + 2 * ctx.d_max * B, true);
    out.internal.set(v, 0, ctx.d_max);

    // F = sum_{m,d,g} n_{g,h(m)} (1/d) (-1)^(g-1) kernel(g,d) v^(dm),
    // aggregating all divisor splittings D = d*m at each v-degree D.
    Series f(out.internal);
    for (int m = 1; m <= ctx.d_max; ++m) {
        int h = ctx.h_of(m);
        if (h < 0) continue;
        for (int d = 1; d * m <= ctx.d_max; ++d) {
            Monomial vpow(v, d * m);
            for (int g = 0; g <= h; ++g) {
                const Integer& n_gh = gv.entry(g, h);
                if (n_gh == 0) continue;
                Rational weight = Rational(n_gh) * Rational(g % 2 == 1 ? 1 : -1, d);
                Series kernel = genus_factor(g, d, out.internal);
                for (const auto& [mono, c] : kernel.terms()) f.add_term(mono * vpow, c * weight);
            }
        }
    }
    out.f_internal = f;
    out.z_chi_internal = exp_series(-f, v) - Series::one(out.internal);
    out.z_twistor_internal = exp_series(f, v) - Series::one(out.internal);

    out.f = f.restricted(out.requested);
    out.bps_display = (-f).restricted(out.requested);
    out.z_chi = out.z_chi_internal.restricted(out.requested);
    out.z_twistor = out.z_twistor_internal.restricted(out.requested);
    detail::check_integral(out.z_chi, "z_chi");
    detail::check_integral(out.z_twistor, "z_twistor");
    out.z_naive = substitute_monomial(out.z_chi, q, -1, Monomial(q, 1), out.requested);
    return out;
}

/// Reduced Gromov-Witten series of the ray in the q-variable BPS form.
inline Series f_gw_red(const RayContext& ctx, const GvTable& gv) {
    return build_ray_bundle(ctx, gv).f;
}

/// Weighted Euler characteristic stable-pair series: exp(-F) - 1.
/// Every coefficient is an integer; violations throw.
inline Series z_chi(const RayContext& ctx, const GvTable& gv) {
    return build_ray_bundle(ctx, gv).z_chi;
}

/// Naive (unweighted) Euler characteristic series: z_chi with q -> -q.
inline Series z_naive(const RayContext& ctx, const GvTable& gv) {
    return build_ray_bundle(ctx, gv).z_naive;
}

/// Stable-pair series of the compact twistor family: exp(+F) - 1.
inline Series z_twistor(const RayContext& ctx, const GvTable& gv) {
    return build_ray_bundle(ctx, gv).z_twistor;
}

/// The BPS-rationality display (with the 1/r weight read as 1/d): -F.
/// Provided as a diagnostic; it matches z_chi at v-degree 1 and differs
/// beyond, quantifying the gap between the display and exp(-F) - 1.
inline Series bps_display_series(const RayContext& ctx, const GvTable& gv) {
    return build_ray_bundle(ctx, gv).bps_display;
}

/// The stratified sum over multi-sets of charges:
///
///   sum_{k>=1} sum_{k_1+..+k_l = k} (-1)^k (1/k) multinomial(k; k_1..k_l)
///     prod_i (P_i Q^i)^(k_i)
///
/// enumerated by brute force (no logarithm). Each charge is a distinct
/// monomial Q^alpha of v-degree >= 1 with value P_alpha; the result equals
/// -log1p(sum P_alpha Q^alpha) within the window.
inline Series strata_sum(const std::vector<std::pair<Monomial, Rational>>& charges, const Window& w) {
    VarId v = var("v");
    std::vector<int> vdeg(charges.size());
    for (std::size_t i = 0; i < charges.size(); ++i) {
        vdeg[i] = charges[i].first.exponent(v);
        if (vdeg[i] < 1)
            throw std::invalid_argument("strata_sum: charge " + charges[i].first.str() +
                                        " has v-degree < 1");
        for (std::size_t j = 0; j < i; ++j)
            if (charges[j].first == charges[i].first)
                throw std::invalid_argument("strata_sum: duplicate charge " + charges[i].first.str());
    }
    int budget = w.has(v) ? w.range(v).hi : 0;

    Series out(w);
    std::vector<int> mult(charges.size(), 0);
    // Depth-first over multiplicity vectors; v-degree caps the total k.
    auto rec = [&](auto&& self, std::size_t idx, int used) -> void {
        if (idx == charges.size()) {
            int k = 0;
            for (int ki : mult) k += ki;
            if (k < 1) return;
            Integer multinom = factorial(static_cast<unsigned>(k));
            Rational value(1);
            Monomial mono;
            for (std::size_t i = 0; i < charges.size(); ++i) {
                if (mult[i] == 0) continue;
                multinom /= factorial(static_cast<unsigned>(mult[i]));
                value *= charges[i].second.pow(static_cast<unsigned>(mult[i]));
                mono = mono * charges[i].first.pow(mult[i]);
            }
            Rational coeff = Rational(multinom) * value * Rational(k % 2 == 0 ? 1 : -1, k);
            out.add_term(mono, coeff);
            return;
        }
        for (int ki = 0; used + ki * vdeg[idx] <= budget; ++ki) {
            mult[idx] = ki;
            self(self, idx + 1, used + ki * vdeg[idx]);
        }
        mult[idx] = 0;
    };
    rec(rec, 0, 0);
    return out;
}

}  // namespace k3series::ray
