#pragma once

#include "k3series/series.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace k3series::vw {

/// Ray of semistable charges: multiples m*alpha_0 of a primitive charge for
/// 1 <= m <= M_max, with chi0 = chi(alpha_0(n)) at the fixed pair twist
/// (chi is additive in the charge, so chi(m alpha_0(n)) = m * chi0) and the
/// input invariants vw_m.
struct VwRay {
    int M_max = 1;
    long long chi0 = 1;
    std::vector<Rational> vw;  // vw[m-1] for m = 1..M_max

    void validate() const {
        if (M_max < 1) throw std::invalid_argument("VwRay: M_max must be >= 1");
        if (chi0 == 0) throw std::invalid_argument("VwRay: chi0 must be nonzero");
        if (static_cast<int>(vw.size()) != M_max)
            throw std::invalid_argument("VwRay: need exactly M_max vw values");
    }
};

/// Values indexed by the multiplicity m = 1..M_max (index m-1).
using Values = std::vector<Rational>;

inline int parity_sign(long long e) { return e % 2 == 0 ? 1 : -1; }

/// Calls f(parts) for every ordered composition of M into positive parts.
template <class F>
void for_each_composition(int M, F&& f) {
    std::vector<int> parts;
    auto rec = [&](auto&& self, int rest) -> void {
        if (rest == 0) {
            f(const_cast<const std::vector<int>&>(parts));
            return;
        }
        for (int p = 1; p <= rest; ++p) {
            parts.push_back(p);
            self(self, rest - p);
            parts.pop_back();
        }
    };
    rec(rec, M);
}

/// Composition strata of the pair invariants: S[M-1][l-1] is the sum over
/// ordered compositions (m_1..m_l) of M of prod_i (-1)^(m_i chi0) (m_i chi0)
/// vw_{m_i}. Each stratum is degree-l homogeneous in the vw values.
inline std::vector<std::vector<Rational>> pair_strata(const VwRay& ray) {
    ray.validate();
    std::vector<std::vector<Rational>> strata(static_cast<std::size_t>(ray.M_max));
    for (int M = 1; M <= ray.M_max; ++M) {
        strata[static_cast<std::size_t>(M - 1)].assign(static_cast<std::size_t>(M), Rational(0));
        for_each_composition(M, [&](const std::vector<int>& parts) {
            Rational prod(1);
            for (int p : parts) {
                long long chi = p * ray.chi0;
                prod *= Rational(parity_sign(chi) * chi) * ray.vw[static_cast<std::size_t>(p - 1)];
            }
            strata[static_cast<std::size_t>(M - 1)][parts.size() - 1] += prod;
        });
    }
    return strata;
}

/// Pair invariants P_M from the vw values through the universal composition
/// sum: with y_m = (-1)^(m chi0) (m chi0) vw_m the generating identity is
///
///   1 - sum_M P_M x^M = exp( sum_m y_m x^m ),
///
/// i.e. P_M = - sum_{l>=1} (1/l!) sum_{m_1+..+m_l = M} prod_i y_{m_i}.
inline Values pairs_from_vw(const VwRay& ray) {
    auto strata = pair_strata(ray);
    Values P(static_cast<std::size_t>(ray.M_max), Rational(0));
    for (int M = 1; M <= ray.M_max; ++M)
        for (std::size_t l = 1; l <= static_cast<std::size_t>(M); ++l)
            P[static_cast<std::size_t>(M - 1)] -=
                strata[static_cast<std::size_t>(M - 1)][l - 1] / Rational(factorial(static_cast<unsigned>(l)));
    return P;
}

/// On a K3 the full-pair-space weighted Euler characteristics carry the
/// opposite sign: P~_M = -P_M.
inline Values tilde_from_pairs(const Values& P) {
    Values t(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) t[i] = -P[i];
    return t;
}

/// Perpendicular pair invariants as the coefficients of
/// -log(1 + sum_M P~_M x^M) in the single formal ray variable.
inline Values pperp_from_pairs(const Values& P) {
    int M_max = static_cast<int>(P.size());
    VarId x = var("Q");
    Window w;
    w.set(x, 0, M_max);
    Series z(w);
    Values tilde = tilde_from_pairs(P);
    for (int M = 1; M <= M_max; ++M) z.add_term(Monomial(x, M), tilde[static_cast<std::size_t>(M - 1)]);
    Series s = -log1p_series(z, x);
    Values pperp(static_cast<std::size_t>(M_max));
    for (int M = 1; M <= M_max; ++M) pperp[static_cast<std::size_t>(M - 1)] = s.coeff(Monomial(x, M));
    return pperp;
}

/// Verifies -P_M = sum_l ((-1)^l / l!) sum_{compositions} prod_i Pperp_{m_i}
/// by direct enumeration, independently of the logarithm route.
inline bool exp_identity_check(const Values& P, const Values& pperp) {
    if (P.size() != pperp.size()) throw std::invalid_argument("exp_identity_check: size mismatch");
    for (int M = 1; M <= static_cast<int>(P.size()); ++M) {
        Rational rhs(0);
        for_each_composition(M, [&](const std::vector<int>& parts) {
            Rational prod(1);
            for (int p : parts) prod *= pperp[static_cast<std::size_t>(p - 1)];
            rhs += prod * Rational(Integer(parts.size() % 2 == 0 ? 1 : -1),
                                   factorial(static_cast<unsigned>(parts.size())));
        });
        if (rhs != -P[static_cast<std::size_t>(M - 1)]) return false;
    }
    return true;
}

/// Extracts VW_M from Pperp_M = (-1)^(M chi0 - 1) (M chi0) VW_M.
inline Values vw_extract(const Values& pperp, long long chi0) {
    if (chi0 == 0) throw std::domain_error("vw_extract: degenerate twist (chi0 = 0)");
    Values out(pperp.size());
    for (int M = 1; M <= static_cast<int>(pperp.size()); ++M) {
        long long chi = M * chi0;
        out[static_cast<std::size_t>(M - 1)] =
            pperp[static_cast<std::size_t>(M - 1)] / Rational(parity_sign(chi - 1) * chi);
    }
    return out;
}

/// Full pipeline vw -> P -> Pperp -> VW with the exact verdict VW_m = vw_m
/// per multiplicity, plus the composition-sum cross-check of the log route.
struct TheoremReport {
    struct Row {
        int M = 0;
        Rational vw, P, P_tilde, P_perp, VW;
        bool pass = false;
    };
    std::vector<Row> rows;
    bool exp_identity_ok = false;
    bool pass = false;
};

inline TheoremReport theorem_check(const VwRay& ray) {
    ray.validate();
    TheoremReport rep;
    Values P = pairs_from_vw(ray);
    Values tilde = tilde_from_pairs(P);
    Values pperp = pperp_from_pairs(P);
    Values VW = vw_extract(pperp, ray.chi0);
    rep.exp_identity_ok = exp_identity_check(P, pperp);
    rep.pass = rep.exp_identity_ok;
    for (int M = 1; M <= ray.M_max; ++M) {
        TheoremReport::Row row;
        row.M = M;
        row.vw = ray.vw[static_cast<std::size_t>(M - 1)];
        row.P = P[static_cast<std::size_t>(M - 1)];
        row.P_tilde = tilde[static_cast<std::size_t>(M - 1)];
        row.P_perp = pperp[static_cast<std::size_t>(M - 1)];
        row.VW = VW[static_cast<std::size_t>(M - 1)];
        row.pass = row.VW == row.vw;
        rep.pass = rep.pass && row.pass;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace k3series::vw
