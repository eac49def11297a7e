#pragma once

#include "k3series/kkv.hpp"
#include "k3series/ray.hpp"
#include "k3series/series.hpp"
#include "k3series/sheaf.hpp"
#include "k3series/vafa_witten.hpp"

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace k3series::io {

using nlohmann::json;

/// Rationals serialize as decimal strings so that any consumer can read
/// them losslessly.
inline json rational_json(const Rational& r) {
    return json{{"num", r.num().str()}, {"den", r.den().str()}};
}

inline Rational rational_from_json(const json& j) {
    return Rational(Integer(j.at("num").get<std::string>()), Integer(j.at("den").get<std::string>()));
}

// ---------------------------------------------------------------------------
// GV table exports: rows g, columns h, entries as decimal integer strings.

inline json gv_table_json(const kkv::GvTable& t) {
    json rows = json::array();
    for (int g = 0; g <= t.h_max(); ++g) {
        json row = json::array();
        for (int h = 0; h <= t.h_max(); ++h) row.push_back(t.entry(g, h).str());
        rows.push_back(std::move(row));
    }
    return json{{"h_max", t.h_max()}, {"n", rows}};
}

inline std::string gv_table_csv(const kkv::GvTable& t) {
    std::ostringstream os;
    os << "g/h";
    for (int h = 0; h <= t.h_max(); ++h) os << "," << h;
    os << "\n";
    for (int g = 0; g <= t.h_max(); ++g) {
        os << g;
        for (int h = 0; h <= t.h_max(); ++h) os << "," << t.entry(g, h).str();
        os << "\n";
    }
    return os.str();
}

inline std::string gv_table_pretty(const kkv::GvTable& t) {
    std::size_t width = 4;
    for (int g = 0; g <= t.h_max(); ++g)
        for (int h = 0; h <= t.h_max(); ++h) width = std::max(width, t.entry(g, h).str().size() + 1);
    std::ostringstream os;
    os << std::setw(6) << "g\\h";
    for (int h = 0; h <= t.h_max(); ++h) os << std::setw(static_cast<int>(width)) << h;
    os << "\n";
    for (int g = 0; g <= t.h_max(); ++g) {
        os << std::setw(6) << g;
        for (int h = 0; h <= t.h_max(); ++h)
            os << std::setw(static_cast<int>(width)) << t.entry(g, h).str();
        os << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Ray series exports: records {d, n, coefficient} with d the v-degree and n
// the q-exponent, sorted by (d, n).

inline std::vector<std::tuple<int, int, Rational>> ray_records(const Series& s) {
    VarId q = var("q"), v = var("v");
    std::vector<std::tuple<int, int, Rational>> recs;
    recs.reserve(s.term_count());
    for (const auto& [m, c] : s.terms()) recs.emplace_back(m.exponent(v), m.exponent(q), c);
    std::sort(recs.begin(), recs.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    return recs;
}

inline json ray_series_json(const Series& s) {
    json arr = json::array();
    for (const auto& [d, n, c] : ray_records(s))
        arr.push_back(json{{"d", d}, {"n", n}, {"coefficient", rational_json(c)}});
    return arr;
}

inline std::string ray_series_csv(const Series& s) {
    std::ostringstream os;
    os << "d,n,coefficient\n";
    for (const auto& [d, n, c] : ray_records(s)) os << d << "," << n << "," << c.str() << "\n";
    return os.str();
}

/// Pretty table: rows n (q-exponent), columns d (v-degree).
inline std::string ray_series_pretty(const Series& s) {
    VarId v = var("v"), q = var("q");
    int d_lo = 0, d_hi = 0, n_lo = 0, n_hi = 0;
    if (s.window().has(v)) {
        d_lo = s.window().range(v).lo;
        d_hi = s.window().range(v).hi;
    }
    bool any = false;
    for (const auto& [m, c] : s.terms()) {
        (void)c;
        int n = m.exponent(q);
        if (!any) {
            n_lo = n_hi = n;
            any = true;
        }
        n_lo = std::min(n_lo, n);
        n_hi = std::max(n_hi, n);
    }
    std::size_t width = 6;
    for (const auto& [m, c] : s.terms()) {
        (void)m;
        width = std::max(width, c.str().size() + 1);
    }
    std::ostringstream os;
    os << std::setw(6) << "n\\d";
    for (int d = d_lo; d <= d_hi; ++d) os << std::setw(static_cast<int>(width)) << d;
    os << "\n";
    for (int n = n_lo; n <= n_hi; ++n) {
        os << std::setw(6) << n;
        for (int d = d_lo; d <= d_hi; ++d) {
            Rational c = s.coeff(Monomial(q, n) * Monomial(v, d));
            os << std::setw(static_cast<int>(width)) << c.str();
        }
        os << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Mukai vector / Joyce-Song records.

inline json mukai_record_json(const sheaf::MukaiVector& v) {
    Rational J = sheaf::js_invariant(v);
    return json{{"r", v.r},
                {"m", v.m},
                {"h0", v.h0},
                {"s", v.s},
                {"pairing", sheaf::mukai_pairing(v, v)},
                {"divisibility", sheaf::divisibility(v)},
                {"J_numerator", J.num().str()},
                {"J_denominator", J.den().str()}};
}

// ---------------------------------------------------------------------------
// Vafa-Witten theorem report.

inline json vw_report_json(const vw::VwRay& ray, const vw::TheoremReport& rep) {
    json rows = json::array();
    for (const auto& row : rep.rows)
        rows.push_back(json{{"M", row.M},
                            {"vw", rational_json(row.vw)},
                            {"P", rational_json(row.P)},
                            {"P_tilde", rational_json(row.P_tilde)},
                            {"P_perp", rational_json(row.P_perp)},
                            {"VW", rational_json(row.VW)},
                            {"pass", row.pass}});
    return json{{"M_max", ray.M_max},
                {"chi0", ray.chi0},
                {"exp_identity_ok", rep.exp_identity_ok},
                {"pass", rep.pass},
                {"rows", rows}};
}

inline std::string vw_report_pretty(const vw::VwRay& ray, const vw::TheoremReport& rep) {
    std::ostringstream os;
    os << "chi0 = " << ray.chi0 << ", M_max = " << ray.M_max << "\n";
    os << std::setw(4) << "M" << std::setw(16) << "vw" << std::setw(20) << "P" << std::setw(20)
       << "P_perp" << std::setw(16) << "VW" << std::setw(8) << "pass" << "\n";
    for (const auto& row : rep.rows)
        os << std::setw(4) << row.M << std::setw(16) << row.vw.str() << std::setw(20) << row.P.str()
           << std::setw(20) << row.P_perp.str() << std::setw(16) << row.VW.str() << std::setw(8)
           << (row.pass ? "yes" : "NO") << "\n";
    os << "exp identity: " << (rep.exp_identity_ok ? "ok" : "FAILED") << "\n";
    os << "overall: " << (rep.pass ? "pass" : "FAIL") << "\n";
    return os.str();
}

}  // namespace k3series::io
