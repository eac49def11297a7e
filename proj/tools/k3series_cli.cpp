// k3series command line tool: exact tables and verification suites for the
// K3 x C sheaf-counting series. Data goes to stdout (or --output), warnings
// and errors to stderr. Exit codes: 0 success, 1 internal invariant
// violation, 2 usage error.

#include "k3series/acceptance.hpp"
#include "k3series/io.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace k3series;

struct CommonOpts {
    std::string format = "table";  // json | csv | table
    std::string output_path;
};

void emit(const CommonOpts& opts, const std::string& data) {
    if (opts.output_path.empty()) {
        std::cout << data;
        return;
    }
    std::ofstream out(opts.output_path);
    if (!out) throw std::runtime_error("cannot open output file " + opts.output_path);
    out << data;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

sheaf::MukaiVector parse_vector(const std::string& text) {
    std::istringstream is(text);
    sheaf::MukaiVector v;
    char c1, c2, c3;
    if (!(is >> v.r >> c1 >> v.m >> c2 >> v.h0 >> c3 >> v.s) || c1 != ',' || c2 != ',' || c3 != ',')
        throw CLI::ValidationError("--vector", "expected r,m,h0,s");
    return v;
}

std::vector<Rational> parse_rationals(const std::string& text) {
    std::vector<Rational> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) out.push_back(Rational::from_string(item));
    return out;
}

int run_kkv(const CommonOpts& opts, int h_max) {
    auto gv = kkv::compute_gv_table(h_max);
    if (opts.format == "json")
        emit(opts, dump_json(io::gv_table_json(*gv)));
    else if (opts.format == "csv")
        emit(opts, io::gv_table_csv(*gv));
    else
        emit(opts, io::gv_table_pretty(*gv));
    return 0;
}

int run_pairs(const CommonOpts& opts, int h0, int d_max, int q_min, int q_max) {
    ray::RayContext ctx;
    ctx.h0 = h0;
    ctx.d_max = d_max;
    ctx.q_window.set(var("q"), q_min, q_max, true);
    auto gv = kkv::compute_gv_table(ctx.required_h_max());
    ray::RayBundle b = ray::build_ray_bundle(ctx, *gv);
    Series diff = b.bps_display - b.z_chi;

    const std::vector<std::pair<std::string, const Series*>> series = {
        {"f_gw_red", &b.f},           {"z_chi", &b.z_chi},
        {"z_naive", &b.z_naive},      {"z_twistor", &b.z_twistor},
        {"bps_display", &b.bps_display}, {"bps_display_minus_z_chi", &diff}};

    if (opts.format == "json") {
        nlohmann::json j{{"h0", h0}, {"d_max", d_max}, {"q_min", q_min}, {"q_max", q_max}};
        for (const auto& [name, s] : series) j["series"][name] = io::ray_series_json(*s);
        emit(opts, dump_json(j));
    } else if (opts.format == "csv") {
        std::ostringstream os;
        os << "series,d,n,coefficient\n";
        for (const auto& [name, s] : series)
            for (const auto& [d, n, c] : io::ray_records(*s))
                os << name << "," << d << "," << n << "," << c.str() << "\n";
        emit(opts, os.str());
    } else {
        std::ostringstream os;
        for (const auto& [name, s] : series)
            os << "== " << name << " (h0=" << h0 << ", d_max=" << d_max << ") ==\n"
               << io::ray_series_pretty(*s) << "\n";
        emit(opts, os.str());
    }
    return 0;
}

int run_hilb(const CommonOpts& opts, int n_max) {
    if (opts.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (int n = 0; n <= n_max; ++n)
            arr.push_back({{"n", n}, {"euler", sheaf::hilb_euler(n).str()}});
        emit(opts, dump_json(arr));
    } else if (opts.format == "csv") {
        std::ostringstream os;
        os << "n,euler\n";
        for (int n = 0; n <= n_max; ++n) os << n << "," << sheaf::hilb_euler(n).str() << "\n";
        emit(opts, os.str());
    } else {
        std::ostringstream os;
        for (int n = 0; n <= n_max; ++n) os << sheaf::hilb_euler(n).str() << "\n";
        emit(opts, os.str());
    }
    return 0;
}

int run_js(const CommonOpts& opts, const std::vector<std::string>& vector_specs) {
    std::vector<sheaf::MukaiVector> vectors;
    for (const auto& spec : vector_specs) vectors.push_back(parse_vector(spec));
    std::vector<std::string> warnings;
    if (opts.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& v : vectors) {
            sheaf::js_invariant(v, &warnings);
            arr.push_back(io::mukai_record_json(v));
        }
        emit(opts, dump_json(arr));
    } else {
        std::ostringstream os;
        os << "r,m,h0,s,pairing,divisibility,J\n";
        for (const auto& v : vectors) {
            Rational J = sheaf::js_invariant(v, &warnings);
            os << v.r << "," << v.m << "," << v.h0 << "," << v.s << ","
               << sheaf::mukai_pairing(v, v) << "," << sheaf::divisibility(v) << "," << J.str()
               << "\n";
        }
        emit(opts, os.str());
    }
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    return 0;
}

int run_vw(const CommonOpts& opts, int m_max, long long chi0, const std::string& vw_list,
           std::uint64_t seed) {
    vw::VwRay ray;
    ray.M_max = m_max;
    ray.chi0 = chi0;
    if (!vw_list.empty()) {
        ray.vw = parse_rationals(vw_list);
        if (static_cast<int>(ray.vw.size()) != m_max)
            throw CLI::ValidationError("--vw", "need exactly m-max values");
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
        ray.vw.resize(static_cast<std::size_t>(m_max));
        for (auto& x : ray.vw) x = Rational(num(rng), den(rng));
    }
    auto rep = vw::theorem_check(ray);
    if (opts.format == "json")
        emit(opts, dump_json(io::vw_report_json(ray, rep)));
    else
        emit(opts, io::vw_report_pretty(ray, rep));
    return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact generating-series calculator for K3 x C sheaf counting"};
    app.require_subcommand(1);
    app.fallthrough(true);
    app.set_config("--config", "", "config file with key=value lines mirroring the long flags");

    CommonOpts opts;
    const char* env_format = std::getenv("K3SERIES_FORMAT");
    if (env_format) opts.format = env_format;
    app.add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();
    app.add_option("--output", opts.output_path, "write data to this file instead of stdout");

    int h_max = 3, h0 = 1, d_max = 1, q_min = -10, q_max = 10, n_max = 10, m_max = 6;
    long long chi0 = 1;
    std::uint64_t seed = 0;
    std::string vw_list;
    std::vector<std::string> vector_specs;

    auto* kkv_cmd = app.add_subcommand("kkv", "Gopakumar-Vafa table n_g,h from the KKV product");
    kkv_cmd->add_option("--h-max", h_max, "largest h")->check(CLI::NonNegativeNumber);

    auto* pairs_cmd =
        app.add_subcommand("pairs", "ray series: f_gw_red, z_chi, z_naive, z_twistor, BPS display");
    pairs_cmd->add_option("--h0", h0, "h0 of the primitive class (beta0^2 = 2 h0 - 2)")
        ->check(CLI::NonNegativeNumber);
    pairs_cmd->add_option("--d-max", d_max, "largest multiple of the class")->check(CLI::PositiveNumber);
    pairs_cmd->add_option("--q-min", q_min, "bottom of the q window");
    pairs_cmd->add_option("--q-max", q_max, "top of the q window");

    auto* hilb_cmd = app.add_subcommand("hilb", "Euler characteristics of Hilbert schemes of points");
    hilb_cmd->add_option("--n-max", n_max, "largest number of points")->check(CLI::NonNegativeNumber);

    auto* js_cmd = app.add_subcommand("js", "Joyce-Song invariants of Mukai vectors");
    js_cmd->add_option("--vector", vector_specs, "Mukai vector r,m,h0,s (repeatable)")->required();

    auto* vw_cmd = app.add_subcommand("vw", "Vafa-Witten pair-invariant theorem check on a ray");
    vw_cmd->add_option("--m-max", m_max, "largest charge multiplicity")->check(CLI::PositiveNumber);
    vw_cmd->add_option("--chi0", chi0, "chi of the twisted primitive charge (nonzero)");
    vw_cmd->add_option("--vw", vw_list, "comma-separated rational vw values (default: random)");
    vw_cmd->add_option("--seed", seed, "seed for the random vw draw");

    auto* verify_cmd = app.add_subcommand("verify", "run the full acceptance suite");
    verify_cmd->add_option("--seed", seed, "seed for randomized checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        std::cerr << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (kkv_cmd->parsed()) return run_kkv(opts, h_max);
        if (pairs_cmd->parsed()) {
            if (q_min > q_max) throw CLI::ValidationError("--q-min", "q-min must not exceed q-max");
            return run_pairs(opts, h0, d_max, q_min, q_max);
        }
        if (hilb_cmd->parsed()) return run_hilb(opts, n_max);
        if (js_cmd->parsed()) return run_js(opts, vector_specs);
        if (vw_cmd->parsed()) {
            if (chi0 == 0) throw CLI::ValidationError("--chi0", "chi0 must be nonzero");
            return run_vw(opts, m_max, chi0, vw_list, seed);
        }
        if (verify_cmd->parsed()) {
            bool ok = acceptance::run_all(seed, std::cout);
            return ok ? 0 : 1;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
