#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nlsgraph/nlsgraph.hpp"

namespace nlsgraph::cli {

enum exit_code : int { ok = 0, usage = 1, numerical = 2 };

using Cell = std::variant<double, int, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Shortest representation that parses back to the same double.
inline std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline std::string format_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    if (const auto* i = std::get_if<int>(&c)) return std::to_string(*i);
    if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    return std::get<std::string>(c);
}

inline void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t j = 0; j < t.columns.size(); ++j) os << (j ? "," : "") << t.columns[j];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << format_cell(row[j]);
        os << '\n';
    }
}

// Numbers go through the same 12-digit formatting as CSV.
inline void write_json(std::ostream& os, const Table& t) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json rec = nlohmann::ordered_json::object();
        for (std::size_t j = 0; j < row.size(); ++j) {
            const auto& c = row[j];
            if (const auto* d = std::get_if<double>(&c)) {
                rec[t.columns[j]] = std::isnan(*d) ? nlohmann::ordered_json(nullptr)
                                                   : nlohmann::ordered_json::parse(format_number(*d));
            } else if (const auto* i = std::get_if<int>(&c)) {
                rec[t.columns[j]] = *i;
            } else if (const auto* b = std::get_if<bool>(&c)) {
                rec[t.columns[j]] = *b;
            } else {
                rec[t.columns[j]] = std::get<std::string>(c);
            }
        }
        out.push_back(std::move(rec));
    }
    os << out.dump(2) << '\n';
}

struct RunConfig {
    int n = 0;
    int k = 0;
    std::optional<double> omega;
    std::optional<double> eps;
    std::optional<double> p0;
    int points = 200;
    int count = 3;
    int samples = 201;
    double rel_tol = QuadratureSpec{}.rel_tol;
    std::string out;
    std::string format = "csv";
};

class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline double scaling_from(const RunConfig& cfg) {
    if (cfg.omega && cfg.eps) throw usage_error("give only one of --omega and --eps");
    if (cfg.omega) {
        if (!(*cfg.omega < 0.0)) throw usage_error("--omega must be negative");
        return std::sqrt(-*cfg.omega);
    }
    if (cfg.eps) {
        if (!(*cfg.eps > 0.0)) throw usage_error("--eps must be positive");
        return *cfg.eps;
    }
    throw usage_error("one of --omega or --eps is required");
}

inline Table symmetric_table(const RunConfig& cfg, const QuadratureSpec& spec) {
    const auto s = solve_symmetric(scaling_from(cfg), cfg.n, spec);
    return {{"N", "omega", "eps", "p0", "a", "q0", "mass", "energy"},
            {{s.n_loops, s.omega, s.eps, s.p0, s.a, s.q0, s.mass, s.energy}}};
}

inline std::vector<Cell> ksplit_row(const KSplitState& s) {
    return {s.n_loops, s.k_big, std::string(s.regime == Regime::opposite ? "opposite" : "same"), s.p0, s.q_big,
            s.q_small, s.omega, s.eps, s.mass, s.energy, s.outside_proven_region};
}

inline std::vector<KSplitState> ksplit_states_for(const RunConfig& cfg, const QuadratureSpec& spec) {
    if (cfg.k < 1 || cfg.k > cfg.n) throw usage_error("--k must lie in 1..N");
    if (cfg.p0) {
        if (cfg.omega || cfg.eps) throw usage_error("give either --p0 or one of --omega/--eps");
        const double p0 = *cfg.p0;
        if (!(p0 > 0.0 && p0 < 1.0)) throw usage_error("--p0 must lie in (0, 1)");
        if (cfg.k == cfg.n) return {ksplit_from_symmetric(symmetric_from_p0(p0, cfg.n, spec))};
        if (p0 < p_star) return {solve_ksplit_opposite(p0, cfg.n, cfg.k, spec)};
        return solve_ksplit_same(p0, cfg.n, cfg.k, spec);
    }
    const double eps = scaling_from(cfg);
    if (cfg.k == cfg.n) return {ksplit_from_symmetric(solve_symmetric(eps, cfg.n, spec))};
    return {solve_ksplit_opposite_eps(eps, cfg.n, cfg.k, spec)};
}

inline Table ksplit_table(const RunConfig& cfg, const QuadratureSpec& spec) {
    Table t{{"N", "K", "regime", "p0", "q_big", "q_small", "omega", "eps", "mass", "energy", "outside_proven"}, {}};
    for (const auto& s : ksplit_states_for(cfg, spec)) t.rows.push_back(ksplit_row(s));
    return t;
}

inline Table bifurcation_table(const RunConfig& cfg, const QuadratureSpec& spec) {
    Table t{{"N", "p_bif", "p_star_star", "eps_star", "omega_star", "mu_star"}, {}};
    const auto r = find_bifurcation(cfg.n, spec);
    if (r) t.rows.push_back({r->n_loops, r->p_bif, r->p_star_star, r->eps_star, r->omega_star, r->mu_star});
    return t;
}

inline Table diagram_table(const RunConfig& cfg, const QuadratureSpec& spec) {
    if (cfg.points < 2) throw usage_error("--points must be >= 2");
    std::vector<int> ks;
    if (cfg.k > 0) {
        if (cfg.k >= cfg.n) throw usage_error("--k must lie in 1..N-1 for diagram");
        ks.push_back(cfg.k);
    } else {
        for (int k = 1; k < cfg.n; ++k) ks.push_back(k);
    }
    Table t{{"branch", "K", "N", "omega", "eps", "p0", "mass", "energy"}, {}};
    for (const auto& r : trace_diagram(cfg.n, ks, cfg.points, spec)) {
        t.rows.push_back({r.branch, r.k, r.n, r.omega, r.eps, r.p0, r.mass, r.energy});
    }
    return t;
}

inline Table spectrum_table(const RunConfig& cfg, const QuadratureSpec& spec, std::ostream& err) {
    const auto s = solve_symmetric(scaling_from(cfg), cfg.n, spec);
    const auto r = spectral_report(s);
    Table t{{"kind", "index", "lambda", "multiplicity"}, {}};
    for (const auto& e : r.lambda_ordered) t.rows.push_back({e.kind, e.index, e.lambda, e.multiplicity});
    err << "morse_n=" << r.morse_n << " nullity_z=" << r.nullity_z << '\n';
    return t;
}

inline Table laplacian_table(const RunConfig& cfg, std::ostream& err) {
    if (cfg.count < 1) throw usage_error("--count must be >= 1");
    const auto l = laplacian_spectrum(cfg.n, cfg.count);
    Table t{{"lambda", "multiplicity"}, {}};
    for (const auto& [lambda, mult] : l.eigenvalues) t.rows.push_back({lambda, mult});
    if (!l.no_negative_eigenvalue) err << "negative eigenvalue check failed\n";
    return t;
}

inline Table profile_table(const RunConfig& cfg, const QuadratureSpec& spec) {
    if (cfg.samples < 2) throw usage_error("--samples must be >= 2");
    WaveProfile w;
    if (cfg.k == 0 || cfg.k == cfg.n) {
        w = reconstruct_profile(solve_symmetric(scaling_from(cfg), cfg.n, spec), cfg.samples);
    } else {
        if (cfg.k < 1 || cfg.k > cfg.n) throw usage_error("--k must lie in 1..N");
        w = reconstruct_profile(solve_ksplit_opposite_eps(scaling_from(cfg), cfg.n, cfg.k, spec), cfg.samples);
    }
    Table t{{"edge_id", "z", "u"}, {}};
    for (std::size_t i = 0; i < w.tail.z.size(); ++i) t.rows.push_back({0, w.tail.z[i], w.tail.u[i]});
    for (std::size_t j = 0; j < w.loops.size(); ++j) {
        const auto& e = w.loops[j];
        for (std::size_t i = 0; i < e.z.size(); ++i) t.rows.push_back({static_cast<int>(j) + 1, e.z[i], e.u[i]});
    }
    return t;
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Standing waves of the cubic NLS equation on flower graphs"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "number of loops N")->required()->check(CLI::PositiveNumber);
        sub->add_option("--out", cfg.out, "output file (default stdout)");
        sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--rel-tol", cfg.rel_tol, "quadrature relative tolerance")->check(CLI::PositiveNumber);
    };
    auto add_scaling = [&](CLI::App* sub) {
        sub->add_option("--omega", cfg.omega, "frequency omega = -eps^2 < 0");
        sub->add_option("--eps", cfg.eps, "scaling eps > 0");
    };

    auto* sym = app.add_subcommand("symmetric", "symmetric state at given omega");
    add_common(sym);
    add_scaling(sym);
    auto* ks = app.add_subcommand("ksplit", "K-split states at given omega or vertex amplitude");
    add_common(ks);
    add_scaling(ks);
    ks->add_option("--k", cfg.k, "number of large components K")->required();
    ks->add_option("--p0", cfg.p0, "vertex amplitude p0");
    auto* bif = app.add_subcommand("bifurcation", "symmetry-breaking bifurcation point");
    add_common(bif);
    auto* dia = app.add_subcommand("diagram", "bifurcation diagram rows");
    add_common(dia);
    dia->add_option("--points", cfg.points, "points per branch");
    dia->add_option("--k", cfg.k, "single K branch (default all)");
    auto* spc = app.add_subcommand("spectrum", "linearized spectrum of the symmetric state");
    add_common(spc);
    add_scaling(spc);
    auto* lap = app.add_subcommand("laplacian", "embedded Laplacian eigenvalues");
    add_common(lap);
    lap->add_option("--count", cfg.count, "largest n");
    auto* pro = app.add_subcommand("profile", "sampled profile of a state");
    add_common(pro);
    add_scaling(pro);
    pro->add_option("--k", cfg.k, "K for a K-split state (default symmetric)");
    pro->add_option("--samples", cfg.samples, "samples per edge");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        err << "error: " << msg.substr(0, msg.find('\n')) << '\n';
        return usage;
    }

    try {
        QuadratureSpec spec;
        spec.rel_tol = cfg.rel_tol;
        Table t;
        if (*sym) t = symmetric_table(cfg, spec);
        else if (*ks) t = ksplit_table(cfg, spec);
        else if (*bif) {
            t = bifurcation_table(cfg, spec);
            if (t.rows.empty()) err << "no bifurcation for N = 1\n";
        } else if (*dia) t = diagram_table(cfg, spec);
        else if (*spc) t = spectrum_table(cfg, spec, err);
        else if (*lap) t = laplacian_table(cfg, err);
        else t = profile_table(cfg, spec);

        std::ofstream file;
        std::ostream* os = &out;
        if (!cfg.out.empty()) {
            file.open(cfg.out);
            if (!file) throw usage_error("cannot open " + cfg.out);
            os = &file;
        }
        if (cfg.format == "json") write_json(*os, t);
        else write_csv(*os, t);
        return ok;
    } catch (const usage_error& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return numerical;
    }
}

}  // namespace nlsgraph::cli
